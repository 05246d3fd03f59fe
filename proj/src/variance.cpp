#include "liou/variance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "liou/parallel.hpp"
#include "liou/smooth.hpp"

namespace liou {

void StoreSigns::fill(std::uint64_t start, std::span<std::int8_t> out) const {
    const auto view = store_->signs(start, out.size());
    std::copy(view.begin(), view.end(), out.begin());
}

void CallableSigns::fill(std::uint64_t start, std::span<std::int8_t> out) const {
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<std::int8_t>(fn_(start + i));
}

std::string SamplePolicy::describe() const {
    switch (kind) {
        case PolicyKind::FullGrid:
            return "full-grid";
        case PolicyKind::Strided:
            return "strided(" + std::to_string(stride) + ")";
        case PolicyKind::Random:
            return "random(" + std::to_string(count) + "," +
                   (seed ? std::to_string(*seed) : std::string("unseeded")) + ")";
    }
    return "?";
}

namespace {

constexpr std::uint64_t kSampleBlock = std::uint64_t{1} << 16;

// Unbiased-enough fixed-width mapping; avoids std::uniform_int_distribution
// so the stream is pinned to the engine alone.
std::uint64_t draw_in(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
    const std::uint64_t range = hi - lo + 1;
    return lo + static_cast<std::uint64_t>(
                    (static_cast<uint128>(rng()) * range) >> 64);
}

uint128 window_sumsq_block(const SignSource& signs, std::uint64_t h,
                           std::uint64_t first_x, std::uint64_t n_windows,
                           std::vector<std::int8_t>& scratch) {
    // Signs needed: (first_x, first_x + n_windows - 1 + h]
    const std::uint64_t need = n_windows - 1 + h;
    scratch.resize(need);
    signs.fill(first_x + 1, scratch);
    std::int64_t s = 0;
    for (std::uint64_t i = 0; i < h; ++i) s += scratch[i];
    uint128 acc = static_cast<uint128>(s * s);  // |s| <= h, so s*s fits int64
    for (std::uint64_t i = 1; i < n_windows; ++i) {
        s += scratch[i - 1 + h];
        s -= scratch[i - 1];
        acc += static_cast<uint128>(s * s);
    }
    return acc;
}

}  // namespace

VarianceReport variance(std::uint64_t X, std::uint64_t h, const SamplePolicy& policy,
                        const SignSource& signs, unsigned threads) {
    if (X == 0) throw DomainError("variance: X must be >= 1");
    if (h > X) throw DomainError("variance: h = " + std::to_string(h) +
                                 " exceeds X = " + std::to_string(X));
    if (policy.kind == PolicyKind::Strided && policy.stride == 0)
        throw ConfigError("variance: strided policy needs stride >= 1");
    if (policy.kind == PolicyKind::Random && !policy.seed)
        throw ConfigError("variance: random policy needs a seed");
    if (policy.kind == PolicyKind::Random && policy.count == 0)
        throw ConfigError("variance: random policy needs count >= 1");

    VarianceReport rep;
    rep.X = X;
    rep.h = h;
    rep.sample_policy = policy.describe();

    std::vector<uint128> partial;

    if (policy.kind == PolicyKind::FullGrid) {
        rep.num_samples = X;  // x in [X, 2X-1]
        if (h == 0) {
            rep.sum_squares = 0;
        } else {
            const std::size_t blocks = block_count(X, kSampleBlock);
            partial.assign(blocks, 0);
            parallel_blocks(X, kSampleBlock, threads,
                            [&](std::size_t b, std::uint64_t lo, std::uint64_t hi) {
                                std::vector<std::int8_t> scratch;
                                partial[b] = window_sumsq_block(signs, h, X + lo,
                                                                hi - lo, scratch);
                            });
        }
    } else {
        // Explicit sample list; windows summed directly.
        std::vector<std::uint64_t> xs;
        if (policy.kind == PolicyKind::Strided) {
            for (std::uint64_t x = X; x < 2 * X; x += policy.stride) xs.push_back(x);
        } else {
            std::mt19937_64 rng(*policy.seed);
            xs.reserve(policy.count);
            for (std::uint64_t i = 0; i < policy.count; ++i)
                xs.push_back(draw_in(rng, X, 2 * X - 1));
        }
        rep.num_samples = xs.size();
        if (h > 0) {
            const std::size_t blocks = block_count(xs.size(), kSampleBlock);
            partial.assign(blocks, 0);
            parallel_blocks(xs.size(), kSampleBlock, threads,
                            [&](std::size_t b, std::uint64_t lo, std::uint64_t hi) {
                                std::vector<std::int8_t> scratch(h);
                                uint128 acc = 0;
                                for (std::uint64_t i = lo; i < hi; ++i) {
                                    signs.fill(xs[i] + 1, scratch);
                                    std::int64_t s = 0;
                                    for (std::uint64_t j = 0; j < h; ++j) s += scratch[j];
                                    acc += static_cast<uint128>(s * s);
                                }
                                partial[b] = acc;
                            });
        }
    }

    uint128 total = 0;
    for (uint128 p : partial) total += p;
    rep.sum_squares = total;

    // |S| <= h, so sum_squares <= num_samples * h^2; checked exactly.
    if (total > static_cast<uint128>(rep.num_samples) * h * h)
        throw Error("variance: internal invariant V <= h^2 violated");

    rep.V = rep.num_samples ? static_cast<double>(total) / static_cast<double>(rep.num_samples)
                            : 0.0;
    const double logX = std::log(static_cast<double>(X));
    rep.v_over_h = h ? rep.V / static_cast<double>(h) : 0.0;
    rep.v_over_h2 = h ? rep.V / (static_cast<double>(h) * static_cast<double>(h)) : 0.0;
    const double log6 = std::pow(logX, 6);
    rep.v_over_h_log6 = (h && log6 > 0) ? rep.V / (static_cast<double>(h) * log6) : 0.0;
    return rep;
}

HScanResult h_scan(std::uint64_t X, std::span<const std::uint64_t> h_values,
                   const SignSource& signs, unsigned threads) {
    for (std::size_t i = 1; i < h_values.size(); ++i)
        if (h_values[i] <= h_values[i - 1])
            throw DomainError("h_scan: h values must be strictly ascending");
    HScanResult result;
    result.reports.reserve(h_values.size());
    for (std::size_t i = 0; i < h_values.size(); ++i) {
        try {
            result.reports.push_back(
                variance(X, h_values[i], SamplePolicy::full_grid(), signs, threads));
        } catch (const Error& e) {
            result.complete = false;
            result.error = e.what();
            result.failed_index = i;
            break;
        }
    }
    return result;
}

double predicted_bound(std::uint64_t X, std::uint64_t h, double C, double c) {
    if (h == 0) throw DomainError("predicted_bound: h must be >= 1");
    if (C < 0) throw DomainError("predicted_bound: C must be nonnegative");
    const double H = threshold_H(X, c);
    const double logX = std::log(static_cast<double>(X));
    const double hh = static_cast<double>(h);
    return C * hh * hh * std::pow(logX, 6) * (1.0 / hh + 1.0 / H);
}

}  // namespace liou
