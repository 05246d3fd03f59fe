#include "liou/smooth.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "liou/sieve.hpp"

namespace liou {

namespace {

constexpr std::uint64_t kSmoothChunk = std::uint64_t{1} << 20;

// Counts (or collects) n in [1, limit] whose prime factors are all <= y by
// dividing out every prime <= y chunk by chunk.
std::uint64_t smooth_scan(std::uint64_t limit, std::uint64_t y,
                          std::vector<std::uint8_t>* flags) {
    if (limit == 0) return 0;
    const std::vector<std::uint64_t> primes = primes_upto(std::min(y, limit));
    if (flags) flags->assign(limit, 0);

    std::uint64_t count = 0;
    std::vector<std::uint64_t> rem;
    for (std::uint64_t lo = 1; lo <= limit;) {
        const std::uint64_t hi = std::min(limit, lo + kSmoothChunk - 1);
        const std::uint64_t n = hi - lo + 1;
        rem.resize(n);
        for (std::uint64_t i = 0; i < n; ++i) rem[i] = lo + i;
        for (std::uint64_t p : primes) {
            if (p > hi) break;
            for (std::uint64_t m = ((lo + p - 1) / p) * p; m <= hi; m += p) {
                std::uint64_t& r = rem[m - lo];
                while (r % p == 0) r /= p;
            }
        }
        for (std::uint64_t i = 0; i < n; ++i) {
            if (rem[i] == 1) {
                ++count;
                if (flags) (*flags)[lo + i - 1] = 1;
            }
        }
        lo = hi + 1;
    }
    return count;
}

std::uint64_t dfs_count(const std::vector<std::uint64_t>& primes, std::size_t idx,
                        std::uint64_t limit) {
    if (idx == primes.size()) return 1;  // only the empty product
    const std::uint64_t p = primes[idx];
    std::uint64_t total = 0;
    std::uint64_t q = 1;
    for (;;) {
        total += dfs_count(primes, idx + 1, limit / q);
        if (q > limit / p) break;
        q *= p;
    }
    return total;
}

void dfs_collect(const std::vector<std::uint64_t>& primes, std::size_t idx,
                 std::uint64_t limit, std::uint64_t value,
                 std::vector<std::uint64_t>& out) {
    if (idx == primes.size()) {
        out.push_back(value);
        return;
    }
    const std::uint64_t p = primes[idx];
    std::uint64_t q = 1;
    for (;;) {
        dfs_collect(primes, idx + 1, limit / q, value * q, out);
        if (q > limit / p) break;
        q *= p;
    }
}

}  // namespace

std::uint64_t psi_exact_sieve(std::uint64_t x, std::uint64_t y) {
    if (x == 0) throw DomainError("psi: x must be >= 1");
    if (y == 0) throw DomainError("psi: y must be >= 1");
    if (x > kPsiSieveMax)
        throw DomainError("psi (sieve method): x = " + std::to_string(x) +
                          " exceeds " + std::to_string(kPsiSieveMax) +
                          "; use the DFS method for y <= " + std::to_string(kPsiDfsMaxY));
    return smooth_scan(x, y, nullptr);
}

std::uint64_t psi_exact_dfs(std::uint64_t x, std::uint64_t y) {
    if (x == 0) throw DomainError("psi: x must be >= 1");
    if (y == 0) throw DomainError("psi: y must be >= 1");
    if (x > kPsiDfsMaxX)
        throw DomainError("psi (DFS method): x exceeds " + std::to_string(kPsiDfsMaxX));
    if (y > kPsiDfsMaxY)
        throw DomainError("psi (DFS method): y = " + std::to_string(y) + " exceeds " +
                          std::to_string(kPsiDfsMaxY) +
                          "; use the sieve method for x <= " + std::to_string(kPsiSieveMax));
    return dfs_count(primes_upto(std::min(y, x)), 0, x);
}

std::uint64_t psi_exact(std::uint64_t x, std::uint64_t y) {
    if (x == 0) throw DomainError("psi: x must be >= 1");
    if (y == 0) throw DomainError("psi: y must be >= 1");
    if (y <= kPsiDfsMaxY && x <= kPsiDfsMaxX) return psi_exact_dfs(x, y);
    if (x <= kPsiSieveMax) return psi_exact_sieve(x, y);
    throw DomainError("psi: x = " + std::to_string(x) +
                      " is out of range for the sieve method (x <= " +
                      std::to_string(kPsiSieveMax) + ") and y = " + std::to_string(y) +
                      " is too large for the DFS method (y <= " +
                      std::to_string(kPsiDfsMaxY) + ")");
}

std::vector<std::uint8_t> smooth_flags(std::uint64_t limit, std::uint64_t y) {
    if (limit == 0) return {};
    if (limit > kPsiSieveMax)
        throw DomainError("smooth_flags: limit exceeds " + std::to_string(kPsiSieveMax));
    std::vector<std::uint8_t> flags;
    smooth_scan(limit, y, &flags);
    return flags;
}

std::vector<std::uint64_t> smooth_numbers_dfs(std::uint64_t limit, std::uint64_t y) {
    if (limit == 0) return {};
    std::vector<std::uint64_t> out;
    dfs_collect(primes_upto(std::min(y, limit)), 0, limit, 1, out);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// One implicit-trapezoid march of the delay integral on a uniform grid.
// per_unit = 1/step must be an integer so that u-1 lands on the grid.
std::vector<double> march_rho(double step, double u_max) {
    const auto per_unit = static_cast<std::size_t>(std::llround(1.0 / step));
    const auto n = static_cast<std::size_t>(std::llround(u_max / step));
    std::vector<double> rho(n + 1), cum(n + 1);  // cum[i] = Int_0^{u_i} rho
    for (std::size_t i = 0; i <= std::min(per_unit, n); ++i) {
        rho[i] = 1.0;
        cum[i] = static_cast<double>(i) * step;
    }
    for (std::size_t i = per_unit + 1; i <= n; ++i) {
        const double u = static_cast<double>(i) * step;
        // rho_i * (u - step/2) = cum[i-1] + (step/2) rho_{i-1} - cum[i - per_unit]
        rho[i] = (cum[i - 1] + 0.5 * step * rho[i - 1] - cum[i - per_unit]) /
                 (u - 0.5 * step);
        cum[i] = cum[i - 1] + 0.5 * step * (rho[i - 1] + rho[i]);
    }
    return rho;
}

}  // namespace

DickmanRho::DickmanRho(double step, double u_max) : step_(step), u_max_(u_max) {
    const std::vector<double> coarse = march_rho(step, u_max);
    const std::vector<double> fine = march_rho(step / 2, u_max);
    values_.resize(coarse.size());
    for (std::size_t i = 0; i < coarse.size(); ++i)
        values_[i] = (4.0 * fine[2 * i] - coarse[i]) / 3.0;
}

double DickmanRho::operator()(double u) const {
    if (u < 0) throw DomainError("dickman_rho: u must be nonnegative");
    if (u > u_max_)
        throw DomainError("dickman_rho: u = " + std::to_string(u) +
                          " exceeds the underflow guard " + std::to_string(u_max_));
    if (u <= 1.0) return 1.0;

    // Cubic Lagrange on 4 consecutive nodes, clamped inside the unit interval
    // containing u; rho is smooth between consecutive integers.
    const auto per_unit = static_cast<std::size_t>(std::llround(1.0 / step_));
    const auto unit = static_cast<std::size_t>(std::min(u_max_ - 1.0, std::floor(u)));
    const std::size_t lo_node = unit * per_unit;
    const std::size_t hi_node = std::min(values_.size() - 1, lo_node + per_unit);

    auto j = static_cast<std::size_t>(u / step_);
    std::size_t first = (j > lo_node + 1) ? j - 1 : lo_node;
    if (first + 3 > hi_node) first = hi_node - 3;

    const double x = u / step_;
    double result = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
        double term = values_[first + k];
        for (std::size_t m = 0; m < 4; ++m) {
            if (m == k) continue;
            term *= (x - static_cast<double>(first + m)) /
                    (static_cast<double>(first + k) - static_cast<double>(first + m));
        }
        result += term;
    }
    return result;
}

double dickman_rho(double u) {
    static const DickmanRho table;  // thread-safe magic static
    return table(u);
}

SmoothCountRecord psi_estimate(std::uint64_t x, std::uint64_t y) {
    if (y < 2)
        throw DomainError("psi_estimate: y must be >= 2 so that u = log x / log y is defined");
    SmoothCountRecord rec;
    rec.x = x;
    rec.y = y;
    rec.psi_exact = psi_exact(x, y);
    rec.u = std::log(static_cast<double>(x)) / std::log(static_cast<double>(y));
    const double xd = static_cast<double>(x);
    rec.rho_estimate = xd * dickman_rho(rec.u);
    rec.u_pow_estimate = xd * std::pow(rec.u, -rec.u);
    rec.ratio_rho = rec.rho_estimate > 0 ? static_cast<double>(rec.psi_exact) / rec.rho_estimate : 0.0;
    rec.ratio_upow =
        rec.u_pow_estimate > 0 ? static_cast<double>(rec.psi_exact) / rec.u_pow_estimate : 0.0;
    return rec;
}

double threshold_H(std::uint64_t X, double c) {
    if (X < 16) throw DomainError("threshold_H: X must be >= 16");
    if (!(c > 0.0) || c > 1.0) throw DomainError("threshold_H: c must lie in (0, 1]");
    const double logX = std::log(static_cast<double>(X));
    return std::exp(std::sqrt(c * logX * std::log(logX)));
}

DensityReport smooth_density_check(std::uint64_t X, std::uint64_t h) {
    if (h == 0) throw DomainError("smooth_density_check: h must be >= 1");
    DensityReport rep;
    rep.X = X;
    rep.h = h;
    rep.H_half = threshold_H(X, 0.5);
    rep.within_threshold = static_cast<double>(h) <= rep.H_half;
    const std::uint64_t four_x = 4 * X;
    rep.out_of_range = h >= four_x;
    rep.psi = psi_exact(four_x, h);
    rep.density = static_cast<double>(rep.psi) * static_cast<double>(h) /
                  static_cast<double>(four_x);
    return rep;
}

}  // namespace liou
