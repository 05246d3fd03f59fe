#include "liou/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>

#include "liou/parallel.hpp"
#include "liou/storage.hpp"

namespace liou {

namespace {

// Largest base-prime bound the simple sieve will build on demand.
constexpr std::uint64_t kBasePrimeLimit = std::uint64_t{1} << 27;

// Working-chunk size inside sieve_lambda; bounds the u64 cofactor buffer.
constexpr std::uint64_t kSieveChunk = std::uint64_t{1} << 20;

}  // namespace

std::uint64_t isqrt(std::uint64_t n) {
    if (n == 0) return 0;
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r > n / r) --r;
    while ((r + 1) <= n / (r + 1)) ++r;
    return r;
}

std::vector<std::uint64_t> primes_upto(std::uint64_t limit) {
    std::vector<std::uint64_t> primes;
    if (limit < 2) return primes;
    if (limit > kBasePrimeLimit)
        throw RangeError("primes_upto: limit " + std::to_string(limit) +
                         " exceeds base-prime guard " + std::to_string(kBasePrimeLimit));
    std::vector<char> composite(limit + 1, 0);
    for (std::uint64_t i = 2; i * i <= limit; ++i)
        if (!composite[i])
            for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
    for (std::uint64_t i = 2; i <= limit; ++i)
        if (!composite[i]) primes.push_back(i);
    return primes;
}

namespace {

// Sieves lambda into out[0..hi-lo] for n in [lo, hi], flipping once per
// prime-power divisor. base_primes must cover sqrt(hi).
void sieve_chunk(std::uint64_t lo, std::uint64_t hi,
                 std::span<const std::uint64_t> base_primes, std::int8_t* out) {
    const std::uint64_t count = hi - lo + 1;
    std::fill(out, out + count, std::int8_t{1});

    std::vector<std::uint64_t> rem(count);
    for (std::uint64_t i = 0; i < count; ++i) rem[i] = lo + i;

    for (std::uint64_t p : base_primes) {
        if (p > hi) break;
        // First power: flip and divide the cofactor out completely.
        for (std::uint64_t m = ((lo + p - 1) / p) * p; m <= hi; m += p) {
            const std::uint64_t i = m - lo;
            out[i] = static_cast<std::int8_t>(-out[i]);
            while (rem[i] % p == 0) rem[i] /= p;
        }
        // Higher powers: one extra flip each.
        for (std::uint64_t q = p; q <= hi / p;) {
            q *= p;
            for (std::uint64_t m = ((lo + q - 1) / q) * q; m <= hi; m += q)
                out[m - lo] = static_cast<std::int8_t>(-out[m - lo]);
        }
    }

    // Whatever survived division is 1 or a single prime above sqrt(hi).
    for (std::uint64_t i = 0; i < count; ++i)
        if (rem[i] > 1) out[i] = static_cast<std::int8_t>(-out[i]);
}

}  // namespace

LambdaSegment sieve_lambda(std::uint64_t start, std::uint64_t len,
                           std::uint64_t segment_cap, std::int64_t prefix_base) {
    if (len == 0) throw DomainError("sieve_lambda: empty range (len = 0)");
    if (start == 0) throw DomainError("sieve_lambda: start must be >= 1");
    if (len - 1 > std::numeric_limits<std::uint64_t>::max() - start)
        throw RangeError("sieve_lambda: start + len overflows 64 bits");
    if (len > segment_cap)
        throw RangeError("sieve_lambda: len " + std::to_string(len) +
                         " exceeds segment cap " + std::to_string(segment_cap));

    const std::uint64_t hi = start + len - 1;
    const std::uint64_t root = isqrt(hi);
    if (root > kBasePrimeLimit)
        throw RangeError("sieve_lambda: range max needs base primes beyond the guard");
    const std::vector<std::uint64_t> base = primes_upto(root);

    LambdaSegment seg;
    seg.start = start;
    seg.prefix_base = prefix_base;
    seg.signs.resize(len);

    for (std::uint64_t lo = start; lo <= hi;) {
        const std::uint64_t chunk_hi = std::min(hi, lo + kSieveChunk - 1);
        sieve_chunk(lo, chunk_hi, base, seg.signs.data() + (lo - start));
        lo = chunk_hi + 1;
    }
    return seg;
}

LambdaStore::LambdaStore(StoreConfig cfg) : cfg_(cfg) {
    if (cfg_.chunk_len == 0) throw ConfigError("LambdaStore: chunk_len must be positive");
    if (cfg_.max_coverage >= (std::uint64_t{1} << 31))
        throw ConfigError("LambdaStore: max_coverage must stay below 2^31");
    if (cfg_.threads == 0) cfg_.threads = 1;
}

void LambdaStore::ensure(std::uint64_t n) {
    if (n <= covered_) return;
    if (n > cfg_.max_coverage)
        throw RangeError("LambdaStore: requested coverage " + std::to_string(n) +
                         " exceeds max_coverage " + std::to_string(cfg_.max_coverage));

    // Whole chunks only, so every cache file has the canonical length.
    const std::uint64_t chunks_needed = (n + cfg_.chunk_len - 1) / cfg_.chunk_len;
    const std::uint64_t target = chunks_needed * cfg_.chunk_len;
    const std::uint64_t first_new_chunk = covered_ / cfg_.chunk_len;

    signs_.resize(target);
    prefix_.resize(target);

    const bool cached = !cfg_.cache_dir.empty();
    if (cached) std::filesystem::create_directories(cfg_.cache_dir);

    const std::uint64_t new_chunks = chunks_needed - first_new_chunk;
    std::vector<char> loaded(new_chunks, 0);

    parallel_blocks(new_chunks, 1, cfg_.threads, [&](std::size_t b, std::uint64_t, std::uint64_t) {
        const std::uint64_t chunk = first_new_chunk + b;
        const std::uint64_t start = chunk * cfg_.chunk_len + 1;
        if (cached) {
            const auto path = segment_cache_path(cfg_.cache_dir, start, cfg_.chunk_len);
            if (std::filesystem::exists(path)) {
                LambdaSegment seg = read_segment(path);
                if (seg.start != start || seg.len() != cfg_.chunk_len)
                    throw FormatError("cache file " + path.string() +
                                      " does not match its name");
                std::copy(seg.signs.begin(), seg.signs.end(),
                          signs_.begin() + static_cast<std::ptrdiff_t>(start - 1));
                loaded[b] = 1;
                return;
            }
        }
        LambdaSegment seg = sieve_lambda(start, cfg_.chunk_len, cfg_.chunk_len);
        std::copy(seg.signs.begin(), seg.signs.end(),
                  signs_.begin() + static_cast<std::ptrdiff_t>(start - 1));
    });

    // Serial stitch, ascending.
    std::int64_t acc = covered_ ? prefix_[covered_ - 1] : 0;
    for (std::uint64_t i = covered_; i < target; ++i) {
        acc += signs_[i];
        prefix_[i] = static_cast<std::int32_t>(acc);
    }

    if (cached) {
        for (std::uint64_t b = 0; b < new_chunks; ++b) {
            if (loaded[b]) continue;
            const std::uint64_t chunk = first_new_chunk + b;
            const std::uint64_t start = chunk * cfg_.chunk_len + 1;
            LambdaSegment seg;
            seg.start = start;
            seg.prefix_base = start > 1 ? prefix_[start - 2] : 0;
            seg.signs.assign(signs_.begin() + static_cast<std::ptrdiff_t>(start - 1),
                             signs_.begin() + static_cast<std::ptrdiff_t>(start - 1 + cfg_.chunk_len));
            write_segment(seg, segment_cache_path(cfg_.cache_dir, start, cfg_.chunk_len));
        }
    }

    covered_ = target;
}

int LambdaStore::lambda(std::uint64_t n) const {
    if (n == 0) throw DomainError("lambda: n must be >= 1");
    if (n > covered_)
        throw CoverageError("lambda: n = " + std::to_string(n) +
                            " is outside materialized coverage [1, " +
                            std::to_string(covered_) + "]");
    return signs_[n - 1];
}

std::int64_t LambdaStore::prefix(std::uint64_t x) const {
    if (x == 0) return 0;
    if (x > covered_)
        throw CoverageError("prefix: range not materialized up to " + std::to_string(x) +
                            " (covered " + std::to_string(covered_) + ")");
    return prefix_[x - 1];
}

std::int64_t LambdaStore::window_sum(std::uint64_t x, std::uint64_t h) const {
    if (h > std::numeric_limits<std::uint64_t>::max() - x)
        throw RangeError("window_sum: x + h overflows");
    return prefix(x + h) - prefix(x);
}

std::span<const std::int8_t> LambdaStore::signs(std::uint64_t start, std::uint64_t count) const {
    if (start == 0) throw DomainError("signs: start must be >= 1");
    if (count == 0) return {};
    if (start - 1 + count > covered_)
        throw CoverageError("signs: [" + std::to_string(start) + ", " +
                            std::to_string(start + count - 1) + "] not materialized");
    return {signs_.data() + (start - 1), count};
}

FactorProfile factor_profile(std::uint64_t n) {
    if (n == 0) throw DomainError("factor_profile: n must be >= 1");
    FactorProfile fp;
    fp.n = n;
    auto take = [&](std::uint64_t p) {
        fp.distinct_primes.push_back(p);
        while (n % p == 0) {
            n /= p;
            ++fp.big_omega;
        }
    };
    if (n % 2 == 0) take(2);
    if (n % 3 == 0) take(3);
    for (std::uint64_t p = 5; p <= n / p; p += 6) {
        if (n % p == 0) take(p);
        const std::uint64_t q = p + 2;
        if (q <= n / q && n % q == 0) take(q);
    }
    if (n > 1) {
        fp.distinct_primes.push_back(n);
        ++fp.big_omega;
    }
    fp.largest_prime = fp.distinct_primes.empty() ? 0 : fp.distinct_primes.back();
    return fp;
}

std::uint32_t count_big_prime_divisors(std::uint64_t n, std::uint64_t h) {
    const FactorProfile fp = factor_profile(n);
    std::uint32_t k = 0;
    for (std::uint64_t p : fp.distinct_primes)
        if (p > h) ++k;
    return k;
}

void Factorizer::ensure_spf(std::uint64_t limit) {
    if (limit > kSpfTableMax)
        throw RangeError("Factorizer: SPF table limit " + std::to_string(limit) +
                         " exceeds " + std::to_string(kSpfTableMax));
    if (limit <= spf_limit_) return;
    spf_.assign(limit + 1, 0);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (spf_[i] == 0)
            for (std::uint64_t j = i; j <= limit; j += i)
                if (spf_[j] == 0) spf_[j] = static_cast<std::uint32_t>(i);
    }
    spf_limit_ = limit;
}

FactorProfile Factorizer::profile(std::uint64_t n) const {
    if (n == 0) throw DomainError("Factorizer::profile: n must be >= 1");
    if (n > spf_limit_) return factor_profile(n);
    FactorProfile fp;
    fp.n = n;
    while (n > 1) {
        const std::uint64_t p = spf_[n];
        fp.distinct_primes.push_back(p);
        while (n % p == 0) {
            n /= p;
            ++fp.big_omega;
        }
    }
    fp.largest_prime = fp.distinct_primes.empty() ? 0 : fp.distinct_primes.back();
    return fp;
}

std::uint32_t Factorizer::big_prime_divisors(std::uint64_t n, std::uint64_t h) const {
    const FactorProfile fp = profile(n);
    std::uint32_t k = 0;
    for (std::uint64_t p : fp.distinct_primes)
        if (p > h) ++k;
    return k;
}

int Factorizer::lambda(std::uint64_t n) const {
    return profile(n).big_omega % 2 == 0 ? 1 : -1;
}

}  // namespace liou
