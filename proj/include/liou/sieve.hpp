#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "liou/errors.hpp"

namespace liou {

// All primes p <= limit, ascending.
std::vector<std::uint64_t> primes_upto(std::uint64_t limit);

std::uint64_t isqrt(std::uint64_t n);

// Contiguous block of Liouville values with its prefix-sum anchor.
//
// signs[i] = lambda(start + i), each exactly -1 or +1.
// prefix_base = L(start - 1); a standalone sieve cannot know it, so it is 0
// until a stitching pass (LambdaStore) fills it in.
struct LambdaSegment {
    std::uint64_t start = 1;
    std::vector<std::int8_t> signs;
    std::int64_t prefix_base = 0;

    std::uint64_t len() const { return signs.size(); }
};

inline constexpr std::uint64_t kDefaultSegmentCap = std::uint64_t{1} << 26;

// Sieve lambda(n) for n in [start, start+len).
//
// Initializes every sign to +1 and flips once per prime-power divisor
// p^k with p <= sqrt(max n); a remaining cofactor > 1 is a single prime
// above the sqrt bound and contributes the final flip. Net parity is Omega(n).
LambdaSegment sieve_lambda(std::uint64_t start, std::uint64_t len,
                           std::uint64_t segment_cap = kDefaultSegmentCap,
                           std::int64_t prefix_base = 0);

struct StoreConfig {
    std::uint64_t max_coverage = std::uint64_t{1} << 28;
    std::uint64_t chunk_len = std::uint64_t{1} << 22;  // sieving + cache-file unit
    unsigned threads = 1;
    std::string cache_dir;  // empty: purely in-memory
};

// Materialized lambda values over [1, covered()] with O(1) prefix sums.
//
// ensure() is the only mutating call; everything else is a const query and
// throws CoverageError instead of silently recomputing missing ranges.
class LambdaStore {
public:
    explicit LambdaStore(StoreConfig cfg = StoreConfig{});

    // Extends coverage to at least n (rounded up to a whole chunk), sieving
    // chunks in parallel and stitching prefix sums serially. Chunks already
    // present in the cache directory are loaded instead of recomputed.
    void ensure(std::uint64_t n);

    std::uint64_t covered() const { return covered_; }

    int lambda(std::uint64_t n) const;

    // L(x) = sum of lambda(n) for n <= x; L(0) = 0.
    std::int64_t prefix(std::uint64_t x) const;

    // S(x, h) = L(x+h) - L(x), the half-open window (x, x+h].
    std::int64_t window_sum(std::uint64_t x, std::uint64_t h) const;

    std::span<const std::int8_t> signs(std::uint64_t start, std::uint64_t count) const;

    const StoreConfig& config() const { return cfg_; }

private:
    StoreConfig cfg_;
    std::vector<std::int8_t> signs_;    // signs_[n-1] = lambda(n)
    std::vector<std::int32_t> prefix_;  // prefix_[n-1] = L(n)
    std::uint64_t covered_ = 0;
};

// Per-integer factorization summary.
struct FactorProfile {
    std::uint64_t n = 1;
    std::uint32_t big_omega = 0;                  // Omega(n), with multiplicity
    std::vector<std::uint64_t> distinct_primes;   // ascending
    std::uint64_t largest_prime = 0;              // 0 when n == 1
};

// Trial-division factorization; adequate for isolated queries.
FactorProfile factor_profile(std::uint64_t n);

// Number of distinct primes q > h dividing n.
std::uint32_t count_big_prime_divisors(std::uint64_t n, std::uint64_t h);

// Bulk factorization backed by an on-demand smallest-prime-factor table.
// Queries above the table limit fall back to trial division.
class Factorizer {
public:
    static constexpr std::uint64_t kSpfTableMax = 100'000'000;

    void ensure_spf(std::uint64_t limit);
    std::uint64_t spf_limit() const { return spf_limit_; }

    FactorProfile profile(std::uint64_t n) const;
    std::uint32_t big_prime_divisors(std::uint64_t n, std::uint64_t h) const;
    int lambda(std::uint64_t n) const;  // (-1)^Omega(n)

private:
    std::vector<std::uint32_t> spf_;
    std::uint64_t spf_limit_ = 0;
};

}  // namespace liou
