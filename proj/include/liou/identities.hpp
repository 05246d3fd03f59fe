#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "liou/sieve.hpp"

namespace liou {

// Exact rational weight (reduced, positive denominator).
using Rational = mpq_class;

// Canonicalized construction; raw mpq_class(num, den) keeps common factors.
Rational make_rational(long num, long den);

// Always "num/den", including "/1", so reports are unambiguous.
std::string rational_str(const Rational& q);

// n -> weight; zero weights are never stored.
using CoefficientMap = std::map<std::uint64_t, Rational>;

enum class RoughDenominator {
    Corrected,  // omega_{>h}(m) + [p does not divide m]
    Misprint,   // omega_{>h}(m) + 1 (negative control)
};

struct RoughIdentityFailure {
    std::uint64_t n = 0;
    Rational lhs;
    Rational rhs;
    bool has_square_big_prime = false;  // some p > h with p^2 | n
};

struct RoughIdentityReport {
    std::uint64_t X = 0;
    std::uint64_t h = 0;
    std::uint64_t checked = 0;  // rough n in [X, 4X] examined
    std::vector<RoughIdentityFailure> failures;
};

// For every rough n in [X, 4X] verifies, in exact rationals,
//   sum over primes p > h dividing n of
//     lambda(p) * lambda(n/p) / (omega_{>h}(n/p) + [p does not divide n/p])
//   = lambda(n).
// Each denominator counts the factorizations n = m*p with p > h.
RoughIdentityReport rough_identity_check(std::uint64_t X, std::uint64_t h,
                                         RoughDenominator denom = RoughDenominator::Corrected,
                                         unsigned threads = 1);

struct RearrangementReport {
    std::uint64_t X = 0;
    std::uint64_t h = 0;
    CoefficientMap lhs_map;
    CoefficientMap rhs_map;
    bool equal = false;
    std::uint64_t first_mismatch_key = 0;  // meaningful when !equal
};

// Builds, keyed by the product p*m (resp. p^2*m), the original double sum
//   -sum_p sum_m lambda(m) / (omega_{>h}(m) + [p does not divide m])
// and its rearrangement sum_p sum_m a_m + sum_p sum_{m} b_{mp} with
//   a_m = -lambda(m) / (omega_{>h}(m)+1),
//   b_m = -lambda(m) / (omega_{>h}(m) (omega_{>h}(m)+1)),
// the b-sum running over p^2 m in [X, 4X]. Asserts exact map equality.
// m ranges use ceil(X/p) <= m <= floor(4X/p) so products land in [X, 4X].
RearrangementReport rearrangement_check(std::uint64_t X, std::uint64_t h);

struct SplitReport {
    std::uint64_t X = 0;
    std::uint64_t h = 0;
    std::uint64_t count = 0;
    std::uint64_t smooth_count = 0;
    std::uint64_t rough_count = 0;
    std::int64_t total_sum = 0;   // sum of lambda over [X, 4X]
    std::int64_t smooth_sum = 0;
    std::int64_t rough_sum = 0;
    bool ok = false;
};

// Every n in [X, 4X] must fall in exactly one class (h-smooth vs rough,
// decided by two independent predicates) and the lambda sums must add exactly.
SplitReport smooth_rough_split_check(std::uint64_t X, std::uint64_t h);

}  // namespace liou
