#include "liou/identities.hpp"

#include <algorithm>

#include "liou/parallel.hpp"

namespace liou {

namespace {

constexpr std::uint64_t kRoughGuard = 10'000'000;     // 4X cap, exact-arithmetic desk guard
constexpr std::uint64_t kRearrangeGuard = 1'000'000;  // 4X cap

int lambda_of(const FactorProfile& fp) { return fp.big_omega % 2 == 0 ? 1 : -1; }

std::uint32_t omega_above(const FactorProfile& fp, std::uint64_t h) {
    std::uint32_t k = 0;
    for (std::uint64_t p : fp.distinct_primes)
        if (p > h) ++k;
    return k;
}

void add_weight(CoefficientMap& map, std::uint64_t key, const Rational& w) {
    auto [it, inserted] = map.emplace(key, w);
    if (!inserted) {
        it->second += w;
        if (it->second == 0) map.erase(it);
    }
}

}  // namespace

Rational make_rational(long num, long den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

std::string rational_str(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

RoughIdentityReport rough_identity_check(std::uint64_t X, std::uint64_t h,
                                         RoughDenominator denom, unsigned threads) {
    if (X == 0) throw DomainError("rough_identity_check: X must be >= 1");
    if (h == 0) throw DomainError("rough_identity_check: h must be >= 1");
    if (4 * X > kRoughGuard)
        throw DomainError("rough_identity_check: 4X exceeds the exact-arithmetic guard " +
                          std::to_string(kRoughGuard));

    Factorizer fz;
    fz.ensure_spf(4 * X);

    RoughIdentityReport rep;
    rep.X = X;
    rep.h = h;

    const std::uint64_t lo = X, hi = 4 * X;
    const std::uint64_t total = hi - lo + 1;
    const std::size_t blocks = block_count(total, 1 << 14);
    std::vector<std::vector<RoughIdentityFailure>> fails(blocks);
    std::vector<std::uint64_t> counts(blocks, 0);

    parallel_blocks(total, 1 << 14, threads, [&](std::size_t b, std::uint64_t i0, std::uint64_t i1) {
        for (std::uint64_t i = i0; i < i1; ++i) {
            const std::uint64_t n = lo + i;
            const FactorProfile fp = fz.profile(n);
            bool has_square = false;
            Rational lhs(0);
            std::uint64_t terms = 0;
            for (std::uint64_t p : fp.distinct_primes) {
                if (p <= h) continue;
                ++terms;
                const std::uint64_t m = n / p;
                const FactorProfile fm = fz.profile(m);
                const bool p_divides_m = (m % p == 0);
                if (p_divides_m) has_square = true;
                std::uint64_t d = omega_above(fm, h);
                if (denom == RoughDenominator::Misprint)
                    d += 1;
                else
                    d += p_divides_m ? 0 : 1;
                // lambda(p) * lambda(m) = -lambda(m)
                lhs += make_rational(-lambda_of(fm), static_cast<long>(d));
            }
            if (terms == 0) continue;  // h-smooth, not part of the identity
            ++counts[b];
            const Rational rhs(lambda_of(fp));
            if (lhs != rhs)
                fails[b].push_back({n, lhs, rhs, has_square});
        }
    });

    for (std::size_t b = 0; b < blocks; ++b) {
        rep.checked += counts[b];
        rep.failures.insert(rep.failures.end(), fails[b].begin(), fails[b].end());
    }
    return rep;
}

RearrangementReport rearrangement_check(std::uint64_t X, std::uint64_t h) {
    if (X == 0) throw DomainError("rearrangement_check: X must be >= 1");
    if (h == 0) throw DomainError("rearrangement_check: h must be >= 1");
    if (4 * X > kRearrangeGuard)
        throw DomainError("rearrangement_check: 4X exceeds the guard " +
                          std::to_string(kRearrangeGuard));

    Factorizer fz;
    fz.ensure_spf(4 * X);

    RearrangementReport rep;
    rep.X = X;
    rep.h = h;

    const std::uint64_t hi = 4 * X;
    for (std::uint64_t p : primes_upto(hi)) {
        if (p <= h) continue;
        const std::uint64_t m_lo = (X + p - 1) / p;  // ceil(X/p)
        const std::uint64_t m_hi = hi / p;           // floor(4X/p)
        for (std::uint64_t m = std::max<std::uint64_t>(1, m_lo); m <= m_hi; ++m) {
            const FactorProfile fm = fz.profile(m);
            const int lam = lambda_of(fm);
            const std::uint32_t omega = omega_above(fm, h);
            const bool p_divides_m = (m % p == 0);

            add_weight(rep.lhs_map, p * m,
                       make_rational(-lam, static_cast<long>(omega + (p_divides_m ? 0 : 1))));
            add_weight(rep.rhs_map, p * m, make_rational(-lam, static_cast<long>(omega + 1)));
        }
        // b-part: products p^2 m in [X, 4X], with b_{mp} evaluated at mp.
        if (p > hi / p) continue;
        const std::uint64_t p2 = p * p;
        const std::uint64_t mm_lo = (X + p2 - 1) / p2;
        const std::uint64_t mm_hi = hi / p2;
        for (std::uint64_t m = std::max<std::uint64_t>(1, mm_lo); m <= mm_hi; ++m) {
            const FactorProfile fmp = fz.profile(m * p);
            const std::uint32_t omega = omega_above(fmp, h);  // >= 1, p divides mp
            const int lam = lambda_of(fmp);
            add_weight(rep.rhs_map, p2 * m,
                       make_rational(-lam, static_cast<long>(omega) *
                                              static_cast<long>(omega + 1)));
        }
    }

    rep.equal = rep.lhs_map == rep.rhs_map;
    if (!rep.equal) {
        for (const auto& [key, w] : rep.lhs_map) {
            auto it = rep.rhs_map.find(key);
            if (it == rep.rhs_map.end() || it->second != w) {
                rep.first_mismatch_key = key;
                break;
            }
        }
        if (rep.first_mismatch_key == 0)
            for (const auto& [key, w] : rep.rhs_map)
                if (!rep.lhs_map.count(key)) {
                    rep.first_mismatch_key = key;
                    break;
                }
    }
    return rep;
}

SplitReport smooth_rough_split_check(std::uint64_t X, std::uint64_t h) {
    if (X == 0) throw DomainError("smooth_rough_split_check: X must be >= 1");
    if (4 * X > kRoughGuard)
        throw DomainError("smooth_rough_split_check: 4X exceeds the guard " +
                          std::to_string(kRoughGuard));

    Factorizer fz;
    fz.ensure_spf(4 * X);

    SplitReport rep;
    rep.X = X;
    rep.h = h;
    bool exclusive = true;
    for (std::uint64_t n = X; n <= 4 * X; ++n) {
        const FactorProfile fp = fz.profile(n);
        const int lam = lambda_of(fp);
        // Two independent classifications must agree.
        const bool smooth_by_lpf = fp.largest_prime <= h;
        const bool rough_by_bigdiv = omega_above(fp, h) >= 1;
        if (smooth_by_lpf == rough_by_bigdiv) exclusive = false;
        ++rep.count;
        rep.total_sum += lam;
        if (smooth_by_lpf) {
            ++rep.smooth_count;
            rep.smooth_sum += lam;
        } else {
            ++rep.rough_count;
            rep.rough_sum += lam;
        }
    }
    rep.ok = exclusive && rep.smooth_count + rep.rough_count == rep.count &&
             rep.smooth_sum + rep.rough_sum == rep.total_sum;
    return rep;
}

}  // namespace liou
