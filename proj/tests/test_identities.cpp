#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "liou/identities.hpp"
#include "oracles.hpp"

using namespace liou;

TEST_CASE("hand-checked single terms of the decomposition") {
    // n = 22, h = 5: only p = 11, m = 2, omega_{>5}(2) = 0, 11 does not divide 2.
    // Term: lambda(11) lambda(2) / (0 + 1) = 1 = lambda(22).
    {
        const Rational term(-oracle::lambda(2), 0 + 1);
        CHECK(term == Rational(oracle::lambda(22)));
    }
    // n = 49, h = 5: p = 7, m = 7, omega_{>5}(7) = 1, 7 divides 7, denominator 1.
    {
        const Rational term(-oracle::lambda(7), 1);
        CHECK(term == Rational(oracle::lambda(49)));
    }
    // n = 77, h = 5: terms 1/2 + 1/2 = 1 = lambda(77).
    {
        const Rational t1(-oracle::lambda(11), 2);  // p = 7
        const Rational t2(-oracle::lambda(7), 2);   // p = 11
        CHECK(t1 == Rational(1, 2));
        CHECK(t1 + t2 == Rational(oracle::lambda(77)));
    }
}

TEST_CASE("rough_identity_check: zero failures on the unit grid") {
    for (std::uint64_t X : {100ULL, 1'000ULL}) {
        for (std::uint64_t h : {2ULL, 5ULL, 30ULL, 100ULL}) {
            const auto rep = rough_identity_check(X, h, RoughDenominator::Corrected, 2);
            CHECK(rep.failures.empty());
            CHECK(rep.checked > 0);
        }
    }
}

TEST_CASE("rough_identity_check counts exactly the rough integers") {
    const auto rep = rough_identity_check(100, 7);
    std::uint64_t rough = 0;
    for (std::uint64_t n = 100; n <= 400; ++n)
        if (oracle::largest_prime_factor(n) > 7) ++rough;
    CHECK(rep.checked == rough);
}

TEST_CASE("misprint denominator is a working negative control") {
    const auto rep = rough_identity_check(100, 2, RoughDenominator::Misprint);
    REQUIRE_FALSE(rep.failures.empty());
    bool square_witness = false;
    for (const auto& f : rep.failures) {
        CHECK(f.lhs != f.rhs);
        if (f.has_square_big_prime) square_witness = true;
    }
    CHECK(square_witness);
    // Without any p^2 | n (p > h) in range, the two conventions coincide.
    const auto high_h = rough_identity_check(100, 100, RoughDenominator::Misprint);
    CHECK(high_h.failures.empty());
}

TEST_CASE("rough_identity_check guards") {
    CHECK_THROWS_AS(rough_identity_check(3'000'000, 5), DomainError);
    CHECK_THROWS_AS(rough_identity_check(0, 5), DomainError);
    CHECK_THROWS_AS(rough_identity_check(100, 0), DomainError);
}

TEST_CASE("rearrangement_check: exact map equality") {
    for (std::uint64_t X : {100ULL, 1'000ULL}) {
        for (std::uint64_t h : {5ULL, 30ULL}) {
            const auto rep = rearrangement_check(X, h);
            CHECK(rep.equal);
            CHECK(rep.lhs_map.size() == rep.rhs_map.size());
            for (const auto& [key, w] : rep.lhs_map) {
                REQUIRE(w != 0);  // zero weights are never stored
                REQUIRE(key >= X);
                REQUIRE(key <= 4 * X);
            }
        }
    }
}

TEST_CASE("rearrangement_check: empty prime window gives empty equal maps") {
    const auto rep = rearrangement_check(10, 40);  // primes in (40, 40] do not exist
    CHECK(rep.equal);
    CHECK(rep.lhs_map.empty());
    CHECK(rep.rhs_map.empty());
}

TEST_CASE("rearrangement_check: a_12 with h = 5 contributes weight 1 at key 132") {
    // omega_{>5}(12) = 0, lambda(12) = -1, so a_12 = 1; the only way to write
    // 132 = p*m with p > 5 prime is p = 11, m = 12.
    const auto rep = rearrangement_check(100, 5);
    REQUIRE(rep.rhs_map.count(132) == 1);
    CHECK(rep.rhs_map.at(132) == Rational(1));
    REQUIRE(rep.lhs_map.count(132) == 1);
    CHECK(rep.lhs_map.at(132) == Rational(1));
}

TEST_CASE("rearrangement_check guard") {
    CHECK_THROWS_AS(rearrangement_check(300'000, 5), DomainError);
}

TEST_CASE("smooth_rough_split_check") {
    SUBCASE("exact partition at (X=50, h=7) against enumeration") {
        const auto rep = smooth_rough_split_check(50, 7);
        CHECK(rep.ok);
        std::uint64_t smooth = 0;
        std::int64_t smooth_sum = 0, total = 0;
        for (std::uint64_t n = 50; n <= 200; ++n) {
            total += oracle::lambda(n);
            if (oracle::largest_prime_factor(n) <= 7) {
                ++smooth;
                smooth_sum += oracle::lambda(n);
            }
        }
        CHECK(rep.smooth_count == smooth);
        CHECK(rep.smooth_sum == smooth_sum);
        CHECK(rep.total_sum == total);
        CHECK(rep.rough_sum == total - smooth_sum);
    }
    SUBCASE("h >= 4X: rough set empty, smooth sum equals the total") {
        const auto rep = smooth_rough_split_check(10, 40);
        CHECK(rep.ok);
        CHECK(rep.rough_count == 0);
        CHECK(rep.smooth_sum == rep.total_sum);
    }
    SUBCASE("h = 1: smooth set misses [X, 4X] entirely for X >= 2") {
        const auto rep = smooth_rough_split_check(50, 1);
        CHECK(rep.ok);
        CHECK(rep.smooth_count == 0);
        CHECK(rep.rough_sum == rep.total_sum);
    }
}

TEST_CASE("rational_str always prints num/den") {
    CHECK(rational_str(Rational(1, 2)) == "1/2");
    CHECK(rational_str(Rational(-5, 6)) == "-5/6");
    CHECK(rational_str(Rational(3)) == "3/1");
    CHECK(rational_str(make_rational(2, 4)) == "1/2");  // canonicalized
}
