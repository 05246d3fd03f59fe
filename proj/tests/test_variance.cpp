#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "liou/smooth.hpp"
#include "liou/variance.hpp"
#include "oracles.hpp"

using namespace liou;

namespace {

const LambdaStore& shared_store() {
    static const LambdaStore store = [] {
        StoreConfig cfg;
        cfg.threads = 2;
        LambdaStore s(cfg);
        s.ensure(250'000);
        return s;
    }();
    return store;
}

}  // namespace

TEST_CASE("window_sum examples") {
    const auto& store = shared_store();
    CHECK(store.window_sum(0, 10) == 0);   // equals L(10)
    CHECK(store.window_sum(0, 10) == oracle::lambda_prefix(10));
    CHECK(store.window_sum(123, 0) == 0);  // empty window
    CHECK(store.window_sum(1, 1) == -1);   // only n = 2, a prime
}

TEST_CASE("full-grid variance equals the double-loop oracle exactly") {
    const auto& store = shared_store();
    const StoreSigns signs(store);
    for (std::uint64_t X : {100ULL, 1'000ULL}) {
        for (std::uint64_t h : {1ULL, 2ULL, 10ULL, 37ULL}) {
            const auto rep = variance(X, h, SamplePolicy::full_grid(), signs, 2);
            const auto expected =
                oracle::variance_sumsq(X, h, [&](std::uint64_t n) { return store.lambda(n); });
            REQUIRE(rep.sum_squares == expected);
            REQUIRE(rep.num_samples == X);
            CHECK(rep.V == doctest::Approx(static_cast<double>(expected) /
                                           static_cast<double>(X)));
        }
    }
}

TEST_CASE("injected all-ones sequence gives V = h^2") {
    const CallableSigns ones([](std::uint64_t) { return 1; });
    const auto rep = variance(100, 10, SamplePolicy::full_grid(), ones);
    CHECK(rep.V == 100.0);
    CHECK(rep.v_over_h2 == 1.0);
}

TEST_CASE("injected alternating sequence keeps V <= 1") {
    const CallableSigns alt([](std::uint64_t n) { return n % 2 == 0 ? 1 : -1; });
    for (std::uint64_t h : {2ULL, 3ULL, 8ULL, 9ULL}) {
        const auto rep = variance(200, h, SamplePolicy::full_grid(), alt);
        CHECK(rep.V <= 1.0);
        if (h % 2 == 0) CHECK(rep.V == 0.0);
    }
}

TEST_CASE("variance edge cases and errors") {
    const auto& store = shared_store();
    const StoreSigns signs(store);
    CHECK(variance(500, 0, SamplePolicy::full_grid(), signs).V == 0.0);
    CHECK_THROWS_AS(variance(100, 200, SamplePolicy::full_grid(), signs), DomainError);
    CHECK_THROWS_AS(variance(0, 0, SamplePolicy::full_grid(), signs), DomainError);
    SamplePolicy unseeded;
    unseeded.kind = PolicyKind::Random;
    unseeded.count = 10;
    CHECK_THROWS_AS(variance(100, 5, unseeded, signs), ConfigError);
}

TEST_CASE("V <= h^2 on every emission") {
    const auto& store = shared_store();
    const StoreSigns signs(store);
    for (std::uint64_t h : {1ULL, 7ULL, 64ULL}) {
        const auto rep = variance(2'000, h, SamplePolicy::full_grid(), signs);
        CHECK(rep.V <= static_cast<double>(h) * static_cast<double>(h));
    }
}

TEST_CASE("strided policy matches per-sample oracle") {
    const auto& store = shared_store();
    const StoreSigns signs(store);
    const auto rep = variance(1'000, 10, SamplePolicy::strided(7), signs);
    uint128 expected = 0;
    std::uint64_t count = 0;
    for (std::uint64_t x = 1'000; x < 2'000; x += 7) {
        const std::int64_t s = store.window_sum(x, 10);
        expected += static_cast<uint128>(s * s);
        ++count;
    }
    CHECK(rep.num_samples == count);
    CHECK(rep.sum_squares == expected);
}

TEST_CASE("random policy is reproducible across runs and thread counts") {
    const auto& store = shared_store();
    const StoreSigns signs(store);
    const auto policy = SamplePolicy::random(5'000, 987654321);
    const auto a = variance(100'000, 50, policy, signs, 1);
    const auto b = variance(100'000, 50, policy, signs, 4);
    const auto c = variance(100'000, 50, policy, signs, 4);
    CHECK(a.sum_squares == b.sum_squares);
    CHECK(b.sum_squares == c.sum_squares);
    CHECK(a.V == b.V);
}

TEST_CASE("full-grid determinism across thread counts") {
    const auto& store = shared_store();
    const StoreSigns signs(store);
    const auto a = variance(100'000, 37, SamplePolicy::full_grid(), signs, 1);
    const auto b = variance(100'000, 37, SamplePolicy::full_grid(), signs, 8);
    CHECK(a.sum_squares == b.sum_squares);
}

TEST_CASE("h_scan basics") {
    const auto& store = shared_store();
    const StoreSigns signs(store);

    SUBCASE("h = 1 gives V = 1 exactly") {
        const std::uint64_t hs[] = {1};
        const auto result = h_scan(100'000, hs, signs, 2);
        REQUIRE(result.complete);
        REQUIRE(result.reports.size() == 1);
        CHECK(result.reports[0].V == 1.0);
        CHECK(result.reports[0].v_over_h == 1.0);
    }
    SUBCASE("two entries, values recomputed by the oracle") {
        const std::uint64_t hs[] = {10, 100};
        const auto result = h_scan(10'000, hs, signs, 2);
        REQUIRE(result.complete);
        REQUIRE(result.reports.size() == 2);
        for (const auto& rep : result.reports) {
            CHECK(rep.v_over_h > 0.0);
            CHECK(rep.v_over_h <= 10'000.0);
            const auto expected = oracle::variance_sumsq(
                10'000, rep.h, [&](std::uint64_t n) { return store.lambda(n); });
            REQUIRE(rep.sum_squares == expected);
        }
    }
    SUBCASE("h > X aborts with a flagged partial result") {
        const std::uint64_t hs[] = {10, 20'000};
        const auto result = h_scan(10'000, hs, signs);
        CHECK_FALSE(result.complete);
        CHECK(result.failed_index == 1);
        CHECK(result.reports.size() == 1);
        CHECK_FALSE(result.error.empty());
    }
    SUBCASE("non-ascending list is rejected") {
        const std::uint64_t hs[] = {10, 10};
        CHECK_THROWS_AS(h_scan(10'000, hs, signs), DomainError);
    }
}

TEST_CASE("predicted_bound formula") {
    SUBCASE("h at the threshold collapses to 2 H (log X)^6") {
        const std::uint64_t X = 100'000'000;
        const double H = threshold_H(X, 0.5);
        const auto h = static_cast<std::uint64_t>(H);  // integer h near H
        const double direct = predicted_bound(X, h, 1.0, 0.5);
        const double hh = static_cast<double>(h);
        const double expected =
            hh * hh * std::pow(std::log(static_cast<double>(X)), 6) * (1.0 / hh + 1.0 / H);
        CHECK(direct == doctest::Approx(expected).epsilon(1e-12));
        // At h = H exactly the expression is 2 H (log X)^6.
        const double at_H = H * H * std::pow(std::log(static_cast<double>(X)), 6) * (2.0 / H);
        CHECK(at_H == doctest::Approx(2.0 * H * std::pow(std::log(static_cast<double>(X)), 6)));
    }
    SUBCASE("C = 0 gives 0") {
        CHECK(predicted_bound(1'000, 10, 0.0, 0.5) == 0.0);
    }
    SUBCASE("direct evaluation at (10^8, 100, 1, 1/2)") {
        const double logX = std::log(1e8);
        const double H = std::exp(std::sqrt(0.5 * logX * std::log(logX)));
        const double expected = 1.0 * 100.0 * 100.0 * std::pow(logX, 6) * (0.01 + 1.0 / H);
        CHECK(predicted_bound(100'000'000, 100, 1.0, 0.5) ==
              doctest::Approx(expected).epsilon(1e-12));
    }
    SUBCASE("domain errors propagate from threshold_H") {
        CHECK_THROWS_AS(predicted_bound(10, 5, 1.0, 0.5), DomainError);
        CHECK_THROWS_AS(predicted_bound(1'000, 0, 1.0, 0.5), DomainError);
    }
}
