#pragma once

// Test-only oracles. Everything here recomputes from first principles,
// independent of the library paths under test.

#include <cstdint>
#include <vector>

namespace oracle {

// Omega(n) by plain trial division.
inline std::uint32_t big_omega(std::uint64_t n) {
    std::uint32_t count = 0;
    for (std::uint64_t p = 2; p * p <= n; ++p)
        while (n % p == 0) {
            n /= p;
            ++count;
        }
    if (n > 1) ++count;
    return count;
}

inline int lambda(std::uint64_t n) { return big_omega(n) % 2 == 0 ? 1 : -1; }

// L(x) by direct summation of trial-division lambdas.
inline std::int64_t lambda_prefix(std::uint64_t x) {
    std::int64_t s = 0;
    for (std::uint64_t n = 1; n <= x; ++n) s += lambda(n);
    return s;
}

inline std::uint64_t largest_prime_factor(std::uint64_t n) {
    std::uint64_t largest = 0;
    for (std::uint64_t p = 2; p * p <= n; ++p)
        while (n % p == 0) {
            n /= p;
            largest = p;
        }
    if (n > 1) largest = n;
    return largest;
}

// Double-loop sum of squared window sums over x in [X, 2X); no prefix sums,
// no sliding updates.
template <class Signs>
unsigned __int128 variance_sumsq(std::uint64_t X, std::uint64_t h, Signs&& sign) {
    unsigned __int128 acc = 0;
    for (std::uint64_t x = X; x < 2 * X; ++x) {
        std::int64_t s = 0;
        for (std::uint64_t n = x + 1; n <= x + h; ++n) s += sign(n);
        acc += static_cast<unsigned __int128>(s * s);
    }
    return acc;
}

// Composite trapezoid quadrature, the independent cross-check for Simpson.
template <class Fn>
double trapezoid(double a, double b, std::uint64_t n, Fn&& fn) {
    const double step = (b - a) / static_cast<double>(n);
    double acc = 0.5 * (fn(a) + fn(b));
    for (std::uint64_t i = 1; i < n; ++i) acc += fn(a + step * static_cast<double>(i));
    return acc * step;
}

// Plain (non-extrapolated) trapezoid march of the Dickman delay integral.
inline std::vector<double> dickman_march(double step, double u_max) {
    const auto per_unit = static_cast<std::size_t>(1.0 / step + 0.5);
    const auto n = static_cast<std::size_t>(u_max / step + 0.5);
    std::vector<double> rho(n + 1), cum(n + 1);
    for (std::size_t i = 0; i <= per_unit && i <= n; ++i) {
        rho[i] = 1.0;
        cum[i] = static_cast<double>(i) * step;
    }
    for (std::size_t i = per_unit + 1; i <= n; ++i) {
        const double u = static_cast<double>(i) * step;
        rho[i] = (cum[i - 1] + 0.5 * step * rho[i - 1] - cum[i - per_unit]) /
                 (u - 0.5 * step);
        cum[i] = cum[i - 1] + 0.5 * step * (rho[i - 1] + rho[i]);
    }
    return rho;
}

}  // namespace oracle
