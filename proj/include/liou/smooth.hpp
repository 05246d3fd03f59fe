#pragma once

#include <cstdint>
#include <vector>

#include "liou/errors.hpp"

namespace liou {

inline constexpr std::uint64_t kPsiSieveMax = 1'000'000'000ULL;
inline constexpr std::uint64_t kPsiDfsMaxX = 1'000'000'000'000ULL;
inline constexpr std::uint64_t kPsiDfsMaxY = 1'000ULL;

// Exact Psi(x, y) = #{ n <= x : every prime factor of n is <= y }.
// Dispatches between the two methods below; out-of-guard requests name the
// feasible method in the error.
std::uint64_t psi_exact(std::uint64_t x, std::uint64_t y);

// Segmented divide-out sieve; x <= kPsiSieveMax.
std::uint64_t psi_exact_sieve(std::uint64_t x, std::uint64_t y);

// Depth-first enumeration over prime powers; x <= kPsiDfsMaxX, y <= kPsiDfsMaxY.
std::uint64_t psi_exact_dfs(std::uint64_t x, std::uint64_t y);

// flags[n-1] = 1 iff n is y-smooth, for n in [1, limit]. Bulk cross-check aid.
std::vector<std::uint8_t> smooth_flags(std::uint64_t limit, std::uint64_t y);

// All y-smooth n <= limit, ascending, via the DFS route.
std::vector<std::uint64_t> smooth_numbers_dfs(std::uint64_t limit, std::uint64_t y);

// Dickman rho marched on the delay integral rho(u) = (1/u) * Int_{u-1}^{u} rho,
// with implicit trapezoid panels on a fixed grid plus Richardson extrapolation
// of a half-step march. Queries interpolate cubically inside unit intervals
// (rho has derivative kinks only at integers).
class DickmanRho {
public:
    explicit DickmanRho(double step = 1e-3, double u_max = 50.0);
    double operator()(double u) const;
    double u_max() const { return u_max_; }

private:
    double step_;
    double u_max_;
    std::vector<double> values_;  // extrapolated, on the coarse grid
};

// Shared table, built once. Domain error for u < 0; guard error above 50.
double dickman_rho(double u);

struct SmoothCountRecord {
    std::uint64_t x = 0;
    std::uint64_t y = 0;
    std::uint64_t psi_exact = 0;
    double u = 0.0;                // log x / log y
    double rho_estimate = 0.0;     // x * rho(u)
    double u_pow_estimate = 0.0;   // x * u^{-u}
    double ratio_rho = 0.0;
    double ratio_upow = 0.0;
};

// Requires y >= 2 so that u is defined.
SmoothCountRecord psi_estimate(std::uint64_t x, std::uint64_t y);

// H_c(X) = exp(sqrt(c * log X * loglog X)); X >= 16, 0 < c <= 1.
double threshold_H(std::uint64_t X, double c);

struct DensityReport {
    std::uint64_t X = 0;
    std::uint64_t h = 0;
    std::uint64_t psi = 0;       // Psi(4X, h)
    double density = 0.0;        // Psi(4X, h) * h / (4X)
    double H_half = 0.0;         // threshold_H(X, 1/2)
    bool within_threshold = true;  // h <= H_half; warning-level flag
    bool out_of_range = false;     // h >= 4X, density degenerates to ~h
};

DensityReport smooth_density_check(std::uint64_t X, std::uint64_t h);

}  // namespace liou
