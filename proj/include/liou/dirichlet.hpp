#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "liou/sieve.hpp"
#include "liou/variance.hpp"

namespace liou {

// Finite sum F(s) = sum a_n n^{-sigma-it} over n in [n_start, n_end].
struct DirichletPolynomial {
    std::uint64_t n_start = 1;
    std::uint64_t n_end = 1;
    std::vector<double> coefficients;  // a_n at index n - n_start

    std::uint64_t length() const { return coefficients.size(); }

    static DirichletPolynomial lambda_range(const LambdaStore& store,
                                            std::uint64_t n1, std::uint64_t n2);
    // a_p = 1 at primes in [n1, n2], 0 elsewhere.
    static DirichletPolynomial prime_indicator(std::uint64_t n1, std::uint64_t n2);
    static DirichletPolynomial from_coefficients(std::uint64_t n1, std::vector<double> a);
};

// sum a_n n^{-sigma} (cos(t log n) - i sin(t log n)); phases are reduced
// mod 2*pi before the trig calls.
std::complex<double> evaluate(const DirichletPolynomial& poly, double sigma, double t);

struct MeanSquareReport {
    double T1 = 0.0;
    double T2 = 0.0;
    double step = 0.0;       // step actually used (requested step, rounded down)
    std::uint64_t samples = 0;
    double integral = 0.0;   // Simpson estimate of Int |F(sigma+it)|^2 dt
    double diagonal = 0.0;   // (T2-T1) * sum |a_n|^2 n^{-2 sigma}
    double ratio = 0.0;      // integral / diagonal when diagonal > 0
};

// Composite Simpson with a Nyquist-style cap: refuses step > 0.5/log(n_end).
MeanSquareReport mean_square(const DirichletPolynomial& poly, double sigma,
                             double T1, double T2, double step, unsigned threads = 1);

// r = Int_0^T |F(it)|^2 dt / (T * sum a_n^2), sigma = 0.
// Caller-facing envelope: |r - 1| <= 10 * n_end / T (empirical constant).
double mvt_check(const DirichletPolynomial& poly, double T, unsigned threads = 1);

struct PrimeSumRow {
    double t = 0.0;
    double re = 0.0;
    double im = 0.0;
    double abs = 0.0;
    double ratio = 0.0;  // abs / log X
};

struct PrimeSumScanReport {
    std::uint64_t p_lo = 0;
    std::uint64_t p_hi = 0;
    std::uint64_t X = 0;
    double sigma = 0.0;            // 1/2 + 1/log X
    std::size_t prime_count = 0;
    bool empty = false;
    double max_ratio = 0.0;
    std::vector<PrimeSumRow> rows;
};

// Measurement of sum over primes p in [P, P_hi] of p^{-1/2 - 1/log X - it}
// relative to log X. No assertion; the implied constant is unspecified.
PrimeSumScanReport prime_sum_scan(std::uint64_t P, std::uint64_t X,
                                  std::span<const double> t_samples,
                                  unsigned threads = 1,
                                  std::optional<std::uint64_t> P_hi = std::nullopt);

// Geometric grid of `points` values spanning [lo, hi].
std::vector<double> geometric_grid(double lo, double hi, std::size_t points);

struct MaxAbsScanReport {
    std::vector<std::pair<double, double>> rows;  // (t, |F(t)|)
    double max_abs = 0.0;
};

// max_t |F(sigma + it)| over the grid; shared by the lambda scan and tests.
MaxAbsScanReport scan_max_abs(const DirichletPolynomial& poly, double sigma,
                              std::span<const double> t_grid, unsigned threads = 1);

// F = sum over [X, 2X] of lambda(n) n^{-1/2-it}.
MaxAbsScanReport lambda_poly_scan(const LambdaStore& store, std::uint64_t X,
                                  std::span<const double> t_grid, unsigned threads = 1);

struct LadderFit {
    std::vector<std::pair<std::uint64_t, double>> max_by_x;  // (X, max |F|)
    double slope = 0.0;      // least-squares slope of log max|F| vs log X
    double intercept = 0.0;
};

LadderFit lambda_scan_ladder(const LambdaStore& store,
                             std::span<const std::uint64_t> x_ladder,
                             std::span<const double> t_grid, unsigned threads = 1);

struct PerronResult {
    std::complex<double> value;  // (1/2 pi) Int_{-T}^{T} y^{kappa+i tau}/(kappa+i tau) d tau
    double indicator = 0.0;      // 0, 1/2, or 1
    double error = 0.0;          // |value - indicator|
    double bound = 0.0;          // y^kappa / max(1, T |log y|); y^kappa at y = 1
    double step = 0.0;
    std::uint64_t samples = 0;
};

PerronResult perron_truncated(double y, double kappa, double T, double step,
                              unsigned threads = 1);

// Step resolving both the e^{i tau log y} oscillation and the 1/(kappa+i tau)
// peak at tau = 0.
double default_perron_step(double y, double kappa);

struct PlancherelReport {
    std::uint64_t X = 0;
    std::uint64_t h = 0;
    double T_cap = 0.0;
    double lhs = 0.0;       // (1/X) Int_X^{2X} |S(x,h)/h|^2 dx, discretized
    double rhs_low = 0.0;   // (1/X) Int_0^{X/h} |F|^2 dt
    double rhs_high = 0.0;  // max over the dyadic ladder of (1/hT) Int_T^{2T} |F|^2
    double ratio = 0.0;     // lhs / (rhs_low + rhs_high)
    std::vector<std::pair<double, double>> ladder;  // (T, (1/hT) Int_T^{2T})
};

// The ladder starts at T = X/h and doubles while T <= T_cap; the true
// supremum over T > X/h is approximated by this finite ladder.
PlancherelReport plancherel_compare(const SignSource& signs,
                                    const DirichletPolynomial& poly,
                                    std::uint64_t X, std::uint64_t h, double T_cap,
                                    unsigned threads = 1);

PlancherelReport plancherel_compare(const LambdaStore& store, std::uint64_t X,
                                    std::uint64_t h, double T_cap, unsigned threads = 1);

}  // namespace liou
