#include "liou/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "liou/parallel.hpp"

namespace liou {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::uint64_t kQuadBlock = 4096;

// Nonzero terms only: log n and a_n n^{-sigma}.
struct Prepared {
    std::vector<double> log_n;
    std::vector<double> amp;
};

Prepared prepare(const DirichletPolynomial& poly, double sigma) {
    Prepared prep;
    prep.log_n.reserve(poly.coefficients.size());
    prep.amp.reserve(poly.coefficients.size());
    for (std::uint64_t i = 0; i < poly.coefficients.size(); ++i) {
        const double a = poly.coefficients[i];
        if (a == 0.0) continue;
        const double logn = std::log(static_cast<double>(poly.n_start + i));
        prep.log_n.push_back(logn);
        prep.amp.push_back(a * std::exp(-sigma * logn));
    }
    return prep;
}

std::complex<double> value_at(const Prepared& prep, double t) {
    double re = 0.0, im = 0.0;
    const std::size_t n = prep.log_n.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double phase = std::remainder(t * prep.log_n[i], kTwoPi);
        re += prep.amp[i] * std::cos(phase);
        im -= prep.amp[i] * std::sin(phase);
    }
    return {re, im};
}

double abs2_at(const Prepared& prep, double t) {
    const std::complex<double> v = value_at(prep, t);
    return v.real() * v.real() + v.imag() * v.imag();
}

std::uint64_t simpson_intervals(double T1, double T2, double step, std::uint64_t min_intervals) {
    auto n = static_cast<std::uint64_t>(std::ceil((T2 - T1) / step));
    n = std::max(n, min_intervals);
    if (n % 2) ++n;
    return n;
}

double simpson_weight(std::uint64_t i, std::uint64_t n) {
    if (i == 0 || i == n) return 1.0;
    return (i % 2) ? 4.0 : 2.0;
}

// Composite Simpson of fn over [T1, T2] with n_intervals panels. Partial sums
// are kept per fixed block and reduced in ascending order, so the result is
// independent of the thread count.
template <class Fn>
double simpson(double T1, double T2, std::uint64_t n_intervals, unsigned threads, Fn&& fn) {
    const double step = (T2 - T1) / static_cast<double>(n_intervals);
    const std::uint64_t samples = n_intervals + 1;
    std::vector<long double> partial(block_count(samples, kQuadBlock), 0.0L);
    parallel_blocks(samples, kQuadBlock, threads,
                    [&](std::size_t b, std::uint64_t lo, std::uint64_t hi) {
                        long double acc = 0.0L;
                        for (std::uint64_t i = lo; i < hi; ++i) {
                            const double t = T1 + step * static_cast<double>(i);
                            acc += static_cast<long double>(simpson_weight(i, n_intervals)) *
                                   static_cast<long double>(fn(t));
                        }
                        partial[b] = acc;
                    });
    long double sum = 0.0L;
    for (long double p : partial) sum += p;
    // (T2-T1) * sum / (3n) rather than step*sum/3: exact for constants.
    return static_cast<double>((static_cast<long double>(T2) - T1) * sum /
                               (3.0L * static_cast<long double>(n_intervals)));
}

double step_cap(std::uint64_t n_end) {
    return n_end > 1 ? 0.5 / std::log(static_cast<double>(n_end))
                     : std::numeric_limits<double>::infinity();
}

}  // namespace

DirichletPolynomial DirichletPolynomial::lambda_range(const LambdaStore& store,
                                                      std::uint64_t n1, std::uint64_t n2) {
    if (n1 == 0 || n2 < n1) throw DomainError("lambda_range: need 1 <= n1 <= n2");
    const auto view = store.signs(n1, n2 - n1 + 1);
    DirichletPolynomial poly;
    poly.n_start = n1;
    poly.n_end = n2;
    poly.coefficients.assign(view.begin(), view.end());
    return poly;
}

DirichletPolynomial DirichletPolynomial::prime_indicator(std::uint64_t n1, std::uint64_t n2) {
    if (n1 == 0 || n2 < n1) throw DomainError("prime_indicator: need 1 <= n1 <= n2");
    DirichletPolynomial poly;
    poly.n_start = n1;
    poly.n_end = n2;
    poly.coefficients.assign(n2 - n1 + 1, 0.0);
    for (std::uint64_t p : primes_upto(n2))
        if (p >= n1) poly.coefficients[p - n1] = 1.0;
    return poly;
}

DirichletPolynomial DirichletPolynomial::from_coefficients(std::uint64_t n1,
                                                           std::vector<double> a) {
    if (n1 == 0 || a.empty()) throw DomainError("from_coefficients: need n1 >= 1, non-empty a");
    DirichletPolynomial poly;
    poly.n_start = n1;
    poly.n_end = n1 + a.size() - 1;
    poly.coefficients = std::move(a);
    return poly;
}

std::complex<double> evaluate(const DirichletPolynomial& poly, double sigma, double t) {
    return value_at(prepare(poly, sigma), t);
}

MeanSquareReport mean_square(const DirichletPolynomial& poly, double sigma,
                             double T1, double T2, double step, unsigned threads) {
    if (!(T1 < T2)) throw DomainError("mean_square: need T1 < T2");
    if (!(step > 0)) throw DomainError("mean_square: need step > 0");
    if (step > step_cap(poly.n_end))
        throw DomainError("mean_square: undersampled oscillation (step " +
                          std::to_string(step) + " exceeds 0.5/log(n_end) = " +
                          std::to_string(step_cap(poly.n_end)) + ")");

    const Prepared prep = prepare(poly, sigma);
    const std::uint64_t n = simpson_intervals(T1, T2, step, 2);

    MeanSquareReport rep;
    rep.T1 = T1;
    rep.T2 = T2;
    rep.step = (T2 - T1) / static_cast<double>(n);
    rep.samples = n + 1;
    rep.integral = simpson(T1, T2, n, threads, [&](double t) { return abs2_at(prep, t); });

    long double diag = 0.0L;
    for (std::size_t i = 0; i < prep.amp.size(); ++i)
        diag += static_cast<long double>(prep.amp[i]) * prep.amp[i];
    rep.diagonal = static_cast<double>((static_cast<long double>(T2) - T1) * diag);
    rep.ratio = rep.diagonal > 0 ? rep.integral / rep.diagonal : 0.0;
    return rep;
}

double mvt_check(const DirichletPolynomial& poly, double T, unsigned threads) {
    if (!(T > 0)) throw DomainError("mvt_check: need T > 0");
    long double sumsq = 0.0L;
    for (double a : poly.coefficients) sumsq += static_cast<long double>(a) * a;
    if (sumsq == 0.0L) throw DomainError("mvt_check: zero polynomial (degenerate input)");

    const double step = std::min(0.8 * step_cap(poly.n_end), T / 16.0);
    const MeanSquareReport rep = mean_square(poly, 0.0, 0.0, T, step, threads);
    return rep.integral / static_cast<double>(static_cast<long double>(T) * sumsq);
}

std::vector<double> geometric_grid(double lo, double hi, std::size_t points) {
    if (!(lo > 0) || !(hi >= lo)) throw DomainError("geometric_grid: need 0 < lo <= hi");
    if (points == 0) throw ConfigError("geometric_grid: empty grid");
    std::vector<double> grid;
    grid.reserve(points);
    if (points == 1) {
        grid.push_back(lo);
        return grid;
    }
    const double ratio = std::log(hi / lo) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i)
        grid.push_back(lo * std::exp(ratio * static_cast<double>(i)));
    return grid;
}

PrimeSumScanReport prime_sum_scan(std::uint64_t P, std::uint64_t X,
                                  std::span<const double> t_samples, unsigned threads,
                                  std::optional<std::uint64_t> P_hi) {
    if (P == 0) throw DomainError("prime_sum_scan: P must be >= 1");
    if (X < 3) throw DomainError("prime_sum_scan: X must be >= 3");
    if (P > X) throw DomainError("prime_sum_scan: P must not exceed X");
    if (t_samples.empty()) throw ConfigError("prime_sum_scan: empty t grid");
    const double sqrtX = std::sqrt(static_cast<double>(X));
    for (double t : t_samples)
        if (std::fabs(t) < sqrtX * (1.0 - 1e-12) ||
            std::fabs(t) > static_cast<double>(X) * (1.0 + 1e-12))
            throw DomainError("prime_sum_scan: |t| must lie in [sqrt(X), X]");

    PrimeSumScanReport rep;
    rep.p_lo = P;
    rep.p_hi = P_hi.value_or(2 * P);
    if (rep.p_hi < rep.p_lo) throw DomainError("prime_sum_scan: empty prime window");
    rep.X = X;
    const double logX = std::log(static_cast<double>(X));
    rep.sigma = 0.5 + 1.0 / logX;

    Prepared prep;
    for (std::uint64_t p : primes_upto(rep.p_hi)) {
        if (p < rep.p_lo) continue;
        const double logp = std::log(static_cast<double>(p));
        prep.log_n.push_back(logp);
        prep.amp.push_back(std::exp(-rep.sigma * logp));
    }
    rep.prime_count = prep.amp.size();
    rep.empty = prep.amp.empty();

    rep.rows.resize(t_samples.size());
    parallel_blocks(t_samples.size(), 64, threads,
                    [&](std::size_t, std::uint64_t lo, std::uint64_t hi) {
                        for (std::uint64_t i = lo; i < hi; ++i) {
                            const double t = t_samples[i];
                            const std::complex<double> v = value_at(prep, t);
                            rep.rows[i] = {t, v.real(), v.imag(), std::abs(v),
                                           std::abs(v) / logX};
                        }
                    });
    for (const auto& row : rep.rows) rep.max_ratio = std::max(rep.max_ratio, row.ratio);
    return rep;
}

MaxAbsScanReport scan_max_abs(const DirichletPolynomial& poly, double sigma,
                              std::span<const double> t_grid, unsigned threads) {
    if (t_grid.empty()) throw ConfigError("scan_max_abs: empty t grid");
    const Prepared prep = prepare(poly, sigma);
    MaxAbsScanReport rep;
    rep.rows.resize(t_grid.size());
    parallel_blocks(t_grid.size(), 64, threads,
                    [&](std::size_t, std::uint64_t lo, std::uint64_t hi) {
                        for (std::uint64_t i = lo; i < hi; ++i) {
                            const double t = t_grid[i];
                            rep.rows[i] = {t, std::abs(value_at(prep, t))};
                        }
                    });
    for (const auto& [t, a] : rep.rows) rep.max_abs = std::max(rep.max_abs, a);
    return rep;
}

MaxAbsScanReport lambda_poly_scan(const LambdaStore& store, std::uint64_t X,
                                  std::span<const double> t_grid, unsigned threads) {
    if (X == 0) throw DomainError("lambda_poly_scan: X must be >= 1");
    return scan_max_abs(DirichletPolynomial::lambda_range(store, X, 2 * X), 0.5,
                        t_grid, threads);
}

LadderFit lambda_scan_ladder(const LambdaStore& store,
                             std::span<const std::uint64_t> x_ladder,
                             std::span<const double> t_grid, unsigned threads) {
    if (x_ladder.empty()) throw ConfigError("lambda_scan_ladder: empty X ladder");
    LadderFit fit;
    for (std::uint64_t X : x_ladder) {
        const auto rep = lambda_poly_scan(store, X, t_grid, threads);
        fit.max_by_x.emplace_back(X, rep.max_abs);
    }
    // Least squares on (log X, log max|F|); points with max = 0 are skipped.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (const auto& [X, m] : fit.max_by_x) {
        if (m <= 0) continue;
        const double lx = std::log(static_cast<double>(X));
        const double ly = std::log(m);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    if (n >= 2) {
        const double denom = static_cast<double>(n) * sxx - sx * sx;
        if (denom != 0) {
            fit.slope = (static_cast<double>(n) * sxy - sx * sy) / denom;
            fit.intercept = (sy - fit.slope * sx) / static_cast<double>(n);
        }
    }
    return fit;
}

double default_perron_step(double y, double kappa) {
    double step = std::min(0.1, kappa / 50.0);
    if (y != 1.0) step = std::min(step, 0.1 / std::fabs(std::log(y)));
    return step;
}

PerronResult perron_truncated(double y, double kappa, double T, double step,
                              unsigned threads) {
    if (!(y > 0)) throw DomainError("perron_truncated: need y > 0");
    if (!(kappa > 0)) throw DomainError("perron_truncated: need kappa > 0");
    if (!(T > 0)) throw DomainError("perron_truncated: need T > 0");
    if (!(step > 0)) throw DomainError("perron_truncated: need step > 0");
    const double logy = std::log(y);
    if (y != 1.0 && step > std::min(0.1, 0.1 / std::fabs(logy)))
        throw DomainError("perron_truncated: step too coarse for the y^{i tau} oscillation");

    const std::uint64_t n = simpson_intervals(-T, T, step, 4);
    const double used = 2.0 * T / static_cast<double>(n);
    const double ykappa = std::pow(y, kappa);

    // Complex Simpson over tau in [-T, T] of y^{kappa+i tau} / (kappa+i tau).
    const std::uint64_t samples = n + 1;
    std::vector<long double> part_re(block_count(samples, kQuadBlock), 0.0L);
    std::vector<long double> part_im(block_count(samples, kQuadBlock), 0.0L);
    parallel_blocks(samples, kQuadBlock, threads,
                    [&](std::size_t b, std::uint64_t lo, std::uint64_t hi) {
                        long double re = 0.0L, im = 0.0L;
                        for (std::uint64_t i = lo; i < hi; ++i) {
                            const double tau = -T + used * static_cast<double>(i);
                            const double w = simpson_weight(i, n);
                            const double phase = std::remainder(tau * logy, kTwoPi);
                            const std::complex<double> num{ykappa * std::cos(phase),
                                                           ykappa * std::sin(phase)};
                            const std::complex<double> val = num / std::complex<double>{kappa, tau};
                            re += static_cast<long double>(w) * val.real();
                            im += static_cast<long double>(w) * val.imag();
                        }
                        part_re[b] = re;
                        part_im[b] = im;
                    });
    long double sre = 0.0L, sim = 0.0L;
    for (std::size_t b = 0; b < part_re.size(); ++b) {
        sre += part_re[b];
        sim += part_im[b];
    }
    const long double scale =
        2.0L * static_cast<long double>(T) /
        (3.0L * static_cast<long double>(n) * 2.0L * std::numbers::pi_v<long double>);

    PerronResult res;
    res.value = {static_cast<double>(sre * scale), static_cast<double>(sim * scale)};
    res.indicator = y > 1.0 ? 1.0 : (y == 1.0 ? 0.5 : 0.0);
    res.error = std::abs(res.value - std::complex<double>{res.indicator, 0.0});
    res.bound = y == 1.0 ? ykappa : ykappa / std::max(1.0, T * std::fabs(logy));
    res.step = used;
    res.samples = samples;
    return res;
}

namespace {

void plancherel_guards(std::uint64_t X, std::uint64_t h, double T_cap) {
    if (X == 0 || X > 1'000'000)
        throw DomainError("plancherel_compare: X must lie in [1, 10^6] (desk-scale guard)");
    if (h == 0 || h > X) throw DomainError("plancherel_compare: need 1 <= h <= X");
    if (T_cap < static_cast<double>(X) / static_cast<double>(h))
        throw DomainError("plancherel_compare: T_cap must be at least X/h");
}

}  // namespace

PlancherelReport plancherel_compare(const SignSource& signs,
                                    const DirichletPolynomial& poly,
                                    std::uint64_t X, std::uint64_t h, double T_cap,
                                    unsigned threads) {
    plancherel_guards(X, h, T_cap);
    const double T0 = static_cast<double>(X) / static_cast<double>(h);

    PlancherelReport rep;
    rep.X = X;
    rep.h = h;
    rep.T_cap = T_cap;

    // Left side, discretized: average over x in [X, 2X) of (S(x,h)/h)^2.
    const VarianceReport var = variance(X, h, SamplePolicy::full_grid(), signs, threads);
    rep.lhs = var.v_over_h2;

    const Prepared prep = prepare(poly, 0.5);
    const double step = 0.9 * step_cap(poly.n_end);
    auto integrate = [&](double a, double b) {
        const std::uint64_t n = simpson_intervals(a, b, step, 16);
        return simpson(a, b, n, threads, [&](double t) { return abs2_at(prep, t); });
    };

    rep.rhs_low = integrate(0.0, T0) / static_cast<double>(X);
    for (double T = T0; T <= T_cap; T *= 2.0) {
        const double val = integrate(T, 2.0 * T) / (static_cast<double>(h) * T);
        rep.ladder.emplace_back(T, val);
        rep.rhs_high = std::max(rep.rhs_high, val);
    }
    const double denom = rep.rhs_low + rep.rhs_high;
    rep.ratio = denom > 0 ? rep.lhs / denom : 0.0;
    return rep;
}

PlancherelReport plancherel_compare(const LambdaStore& store, std::uint64_t X,
                                    std::uint64_t h, double T_cap, unsigned threads) {
    plancherel_guards(X, h, T_cap);
    const StoreSigns signs(store);
    const auto poly = DirichletPolynomial::lambda_range(store, X, 4 * X);
    return plancherel_compare(signs, poly, X, h, T_cap, threads);
}

}  // namespace liou
