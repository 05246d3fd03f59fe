// liou — batch CLI over the Liouville short-interval toolkit.
//
// Every subcommand maps 1:1 onto a library operation and emits one CSV or
// JSON report with 12-significant-digit reals. Exit codes: 0 success,
// 1 check failure, 2 usage error, 3 I/O error.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "liou/dirichlet.hpp"
#include "liou/identities.hpp"
#include "liou/report.hpp"
#include "liou/sieve.hpp"
#include "liou/smooth.hpp"
#include "liou/storage.hpp"
#include "liou/variance.hpp"

namespace {

struct RunConfig {
    std::string format = "csv";
    std::string out = "-";
    unsigned threads = 1;
    std::string cache_dir;
    std::optional<std::uint64_t> seed;
};

using Params = std::vector<std::pair<std::string, std::string>>;

void emit(const RunConfig& cfg, const std::string& command, const Params& params,
          const liou::Table& table) {
    const std::string text = cfg.format == "json"
                                 ? liou::to_json(command, params, table)
                                 : liou::to_csv(table);
    if (cfg.out == "-" || cfg.out.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary | std::ios::trunc);
    if (!f) throw liou::IoError("cannot open output file " + cfg.out);
    f.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!f) throw liou::IoError("short write to " + cfg.out);
}

liou::LambdaStore make_store(const RunConfig& cfg, std::uint64_t coverage) {
    liou::StoreConfig sc;
    sc.threads = cfg.threads;
    sc.cache_dir = cfg.cache_dir;
    if (coverage > sc.max_coverage) sc.max_coverage = coverage;
    liou::LambdaStore store(sc);
    store.ensure(coverage);
    return store;
}

std::vector<std::uint64_t> parse_u64_list(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t next = text.find(',', pos);
        if (next == std::string::npos) next = text.size();
        out.push_back(std::stoull(text.substr(pos, next - pos)));
        pos = next + 1;
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t next = text.find(',', pos);
        if (next == std::string::npos) next = text.size();
        out.push_back(std::stod(text.substr(pos, next - pos)));
        pos = next + 1;
    }
    return out;
}

std::string u64s(std::uint64_t v) { return std::to_string(v); }

void add_variance_row(liou::Table& t, const liou::VarianceReport& rep, bool with_policy) {
    if (with_policy)
        t.add_row(rep.X, rep.h, rep.sample_policy, rep.num_samples, rep.V, rep.v_over_h,
                  rep.v_over_h2, rep.v_over_h_log6);
    else
        t.add_row(rep.X, rep.h, rep.num_samples, rep.V, rep.v_over_h, rep.v_over_h2,
                  rep.v_over_h_log6);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical toolkit for Liouville statistics in short intervals"};
    app.require_subcommand(1);
    app.fallthrough();
    // --h is a mathematical parameter throughout; keep help on --help only.
    app.set_help_flag("--help", "Print help and exit");

    RunConfig cfg;
    app.add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_option("--out", cfg.out, "Output path, '-' for stdout")->capture_default_str();
    app.add_option("--threads", cfg.threads, "Worker pool size")
        ->check(CLI::Range(1u, 256u))
        ->capture_default_str();
    app.add_option("--cache-dir", cfg.cache_dir, "Segment cache directory")
        ->envname("LIOU_CACHE");
    std::uint64_t seed_value = 0;
    auto* seed_opt = app.add_option("--seed", seed_value, "Seed for sampling policies");

    // ---- sieve ----
    auto* sc_sieve = app.add_subcommand("sieve", "Liouville values and prefix sums over a range");
    std::uint64_t sv_start = 1, sv_len = 0;
    sc_sieve->add_option("--start", sv_start, "First n")->required();
    sc_sieve->add_option("--len", sv_len, "Range length")->required();

    // ---- variance ----
    auto* sc_var = app.add_subcommand("variance", "Short-interval variance V(X,h)");
    std::uint64_t va_X = 0, va_h = 0, va_stride = 1, va_samples = 0;
    std::string va_policy = "full";
    sc_var->add_option("--X", va_X)->required();
    sc_var->add_option("--h", va_h)->required();
    sc_var->add_option("--policy", va_policy)->check(CLI::IsMember({"full", "strided", "random"}));
    sc_var->add_option("--stride", va_stride);
    sc_var->add_option("--samples", va_samples);

    // ---- scan-h ----
    auto* sc_scan = app.add_subcommand("scan-h", "Variance reports over an ascending h list");
    std::uint64_t sh_X = 0;
    std::string sh_list;
    sc_scan->add_option("--X", sh_X)->required();
    sc_scan->add_option("--h-list", sh_list, "Comma-separated ascending h values")->required();

    // ---- meansq ----
    auto* sc_meansq = app.add_subcommand("meansq", "Mean square of a Dirichlet polynomial");
    std::uint64_t ms_n1 = 1, ms_n2 = 1;
    std::string ms_coeffs = "lambda";
    double ms_sigma = 0.0, ms_T1 = 0.0, ms_T2 = 0.0, ms_step = 0.0;
    sc_meansq->add_option("--n-start", ms_n1)->required();
    sc_meansq->add_option("--n-end", ms_n2)->required();
    sc_meansq->add_option("--coeffs", ms_coeffs)->check(CLI::IsMember({"lambda", "ones", "primes"}));
    sc_meansq->add_option("--sigma", ms_sigma)->capture_default_str();
    sc_meansq->add_option("--T1", ms_T1)->required();
    sc_meansq->add_option("--T2", ms_T2)->required();
    sc_meansq->add_option("--step", ms_step)->required();

    // ---- mvt-check ----
    auto* sc_mvt = app.add_subcommand("mvt-check", "Mean value theorem diagonal ratio");
    std::uint64_t mv_N = 0;
    double mv_T = 0.0;
    std::string mv_coeffs = "random";
    sc_mvt->add_option("--N", mv_N)->required();
    sc_mvt->add_option("--T", mv_T)->required();
    sc_mvt->add_option("--coeffs", mv_coeffs)->check(CLI::IsMember({"random", "ones"}));

    // ---- primesum-scan ----
    auto* sc_psum = app.add_subcommand("primesum-scan", "Prime-sum pointwise scan");
    std::uint64_t ps_P = 0, ps_X = 0, ps_points = 64;
    std::optional<std::uint64_t> ps_Phi;
    std::string ps_grid;
    sc_psum->add_option("--P", ps_P)->required();
    sc_psum->add_option("--X", ps_X)->required();
    sc_psum->add_option("--P-hi", ps_Phi, "Upper end of the prime window (default 2P)");
    sc_psum->add_option("--points", ps_points, "Geometric grid size in [sqrt(X), X]");
    sc_psum->add_option("--t-grid", ps_grid, "Explicit comma-separated t values");

    // ---- lambda-scan ----
    auto* sc_lscan = app.add_subcommand("lambda-scan", "Pointwise scan of the lambda polynomial");
    std::uint64_t ls_X = 0, ls_points = 64;
    std::string ls_grid, ls_ladder;
    double ls_tmax = 0.0;
    sc_lscan->add_option("--X", ls_X)->required();
    sc_lscan->add_option("--points", ls_points);
    sc_lscan->add_option("--t-max", ls_tmax, "Grid upper end (default X)");
    sc_lscan->add_option("--t-grid", ls_grid, "Explicit comma-separated t values");
    sc_lscan->add_option("--ladder", ls_ladder, "Comma-separated X ladder for the slope fit");

    // ---- plancherel ----
    auto* sc_plan = app.add_subcommand("plancherel", "Variance vs mean-square comparison");
    std::uint64_t pl_X = 0, pl_h = 0;
    double pl_Tcap = 0.0;
    sc_plan->add_option("--X", pl_X)->required();
    sc_plan->add_option("--h", pl_h)->required();
    sc_plan->add_option("--T-cap", pl_Tcap, "Dyadic ladder cap (default 4X/h)");

    // ---- perron-check ----
    auto* sc_perron = app.add_subcommand("perron-check", "Truncated Perron quadrature");
    double pr_y = 0.0, pr_kappa = 0.0, pr_T = 0.0, pr_step = 0.0;
    sc_perron->add_option("--y", pr_y)->required();
    sc_perron->add_option("--kappa", pr_kappa)->required();
    sc_perron->add_option("--T", pr_T)->required();
    sc_perron->add_option("--step", pr_step, "Quadrature step (default resolves y and kappa)");

    // ---- decompose-check ----
    auto* sc_dec = app.add_subcommand("decompose-check", "Exact rough-integer identity");
    std::uint64_t dc_X = 0, dc_h = 0;
    bool dc_misprint = false;
    sc_dec->add_option("--X", dc_X)->required();
    sc_dec->add_option("--h", dc_h)->required();
    sc_dec->add_flag("--misprint", dc_misprint, "Use the misprinted denominator (negative control)");

    // ---- rearrange-check ----
    auto* sc_rear = app.add_subcommand("rearrange-check", "Coefficient-map rearrangement identity");
    std::uint64_t rc_X = 0, rc_h = 0;
    sc_rear->add_option("--X", rc_X)->required();
    sc_rear->add_option("--h", rc_h)->required();

    // ---- split-check ----
    auto* sc_split = app.add_subcommand("split-check", "Smooth/rough partition check");
    std::uint64_t sp_X = 0, sp_h = 0;
    sc_split->add_option("--X", sp_X)->required();
    sc_split->add_option("--h", sp_h)->required();

    // ---- psi ----
    auto* sc_psi = app.add_subcommand("psi", "Smooth-number count with estimates");
    std::uint64_t psi_x = 0, psi_y = 0;
    std::string psi_method = "auto";
    sc_psi->add_option("--x", psi_x)->required();
    sc_psi->add_option("--y", psi_y)->required();
    sc_psi->add_option("--method", psi_method)->check(CLI::IsMember({"auto", "sieve", "dfs"}));

    // ---- rho ----
    auto* sc_rho = app.add_subcommand("rho", "Dickman rho values");
    std::string rho_list;
    sc_rho->add_option("--u-list", rho_list, "Comma-separated u values")->required();

    // ---- threshold ----
    auto* sc_thr = app.add_subcommand("threshold", "Window-length threshold H_c(X)");
    std::uint64_t th_X = 0;
    double th_c = 0.5;
    sc_thr->add_option("--X", th_X)->required();
    sc_thr->add_option("--c", th_c)->capture_default_str();

    // ---- density-check ----
    auto* sc_den = app.add_subcommand("density-check", "Smooth-density envelope check");
    std::uint64_t de_X = 0, de_h = 0;
    sc_den->add_option("--X", de_X)->required();
    sc_den->add_option("--h", de_h)->required();

    // ---- corollary-bound ----
    auto* sc_cor = app.add_subcommand("corollary-bound", "Predicted per-sample variance bound");
    std::uint64_t cb_X = 0, cb_h = 0;
    double cb_C = 1.0, cb_c = 0.5;
    sc_cor->add_option("--X", cb_X)->required();
    sc_cor->add_option("--h", cb_h)->required();
    sc_cor->add_option("--C", cb_C)->capture_default_str();
    sc_cor->add_option("--c", cb_c)->capture_default_str();

    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->set_help_flag("--help", "Print help and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    if (seed_opt->count() > 0) cfg.seed = seed_value;

    try {
        if (*sc_sieve) {
            if (sv_len == 0) throw liou::DomainError("sieve: --len must be >= 1");
            if (sv_start == 0) throw liou::DomainError("sieve: --start must be >= 1");
            if (sv_len - 1 > std::numeric_limits<std::uint64_t>::max() - sv_start)
                throw liou::RangeError("sieve: start + len overflows 64 bits");
            const auto store = make_store(cfg, sv_start + sv_len - 1);
            liou::Table t;
            t.columns = {"n", "lambda", "L"};
            for (std::uint64_t n = sv_start; n < sv_start + sv_len; ++n)
                t.add_row(n, static_cast<std::int64_t>(store.lambda(n)), store.prefix(n));
            emit(cfg, "sieve", {{"start", u64s(sv_start)}, {"len", u64s(sv_len)}}, t);
            return 0;
        }

        if (*sc_var) {
            liou::SamplePolicy policy = liou::SamplePolicy::full_grid();
            if (va_policy == "strided") policy = liou::SamplePolicy::strided(va_stride);
            if (va_policy == "random") {
                if (!cfg.seed) throw liou::ConfigError("variance: random policy needs --seed");
                policy = liou::SamplePolicy::random(va_samples, *cfg.seed);
            }
            const auto store = make_store(cfg, 2 * va_X + va_h);
            const liou::StoreSigns signs(store);
            const auto rep = liou::variance(va_X, va_h, policy, signs, cfg.threads);
            liou::Table t;
            t.columns = {"X", "h", "policy", "num_samples", "V", "V_over_h", "V_over_h2",
                         "V_over_h_log6"};
            add_variance_row(t, rep, true);
            emit(cfg, "variance",
                 {{"X", u64s(va_X)}, {"h", u64s(va_h)}, {"policy", rep.sample_policy}}, t);
            return 0;
        }

        if (*sc_scan) {
            const auto hs = parse_u64_list(sh_list);
            if (hs.empty()) throw liou::ConfigError("scan-h: empty h list");
            for (std::size_t i = 1; i < hs.size(); ++i)
                if (hs[i] <= hs[i - 1])
                    throw liou::DomainError("scan-h: h list must be strictly ascending");
            const std::uint64_t hmax = hs.back();
            if (hmax > sh_X) throw liou::DomainError("scan-h: max h exceeds X");
            const auto store = make_store(cfg, 2 * sh_X + hmax);
            const liou::StoreSigns signs(store);
            const auto result = liou::h_scan(sh_X, hs, signs, cfg.threads);
            liou::Table t;
            t.columns = {"X", "h", "num_samples", "V", "V_over_h", "V_over_h2", "V_over_h_log6"};
            for (const auto& rep : result.reports) add_variance_row(t, rep, false);
            emit(cfg, "scan-h", {{"X", u64s(sh_X)}, {"h_list", sh_list}}, t);
            if (!result.complete) {
                std::cerr << "scan-h: aborted at h = " << hs[result.failed_index]
                          << " with partial results: " << result.error << "\n";
                return 2;
            }
            return 0;
        }

        if (*sc_meansq) {
            liou::DirichletPolynomial poly;
            if (ms_coeffs == "lambda") {
                const auto store = make_store(cfg, ms_n2);
                poly = liou::DirichletPolynomial::lambda_range(store, ms_n1, ms_n2);
            } else if (ms_coeffs == "primes") {
                poly = liou::DirichletPolynomial::prime_indicator(ms_n1, ms_n2);
            } else {
                poly = liou::DirichletPolynomial::from_coefficients(
                    ms_n1, std::vector<double>(ms_n2 - ms_n1 + 1, 1.0));
            }
            const auto rep = liou::mean_square(poly, ms_sigma, ms_T1, ms_T2, ms_step, cfg.threads);
            liou::Table t;
            t.columns = {"sigma", "T1", "T2", "step", "samples", "integral", "diagonal", "ratio"};
            t.add_row(ms_sigma, rep.T1, rep.T2, rep.step, rep.samples, rep.integral,
                      rep.diagonal, rep.ratio);
            emit(cfg, "meansq",
                 {{"n_start", u64s(ms_n1)}, {"n_end", u64s(ms_n2)}, {"coeffs", ms_coeffs}}, t);
            return 0;
        }

        if (*sc_mvt) {
            if (mv_N == 0) throw liou::DomainError("mvt-check: N must be >= 1");
            std::vector<double> coeffs(mv_N, 1.0);
            if (mv_coeffs == "random") {
                if (!cfg.seed) throw liou::ConfigError("mvt-check: random coefficients need --seed");
                std::mt19937_64 rng(*cfg.seed);
                for (auto& a : coeffs) a = (rng() & 1) ? 1.0 : -1.0;
            }
            const auto poly = liou::DirichletPolynomial::from_coefficients(1, std::move(coeffs));
            const double r = liou::mvt_check(poly, mv_T, cfg.threads);
            const double envelope = 10.0 * static_cast<double>(mv_N) / mv_T;
            liou::Table t;
            t.columns = {"N", "T", "r", "abs_r_minus_1", "envelope"};
            t.add_row(mv_N, mv_T, r, std::fabs(r - 1.0), envelope);
            emit(cfg, "mvt-check", {{"N", u64s(mv_N)}, {"coeffs", mv_coeffs}}, t);
            return std::fabs(r - 1.0) <= envelope ? 0 : 1;
        }

        if (*sc_psum) {
            std::vector<double> grid;
            if (!ps_grid.empty())
                grid = parse_double_list(ps_grid);
            else
                grid = liou::geometric_grid(std::sqrt(static_cast<double>(ps_X)),
                                            static_cast<double>(ps_X), ps_points);
            const auto rep = liou::prime_sum_scan(ps_P, ps_X, grid, cfg.threads, ps_Phi);
            liou::Table t;
            t.columns = {"t", "re", "im", "abs", "abs_over_logX"};
            for (const auto& row : rep.rows)
                t.add_row(row.t, row.re, row.im, row.abs, row.ratio);
            emit(cfg, "primesum-scan",
                 {{"P", u64s(rep.p_lo)},
                  {"P_hi", u64s(rep.p_hi)},
                  {"X", u64s(ps_X)},
                  {"primes", u64s(rep.prime_count)},
                  {"empty", rep.empty ? "1" : "0"},
                  {"max_ratio", liou::fmt_real(rep.max_ratio)}},
                 t);
            if (rep.empty) std::cerr << "primesum-scan: empty prime window, max = 0\n";
            return 0;
        }

        if (*sc_lscan) {
            std::vector<double> grid;
            if (!ls_grid.empty())
                grid = parse_double_list(ls_grid);
            else {
                const double tmax = ls_tmax > 0 ? ls_tmax : static_cast<double>(ls_X);
                if (ls_points == 0) throw liou::ConfigError("lambda-scan: --points must be >= 1");
                grid.reserve(ls_points);
                for (std::uint64_t i = 0; i < ls_points; ++i)
                    grid.push_back(tmax * static_cast<double>(i) /
                                   static_cast<double>(std::max<std::uint64_t>(1, ls_points - 1)));
            }
            if (!ls_ladder.empty()) {
                const auto ladder = parse_u64_list(ls_ladder);
                const std::uint64_t xmax = *std::max_element(ladder.begin(), ladder.end());
                const auto store = make_store(cfg, 2 * xmax);
                const auto fit = liou::lambda_scan_ladder(store, ladder, grid, cfg.threads);
                liou::Table t;
                t.columns = {"X", "max_abs", "fitted_slope"};
                for (const auto& [X, m] : fit.max_by_x) t.add_row(X, m, fit.slope);
                emit(cfg, "lambda-scan", {{"ladder", ls_ladder}, {"points", u64s(grid.size())}}, t);
                return 0;
            }
            const auto store = make_store(cfg, 2 * ls_X);
            const auto rep = liou::lambda_poly_scan(store, ls_X, grid, cfg.threads);
            liou::Table t;
            t.columns = {"t", "abs"};
            for (const auto& [tv, a] : rep.rows) t.add_row(tv, a);
            emit(cfg, "lambda-scan",
                 {{"X", u64s(ls_X)}, {"max_abs", liou::fmt_real(rep.max_abs)}}, t);
            return 0;
        }

        if (*sc_plan) {
            const double tcap = pl_Tcap > 0
                                    ? pl_Tcap
                                    : 4.0 * static_cast<double>(pl_X) / static_cast<double>(pl_h);
            const auto store = make_store(cfg, 4 * pl_X);
            const auto rep = liou::plancherel_compare(store, pl_X, pl_h, tcap, cfg.threads);
            liou::Table t;
            t.columns = {"X", "h", "T_cap", "lhs", "rhs_low", "rhs_high", "ratio"};
            t.add_row(rep.X, rep.h, rep.T_cap, rep.lhs, rep.rhs_low, rep.rhs_high, rep.ratio);
            emit(cfg, "plancherel", {{"X", u64s(pl_X)}, {"h", u64s(pl_h)}}, t);
            return 0;
        }

        if (*sc_perron) {
            const double step = pr_step > 0 ? pr_step : liou::default_perron_step(pr_y, pr_kappa);
            const auto res = liou::perron_truncated(pr_y, pr_kappa, pr_T, step, cfg.threads);
            liou::Table t;
            t.columns = {"y", "kappa", "T", "step", "value_re", "value_im", "indicator",
                         "error", "bound"};
            t.add_row(pr_y, pr_kappa, pr_T, res.step, res.value.real(), res.value.imag(),
                      res.indicator, res.error, res.bound);
            emit(cfg, "perron-check", {{"y", liou::fmt_real(pr_y)}, {"kappa", liou::fmt_real(pr_kappa)}}, t);
            return res.error <= 10.0 * res.bound ? 0 : 1;
        }

        if (*sc_dec) {
            const auto rep = liou::rough_identity_check(
                dc_X, dc_h,
                dc_misprint ? liou::RoughDenominator::Misprint : liou::RoughDenominator::Corrected,
                cfg.threads);
            liou::Table t;
            t.columns = {"X", "h", "checked", "failures"};
            t.add_row(rep.X, rep.h, rep.checked, static_cast<std::uint64_t>(rep.failures.size()));
            emit(cfg, "decompose-check",
                 {{"X", u64s(dc_X)}, {"h", u64s(dc_h)}, {"misprint", dc_misprint ? "1" : "0"}}, t);
            for (const auto& f : rep.failures)
                std::cerr << "{\"n\":" << f.n << ", \"lhs\":\"" << liou::rational_str(f.lhs)
                          << "\", \"rhs\":\"" << liou::rational_str(f.rhs) << "\"}\n";
            return rep.failures.empty() ? 0 : 1;
        }

        if (*sc_rear) {
            const auto rep = liou::rearrangement_check(rc_X, rc_h);
            liou::Table t;
            t.columns = {"X", "h", "lhs_terms", "rhs_terms", "equal"};
            t.add_row(rep.X, rep.h, static_cast<std::uint64_t>(rep.lhs_map.size()),
                      static_cast<std::uint64_t>(rep.rhs_map.size()),
                      static_cast<std::int64_t>(rep.equal ? 1 : 0));
            emit(cfg, "rearrange-check", {{"X", u64s(rc_X)}, {"h", u64s(rc_h)}}, t);
            if (!rep.equal)
                std::cerr << "rearrange-check: first mismatch at key " << rep.first_mismatch_key
                          << "\n";
            return rep.equal ? 0 : 1;
        }

        if (*sc_split) {
            const auto rep = liou::smooth_rough_split_check(sp_X, sp_h);
            liou::Table t;
            t.columns = {"X", "h", "count", "smooth_count", "rough_count", "total_sum",
                         "smooth_sum", "rough_sum", "ok"};
            t.add_row(rep.X, rep.h, rep.count, rep.smooth_count, rep.rough_count, rep.total_sum,
                      rep.smooth_sum, rep.rough_sum, static_cast<std::int64_t>(rep.ok ? 1 : 0));
            emit(cfg, "split-check", {{"X", u64s(sp_X)}, {"h", u64s(sp_h)}}, t);
            return rep.ok ? 0 : 1;
        }

        if (*sc_psi) {
            if (psi_method != "auto") {
                // Method pinning is a cross-check surface; the record always
                // reports the dispatcher's exact value as well.
                const std::uint64_t forced = psi_method == "sieve"
                                                 ? liou::psi_exact_sieve(psi_x, psi_y)
                                                 : liou::psi_exact_dfs(psi_x, psi_y);
                const std::uint64_t dispatched = liou::psi_exact(psi_x, psi_y);
                if (forced != dispatched)
                    throw liou::Error("psi: method disagreement (" + u64s(forced) + " vs " +
                                      u64s(dispatched) + ")");
            }
            const auto rec = liou::psi_estimate(psi_x, psi_y);
            liou::Table t;
            t.columns = {"x", "y", "u", "psi_exact", "rho_estimate", "u_pow_estimate",
                         "ratio_rho", "ratio_upow"};
            t.add_row(rec.x, rec.y, rec.u, rec.psi_exact, rec.rho_estimate, rec.u_pow_estimate,
                      rec.ratio_rho, rec.ratio_upow);
            emit(cfg, "psi", {{"x", u64s(psi_x)}, {"y", u64s(psi_y)}, {"method", psi_method}}, t);
            return 0;
        }

        if (*sc_rho) {
            const auto us = parse_double_list(rho_list);
            liou::Table t;
            t.columns = {"u", "rho"};
            for (double u : us) t.add_row(u, liou::dickman_rho(u));
            emit(cfg, "rho", {{"u_list", rho_list}}, t);
            return 0;
        }

        if (*sc_thr) {
            const double H = liou::threshold_H(th_X, th_c);
            liou::Table t;
            t.columns = {"X", "c", "H"};
            t.add_row(th_X, th_c, H);
            emit(cfg, "threshold", {{"X", u64s(th_X)}, {"c", liou::fmt_real(th_c)}}, t);
            return 0;
        }

        if (*sc_den) {
            const auto rep = liou::smooth_density_check(de_X, de_h);
            liou::Table t;
            t.columns = {"X", "h", "psi", "density", "H_half", "within_threshold",
                         "out_of_range"};
            t.add_row(rep.X, rep.h, rep.psi, rep.density, rep.H_half,
                      static_cast<std::int64_t>(rep.within_threshold ? 1 : 0),
                      static_cast<std::int64_t>(rep.out_of_range ? 1 : 0));
            emit(cfg, "density-check", {{"X", u64s(de_X)}, {"h", u64s(de_h)}}, t);
            if (!rep.within_threshold)
                std::cerr << "density-check: warning: h = " << de_h
                          << " exceeds H_{1/2}(X) = " << liou::fmt_real(rep.H_half) << "\n";
            if (rep.out_of_range)
                std::cerr << "density-check: warning: h >= 4X, density degenerates to ~h\n";
            return rep.density <= 10.0 ? 0 : 1;
        }

        if (*sc_cor) {
            const double H = liou::threshold_H(cb_X, cb_c);
            const double bound = liou::predicted_bound(cb_X, cb_h, cb_C, cb_c);
            liou::Table t;
            t.columns = {"X", "h", "C", "c", "H", "bound"};
            t.add_row(cb_X, cb_h, cb_C, cb_c, H, bound);
            emit(cfg, "corollary-bound", {{"X", u64s(cb_X)}, {"h", u64s(cb_h)}}, t);
            return 0;
        }
    } catch (const liou::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const liou::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    return 2;
}
