#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "bounds.hpp"
#include "errors.hpp"
#include "interpolant.hpp"
#include "mn.hpp"
#include "simplex.hpp"
#include "weighted_space.hpp"

namespace mqs {

/// One verification setup: the scheme geometry is derived from (n, beta,
/// b0, delta), the target is the Gaussian e^{-a|x|^2}.
struct ExperimentConfig {
    int n;
    double beta;
    double sigma;
    double b0;
    double delta;
    double a;
    double d0 = 1.0;
    int probe_multiplier = 4;
    std::optional<double> r_override;  // simplex diameter, default midpoint 1.5/(3C)
    std::optional<int> l_override;     // lattice degree, default l_min
};

struct ExperimentReport {
    double c;
    int l;
    double r;
    std::size_t N;
    double cond_estimate;
    double max_error;
    double bound;
    double ratio;
    double mn;
    double log_mn;
    double e_norm;
    TheoryConstants constants;
    MnCase mn_case;
    std::string status;      // "ok", "conditioning-failure", "solve-failure"
    bool well_conditioned;   // condition estimate below 1e12
};

namespace detail {

struct ExperimentSetup {
    TheoryConstants tc;
    SchemeParams sp;
    MnCase mc;
    Simplex simplex;
    CenterSet centers;
};

inline ExperimentSetup prepare_experiment(const ExperimentConfig& cfg) {
    const TheoryConstants tc = derive_constants(cfg.n, cfg.beta, cfg.b0);
    const DegreeRange dr = degree_range(tc.C, cfg.delta);
    const int l = cfg.l_override.value_or(dr.l_min);
    const double r = cfg.r_override.value_or(1.5 / (3.0 * tc.C));
    const SchemeParams sp{cfg.b0, cfg.delta, l, r};
    validate_scheme(tc, sp);
    const MnCase mc = classify_case(cfg.n, cfg.beta, cfg.sigma, l, cfg.d0);
    if (cfg.probe_multiplier < 1)
        throw domain_error("ExperimentConfig: probe_multiplier must be >= 1");
    Simplex simplex = regular_simplex(cfg.n, r);
    CenterSet centers(simplex, l);
    return {tc, sp, mc, std::move(simplex), std::move(centers)};
}

inline double case_bound(const ExperimentSetup& st, const ExperimentConfig& cfg, double c,
                         double e_norm) {
    switch (st.mc.tag) {
        case MnCaseTag::Imq:
            return error_bound_imq(st.tc, st.sp, cfg.n, cfg.beta, c, cfg.sigma, e_norm);
        case MnCaseTag::Imq1d:
            return error_bound_imq_1d(st.tc, st.sp, c, cfg.sigma, e_norm);
        case MnCaseTag::Mq:
            return error_bound_mq(st.tc, st.sp, cfg.n, cfg.beta, c, cfg.sigma, cfg.d0, e_norm);
    }
    throw numerical_error("case_bound: unreachable case tag");
}

}  // namespace detail

/// Core runner for an arbitrary target with a caller-supplied weighted
/// norm. The Gaussian front end below derives the norm from the closed
/// form.
template <class F>
ExperimentReport run_experiment_with_target(const ExperimentConfig& cfg, double c,
                                            const F& target, double e_norm) {
    const detail::ExperimentSetup st = detail::prepare_experiment(cfg);
    if (e_norm < 0.0) throw domain_error("run_experiment_with_target: e_norm must be >= 0");

    ExperimentReport rep{};
    rep.c = c;
    rep.l = st.sp.l;
    rep.r = st.sp.r;
    rep.N = st.centers.size();
    rep.e_norm = e_norm;
    rep.constants = st.tc;
    rep.mn_case = st.mc;
    rep.log_mn = log_mn_value(st.mc, c);
    rep.mn = std::exp(rep.log_mn);
    rep.bound = detail::case_bound(st, cfg, c, e_norm);

    const KernelParams kernel(cfg.beta, c, cfg.n);
    Eigen::VectorXd values(static_cast<Eigen::Index>(st.centers.size()));
    for (std::size_t i = 0; i < st.centers.size(); ++i)
        values(static_cast<Eigen::Index>(i)) = target(st.centers.points()[i]);

    const double nan = std::numeric_limits<double>::quiet_NaN();
    try {
        const Interpolant s = solve(assemble_system(st.centers, kernel, values));
        rep.cond_estimate = s.cond_estimate;
        rep.max_error = max_error_on_lattice(s, target, cfg.probe_multiplier * st.sp.l);
        rep.ratio = rep.max_error == 0.0 ? 0.0 : rep.max_error / rep.bound;
        rep.status = "ok";
        rep.well_conditioned = s.cond_estimate < 1e12;
    } catch (const conditioning_error& e) {
        rep.cond_estimate = e.estimate;
        rep.max_error = nan;
        rep.ratio = nan;
        rep.status = "conditioning-failure";
        rep.well_conditioned = false;
    } catch (const numerical_error&) {
        rep.cond_estimate = nan;
        rep.max_error = nan;
        rep.ratio = nan;
        rep.status = "solve-failure";
        rep.well_conditioned = false;
    }
    return rep;
}

inline ExperimentReport run_experiment(const ExperimentConfig& cfg, double c) {
    const GaussianFunction f(cfg.a, cfg.n);
    const double e_norm = esigma_norm_gaussian(f, cfg.sigma);
    return run_experiment_with_target(cfg, c, f, e_norm);
}

struct SweepResult {
    MnCase mn_case;
    std::vector<ExperimentReport> reports;
};

inline SweepResult sweep_c(const ExperimentConfig& cfg, const std::vector<double>& c_values) {
    if (c_values.empty()) throw domain_error("sweep_c: empty c grid");
    const detail::ExperimentSetup st = detail::prepare_experiment(cfg);
    SweepResult out{st.mc, {}};
    out.reports.reserve(c_values.size());
    for (double c : c_values) out.reports.push_back(run_experiment(cfg, c));
    return out;
}

/// Log-spaced grid helper shared by sweeps and the CLI.
inline std::vector<double> log_grid(double c_min, double c_max, int count) {
    if (!(c_min > 0.0) || !(c_min < c_max)) throw domain_error("log_grid: need 0 < c_min < c_max");
    if (count < 2) throw domain_error("log_grid: count must be >= 2");
    std::vector<double> g(count);
    const double la = std::log(c_min), lb = std::log(c_max);
    for (int i = 0; i < count; ++i)
        g[i] = i == 0 ? c_min : i == count - 1 ? c_max
                              : std::exp(la + (lb - la) * i / (count - 1));
    return g;
}

namespace detail {

// Fixed 17-significant-digit formatting: deterministic and locale-free.
inline std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace detail

/// CSV rows in the sweep schema; `meta` becomes a leading comment line.
inline void write_sweep_csv(std::ostream& os, const std::vector<ExperimentReport>& reports,
                            const std::string& meta) {
    if (!meta.empty()) os << "# " << meta << "\n";
    os << "c,mn,max_error,bound,ratio,cond_estimate,l,N,status\n";
    for (const ExperimentReport& r : reports) {
        os << detail::format_g17(r.c) << ',' << detail::format_g17(r.mn) << ','
           << detail::format_g17(r.max_error) << ',' << detail::format_g17(r.bound) << ','
           << detail::format_g17(r.ratio) << ',' << detail::format_g17(r.cond_estimate) << ','
           << r.l << ',' << r.N << ',' << r.status << "\n";
    }
}

}  // namespace mqs
