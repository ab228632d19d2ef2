#pragma once

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bounds.hpp"
#include "errors.hpp"
#include "kernel.hpp"

namespace mqs {

/// Which shape-parameter criterion applies.
enum class MnCaseTag { Imq, Imq1d, Mq };

inline const char* to_string(MnCaseTag t) {
    switch (t) {
        case MnCaseTag::Imq: return "imq";
        case MnCaseTag::Imq1d: return "imq-1d";
        case MnCaseTag::Mq: return "mq";
    }
    return "?";
}

struct MnCase {
    MnCaseTag tag;
    int n;
    double beta;
    double sigma;
    int l;
    double d0;  // only used by the mq case
};

/// Pick the unique applicable criterion for (n, beta) or explain why none
/// applies.
inline MnCase classify_case(int n, double beta, double sigma, int l, double d0 = 1.0) {
    check_beta(beta);
    if (n < 1) throw domain_error("classify_case: n must be >= 1");
    if (!(sigma > 0.0)) throw domain_error("classify_case: sigma must be positive");
    if (l < 1) throw domain_error("classify_case: lattice degree l must be >= 1");
    if (!(d0 > 0.0)) throw domain_error("classify_case: d0 must be positive");

    if (std::abs(beta + 1.0) < 1e-12 && n == 1) return {MnCaseTag::Imq1d, n, beta, sigma, l, d0};
    if (beta < 0.0 && std::abs(n + beta) >= 1.0 && n + beta + 1.0 >= 0.0)
        return {MnCaseTag::Imq, n, beta, sigma, l, d0};
    if (beta > 0.0) return {MnCaseTag::Mq, n, beta, sigma, l, d0};

    std::ostringstream msg;
    msg << "no shape-parameter criterion covers n=" << n << ", beta=" << beta << ": ";
    msg << "the inverse-multiquadric criterion needs beta < 0, |n+beta| >= 1 and "
           "n+beta+1 >= 0 (have |n+beta|=" << std::abs(n + beta) << ", n+beta+1="
        << n + beta + 1.0 << "); ";
    msg << "the one-dimensional criterion needs beta = -1 and n = 1; ";
    msg << "the multiquadric criterion needs beta > 0";
    throw unsupported_regime(msg.str());
}

/// log MN(c). Always finite for sane c, even where MN itself overflows.
inline double log_mn_value(const MnCase& mc, double c) {
    if (!(c > 0.0)) throw domain_error("log_mn_value: c must be positive");
    switch (mc.tag) {
        case MnCaseTag::Imq: {
            const double k = mc.n + mc.beta + 1.0;
            return ((mc.beta - mc.n + 1.0 - 4.0 * mc.l) / 4.0) * std::log(c) +
                   0.5 * detail::log_brace(c, mc.sigma, k);
        }
        case MnCaseTag::Imq1d:
            return (0.5 * mc.beta - mc.l) * std::log(c) + 0.5 * detail::log_m_brace(c, mc.sigma);
        case MnCaseTag::Mq: {
            const double k = 1.0 + mc.beta + mc.n;
            return std::log(mc.d0) + ((1.0 + mc.beta - mc.n - 4.0 * mc.l) / 4.0) * std::log(c) +
                   0.5 * detail::log_brace(c, mc.sigma, k);
        }
    }
    throw numerical_error("log_mn_value: unreachable case tag");
}

/// Linear-scale MN(c); throws when the value leaves the double range.
inline double mn_value(const MnCase& mc, double c) {
    const double v = std::exp(log_mn_value(mc, c));
    if (!std::isfinite(v))
        throw overflow_error("mn_value: MN(c) overflows at c=" + std::to_string(c) +
                             "; use log_mn_value");
    return v;
}

/// Log-spaced samples of MN over [c_min, c_max], stored as logs so large
/// values survive.
struct MnCurve {
    MnCase curve_case;
    double c_min;
    double c_max;
    int count;
    std::vector<double> c;
    std::vector<double> log_mn;

    double mn(int i) const {
        const double v = std::exp(log_mn.at(static_cast<std::size_t>(i)));
        if (!std::isfinite(v))
            throw overflow_error("MnCurve: sample " + std::to_string(i) +
                                 " overflows in linear scale");
        return v;
    }
};

inline MnCurve mn_curve(const MnCase& mc, double c_min, double c_max, int count) {
    if (!(c_min > 0.0) || !(c_min < c_max))
        throw domain_error("mn_curve: need 0 < c_min < c_max");
    if (count < 2) throw domain_error("mn_curve: count must be >= 2");
    MnCurve out{mc, c_min, c_max, count, {}, {}};
    out.c.reserve(count);
    out.log_mn.reserve(count);
    const double la = std::log(c_min), lb = std::log(c_max);
    for (int i = 0; i < count; ++i) {
        const double ci = i == 0            ? c_min
                          : i == count - 1 ? c_max
                                           : std::exp(la + (lb - la) * i / (count - 1));
        out.c.push_back(ci);
        out.log_mn.push_back(log_mn_value(mc, ci));
    }
    return out;
}

enum class MnStatus { InteriorMin, InfimumAtZero, UnboundedWarning };

inline const char* to_string(MnStatus s) {
    switch (s) {
        case MnStatus::InteriorMin: return "interior-min";
        case MnStatus::InfimumAtZero: return "infimum-at-zero";
        case MnStatus::UnboundedWarning: return "unbounded-warning";
    }
    return "?";
}

struct MnResult {
    std::optional<double> c_star;
    double mn_at_c_star;      // exp of the log value; may be inf for boundary statuses
    double log_mn_at_c_star;
    MnStatus status;
    double bracket_lo;
    double bracket_hi;
};

/// Two-stage minimizer: a 2001-point log-grid scan, then golden-section
/// refinement of the bracketing grid cell to 1e-10 relative width. Ties go
/// to the smaller c. A grid argmin on the bracket edge is reported as a
/// boundary infimum, not an interior minimum.
inline MnResult minimize_mn(const MnCase& mc, double c_lo = 1e-3, double c_hi = 1e3) {
    if (!(c_lo > 0.0) || !(c_lo < c_hi)) throw domain_error("minimize_mn: need 0 < c_lo < c_hi");
    constexpr int grid_count = 2001;
    const double la = std::log(c_lo), lb = std::log(c_hi);
    std::vector<double> cs(grid_count), fs(grid_count);
    int best = 0;
    for (int i = 0; i < grid_count; ++i) {
        cs[i] = i == 0 ? c_lo : i == grid_count - 1 ? c_hi
                              : std::exp(la + (lb - la) * i / (grid_count - 1));
        fs[i] = log_mn_value(mc, cs[i]);
        if (fs[i] < fs[best]) best = i;
    }

    if (best == 0 || best == grid_count - 1) {
        const bool at_zero_side = best == 0;
        const double e3 = 1.0 + mc.beta - mc.n - 4.0 * mc.l;
        const MnStatus status = (mc.tag == MnCaseTag::Mq && e3 > 0.0 && at_zero_side)
                                    ? MnStatus::InfimumAtZero
                                    : MnStatus::UnboundedWarning;
        return {std::nullopt, std::exp(fs[best]), fs[best], status, c_lo, c_hi};
    }

    double a = cs[best - 1], b = cs[best + 1];
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = log_mn_value(mc, x1), f2 = log_mn_value(mc, x2);
    while (b - a > 1e-10 * 0.5 * (a + b)) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = log_mn_value(mc, x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = log_mn_value(mc, x2);
        }
    }
    const double c_star = f1 <= f2 ? x1 : x2;
    const double log_best = std::min(f1, f2);
    return {c_star, std::exp(log_best), log_best, MnStatus::InteriorMin, c_lo, c_hi};
}

enum class LimitClass { PlusInfinity, Zero, FinitePositive };

inline const char* to_string(LimitClass c) {
    switch (c) {
        case LimitClass::PlusInfinity: return "+inf";
        case LimitClass::Zero: return "0";
        case LimitClass::FinitePositive: return "finite-positive";
    }
    return "?";
}

struct LimitBehavior {
    LimitClass at_zero;
    LimitClass at_infinity;
    std::string note;
};

/// Directional behavior of MN at the ends of (0, inf). The mq case follows
/// the sign of 1+beta-n-4l at zero; everything blows up at infinity.
inline LimitBehavior limit_behavior(const MnCase& mc) {
    switch (mc.tag) {
        case MnCaseTag::Imq: {
            std::string note;
            if (mc.n + mc.beta + 1.0 == 0.0)
                note = "at-zero blow-up derived from the formula; the n+beta+1=0 boundary "
                       "sits outside the stated inverse-multiquadric remark";
            return {LimitClass::PlusInfinity, LimitClass::PlusInfinity, note};
        }
        case MnCaseTag::Imq1d:
            return {LimitClass::PlusInfinity, LimitClass::PlusInfinity, ""};
        case MnCaseTag::Mq: {
            const double e3 = 1.0 + mc.beta - mc.n - 4.0 * mc.l;
            if (e3 > 0.0) return {LimitClass::Zero, LimitClass::PlusInfinity, ""};
            if (e3 < 0.0) return {LimitClass::PlusInfinity, LimitClass::PlusInfinity, ""};
            return {LimitClass::FinitePositive, LimitClass::PlusInfinity, ""};
        }
    }
    throw numerical_error("limit_behavior: unreachable case tag");
}

}  // namespace mqs
