#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "errors.hpp"
#include "kernel.hpp"
#include "special_math.hpp"

namespace mqs {

/// Which branch of the constant table applies for (n, beta).
enum class ConstantCase { AI, AII, B, C };

inline const char* to_string(ConstantCase c) {
    switch (c) {
        case ConstantCase::AI: return "A-i";
        case ConstantCase::AII: return "A-ii";
        case ConstantCase::B: return "B";
        case ConstantCase::C: return "C";
    }
    return "?";
}

namespace detail {

// Product of the integers lo..hi, empty product (hi < lo) = 1.
inline double product_range(int lo, int hi) {
    double p = 1.0;
    for (int k = lo; k <= hi; ++k) p *= static_cast<double>(k);
    return p;
}

// ceil/floor with a small relative guard so exact rational endpoints do not
// flip to the wrong integer through rounding.
inline int guarded_ceil(double x) { return static_cast<int>(std::ceil(x * (1.0 - 1e-12))); }
inline int guarded_floor(double x) { return static_cast<int>(std::floor(x * (1.0 + 1e-12))); }

}  // namespace detail

struct RhoDelta {
    double rho;     // >= 1
    double delta0;  // the combinatorial constant multiplying the bound
    int s;          // auxiliary integer of the branch (0 in case B)
    ConstantCase label;
};

/// The branchwise constants rho and delta0 for a kernel exponent beta in
/// dimension n.
inline RhoDelta rho_delta0(int n, double beta) {
    if (n < 1) throw domain_error("rho_delta0: n must be >= 1");
    const int m = cpd_order(beta);  // validates beta
    if (beta < n - 3) {
        const int s = static_cast<int>(std::lround(std::ceil((n - beta - 3.0) / 2.0)));
        if (beta < 0) {
            const double rho = (3.0 + s) / 3.0;
            return {rho, detail::product_range(3, 2 + s) / (rho * rho), s, ConstantCase::AI};
        }
        const double rho = 1.0 + static_cast<double>(s) / (2 * m + 3);
        return {rho, detail::product_range(2 * m + 3, 2 * m + 2 + s) / std::pow(rho, 2 * m + 2),
                s, ConstantCase::AII};
    }
    if (beta < n - 1) return {1.0, 1.0, 0, ConstantCase::B};
    const int s = -static_cast<int>(std::lround(std::ceil((n - beta - 3.0) / 2.0)));
    return {1.0, 1.0 / detail::product_range(2 * m - s + 3, 2 * m + 2), s, ConstantCase::C};
}

struct SchemeConstants {
    double C;             // max{2/(3 b0), 8 rho}
    double delta_max;     // 1/(3C)
    double lambda_prime;  // (2/3)^{1/(3C)}, in (0,1)
};

inline SchemeConstants scheme_constants(double rho, double b0) {
    if (!(rho >= 1.0)) throw domain_error("scheme_constants: rho must be >= 1");
    if (!(b0 > 0.0)) throw domain_error("scheme_constants: b0 must be positive");
    const double C = std::max(2.0 / (3.0 * b0), 8.0 * rho);
    const double delta_max = 1.0 / (3.0 * C);
    return {C, delta_max, std::pow(2.0 / 3.0, delta_max)};
}

/// Everything the interpolation scheme derives from (n, beta, b0).
struct TheoryConstants {
    int m;
    int s;
    double rho;
    double delta0;
    ConstantCase label;
    double C;
    double delta_max;
    double lambda_prime;
};

inline TheoryConstants derive_constants(int n, double beta, double b0) {
    const RhoDelta rd = rho_delta0(n, beta);
    const SchemeConstants sc = scheme_constants(rd.rho, b0);
    return {cpd_order(beta), rd.s,      rd.rho,       rd.delta0,
            rd.label,        sc.C,      sc.delta_max, sc.lambda_prime};
}

struct DegreeRange {
    int l_min;
    int l_max;
};

/// Admissible lattice degrees for a density parameter delta:
/// 1/(3 C delta) <= l <= 2/(3 C delta). Non-empty whenever delta < 1/(3C).
inline DegreeRange degree_range(double C, double delta) {
    if (!(delta > 0.0) || !(delta < 1.0 / (3.0 * C)))
        throw domain_error("degree_range: delta must lie in (0, 1/(3C))");
    const double x = 1.0 / (3.0 * C * delta);
    return {detail::guarded_ceil(x), detail::guarded_floor(2.0 * x)};
}

/// The positive root xi of 2 xi^2/sigma - c xi - k/2 = 0, the maximizer
/// appearing inside the h-norm factors.
inline double xi_star(double c, double sigma, double k) {
    if (!(c > 0.0) || !(sigma > 0.0) || k < 0.0)
        throw domain_error("xi_star: need c > 0, sigma > 0, k >= 0");
    return (c * sigma + std::sqrt(detail::sq(c * sigma) + 4.0 * sigma * k)) / 4.0;
}

namespace detail {

// log of (xi*)^{k/2} e^{c xi* - (xi*)^2/sigma}, the braced factor shared by
// the general h-norm bounds and the MN functions.
inline double log_brace(double c, double sigma, double k) {
    const double xs = xi_star(c, sigma, k);
    const double exponent = c * xs - sq(xs) / sigma;
    return (k > 0.0 ? 0.5 * k * std::log(xs) : 0.0) + exponent;
}

inline constexpr double ln2 = std::numbers::ln2;
inline const double ln_pi = std::log(std::numbers::pi);

// log M(c) for the one-dimensional beta = -1 bound. Below the breakpoint
// 2/sqrt(3 sigma) the integrand peaks at the domain edge, above it at xi*.
inline double log_m_low(double c, double sigma) { return 1.0 - 1.0 / (sq(c) * sigma); }

inline double log_m_high(double c, double sigma) {
    const double xs = xi_star(c, sigma, 1.0);
    return 0.5 * std::log(c * xs) + c * xs - sq(xs) / sigma;
}

inline double log_m_factor(double c, double sigma) {
    return c <= 2.0 / std::sqrt(3.0 * sigma) ? log_m_low(c, sigma) : log_m_high(c, sigma);
}

// log of 1/ln2 + 2 sqrt(3) M(c), overflow-safe.
inline double log_m_brace(double c, double sigma) {
    return log_add_exp(-std::log(ln2), std::log(2.0 * std::sqrt(3.0)) + log_m_factor(c, sigma));
}

}  // namespace detail

/// Factor multiplying the weighted-space norm in the h-norm estimate for
/// inverse multiquadrics (beta < 0, |n+beta| >= 1, n+beta+1 >= 0).
inline double h_norm_bound_imq(int n, double beta, double c, double sigma) {
    if (!(beta < 0.0))
        throw domain_error("h_norm_bound_imq: requires beta < 0");
    if (std::abs(n + beta) < 1.0)
        throw domain_error("h_norm_bound_imq: requires |n+beta| >= 1; for n=1, beta=-1 use "
                           "h_norm_bound_imq_1d");
    if (n + beta + 1.0 < 0.0)
        throw domain_error("h_norm_bound_imq: requires n+beta+1 >= 0");
    if (!(c > 0.0) || !(sigma > 0.0))
        throw domain_error("h_norm_bound_imq: need c > 0, sigma > 0");
    const double k = n + beta + 1.0;
    const double log_v = (-n - (1.0 + beta) / 4.0) * detail::ln2 +
                         (-n - 0.25) * detail::ln_pi +
                         ((1.0 - n - beta) / 4.0) * std::log(c) +
                         0.5 * detail::log_brace(c, sigma, k);
    return std::exp(log_v);
}

/// Same factor for the excluded corner beta = -1, n = 1.
inline double h_norm_bound_imq_1d(double c, double sigma) {
    if (!(c > 0.0) || !(sigma > 0.0))
        throw domain_error("h_norm_bound_imq_1d: need c > 0, sigma > 0");
    const double log_v = -1.25 * detail::ln2 - detail::ln_pi + 0.5 * detail::log_m_brace(c, sigma);
    return std::exp(log_v);
}

/// Same factor for multiquadrics (beta > 0); d0 is the configuration
/// constant absorbing the (n, beta)-dependent prefactor.
inline double h_norm_bound_mq(int n, double beta, double c, double sigma, double d0) {
    if (!(beta > 0.0)) throw domain_error("h_norm_bound_mq: requires beta > 0");
    if (n < 1) throw domain_error("h_norm_bound_mq: n must be >= 1");
    if (!(d0 > 0.0)) throw domain_error("h_norm_bound_mq: d0 must be positive");
    if (!(c > 0.0) || !(sigma > 0.0))
        throw domain_error("h_norm_bound_mq: need c > 0, sigma > 0");
    const double k = 1.0 + beta + n;
    const double log_v = std::log(d0) + ((1.0 - beta - n) / 4.0) * std::log(c) +
                         0.5 * detail::log_brace(c, sigma, k);
    return std::exp(log_v);
}

/// Geometry/density parameters of one interpolation scheme instance.
struct SchemeParams {
    double b0;     // scale bound, C = max{2/(3 b0), 8 rho}
    double delta;  // density parameter, 0 < delta < delta_max
    int l;         // lattice degree within degree_range
    double r;      // simplex diameter within [1/(3C), 2/(3C)]
};

inline void validate_scheme(const TheoryConstants& tc, const SchemeParams& sp) {
    if (!(sp.b0 > 0.0)) throw domain_error("SchemeParams: b0 must be positive");
    const double c_expected = std::max(2.0 / (3.0 * sp.b0), 8.0 * tc.rho);
    if (std::abs(c_expected - tc.C) > 1e-12 * tc.C)
        throw domain_error("SchemeParams: b0 inconsistent with the derived constant C");
    if (!(sp.delta > 0.0) || !(sp.delta < tc.delta_max))
        throw domain_error("SchemeParams: delta must lie in (0, " +
                           std::to_string(tc.delta_max) + ")");
    const DegreeRange dr = degree_range(tc.C, sp.delta);
    if (sp.l < dr.l_min || sp.l > dr.l_max)
        throw domain_error("SchemeParams: lattice degree l=" + std::to_string(sp.l) +
                           " outside the admissible range [" + std::to_string(dr.l_min) + ", " +
                           std::to_string(dr.l_max) + "]");
    const double r_lo = 1.0 / (3.0 * tc.C), r_hi = 2.0 / (3.0 * tc.C);
    if (sp.r < r_lo * (1.0 - 1e-12) || sp.r > r_hi * (1.0 + 1e-12))
        throw domain_error("SchemeParams: simplex diameter r outside [1/(3C), 2/(3C)]");
}

namespace detail {

// Shared prefix of every error bound: the scheme-dependent factors
// sqrt(delta0) sqrt(3C) sqrt(delta) (lambda')^{1/delta} and sqrt(n alpha_n).
inline double log_scheme_factor(const TheoryConstants& tc, const SchemeParams& sp, int n) {
    return 0.5 * std::log(n * unit_ball_volume(n)) + 0.5 * std::log(tc.delta0) +
           0.5 * std::log(3.0 * tc.C) + 0.5 * std::log(sp.delta) +
           (1.0 / sp.delta) * std::log(tc.lambda_prime);
}

}  // namespace detail

/// Pointwise interpolation error bound in terms of the native-space
/// seminorm of the target.
inline double error_bound_native(const TheoryConstants& tc, const SchemeParams& sp, int n,
                                 double beta, double c, double h_norm) {
    validate_scheme(tc, sp);
    if (h_norm < 0.0) throw domain_error("error_bound_native: h_norm must be >= 0");
    if (h_norm == 0.0) return 0.0;
    const double log_v = ((n + beta - 7.0) / 4.0) * detail::ln2 +
                         ((n - 1.0) / 4.0) * detail::ln_pi +
                         (0.5 * beta - sp.l) * std::log(c) +
                         detail::log_scheme_factor(tc, sp, n) + std::log(h_norm);
    return std::exp(log_v);
}

/// Error bound in terms of the weighted-space norm, inverse multiquadric
/// regime (beta < 0, |n+beta| >= 1, n+beta+1 >= 0).
inline double error_bound_imq(const TheoryConstants& tc, const SchemeParams& sp, int n,
                              double beta, double c, double sigma, double e_norm) {
    validate_scheme(tc, sp);
    if (e_norm < 0.0) throw domain_error("error_bound_imq: e_norm must be >= 0");
    if (std::abs(n + beta) < 1.0 || !(beta < 0.0) || n + beta + 1.0 < 0.0)
        throw domain_error("error_bound_imq: hypotheses beta < 0, |n+beta| >= 1, "
                           "n+beta+1 >= 0 violated");
    if (e_norm == 0.0) return 0.0;
    const double k = n + beta + 1.0;
    const double log_v = (-0.75 * n - 2.0) * detail::ln2 + (-0.75 * n - 0.5) * detail::ln_pi +
                         ((beta - n + 1.0 - 4.0 * sp.l) / 4.0) * std::log(c) +
                         0.5 * detail::log_brace(c, sigma, k) +
                         detail::log_scheme_factor(tc, sp, n) + std::log(e_norm);
    return std::exp(log_v);
}

/// Error bound in terms of the weighted-space norm for beta = -1, n = 1.
inline double error_bound_imq_1d(const TheoryConstants& tc, const SchemeParams& sp, double c,
                                 double sigma, double e_norm) {
    validate_scheme(tc, sp);
    if (e_norm < 0.0) throw domain_error("error_bound_imq_1d: e_norm must be >= 0");
    if (e_norm == 0.0) return 0.0;
    const int n = 1;
    const double beta = -1.0;
    const double log_v = ((beta - 3.0 * n) / 4.0 - 2.0) * detail::ln2 +
                         ((n - 5.0) / 4.0) * detail::ln_pi +
                         (0.5 * beta - sp.l) * std::log(c) +
                         0.5 * detail::log_m_brace(c, sigma) +
                         detail::log_scheme_factor(tc, sp, n) + std::log(e_norm);
    return std::exp(log_v);
}

/// Error bound in terms of the weighted-space norm, multiquadric regime
/// (beta > 0).
inline double error_bound_mq(const TheoryConstants& tc, const SchemeParams& sp, int n,
                             double beta, double c, double sigma, double d0, double e_norm) {
    validate_scheme(tc, sp);
    if (e_norm < 0.0) throw domain_error("error_bound_mq: e_norm must be >= 0");
    if (!(beta > 0.0)) throw domain_error("error_bound_mq: requires beta > 0");
    if (!(d0 > 0.0)) throw domain_error("error_bound_mq: d0 must be positive");
    if (e_norm == 0.0) return 0.0;
    const double k = 1.0 + beta + n;
    const double log_v = ((n + beta - 7.0) / 4.0) * detail::ln2 +
                         ((n - 1.0) / 4.0) * detail::ln_pi + std::log(d0) +
                         ((1.0 + beta - n - 4.0 * sp.l) / 4.0) * std::log(c) +
                         0.5 * detail::log_brace(c, sigma, k) +
                         detail::log_scheme_factor(tc, sp, n) + std::log(e_norm);
    return std::exp(log_v);
}

struct ExponentSplit {
    double direct;    // c xi* - (xi*)^2 / sigma evaluated as written
    double expanded;  // the same quantity through the expanded radical form
};

/// Two routes to the exponent c xi* - (xi*)^2/sigma with k = n+beta+1:
/// directly, and via (1/16)[2 c^2 sigma + 2 c sqrt(c^2 sigma^2 + 4 sigma k)
/// - 4k].
inline ExponentSplit mq_exponent_identity(double c, double sigma, int n, double beta) {
    const double k = n + beta + 1.0;
    const double xs = xi_star(c, sigma, k);
    const double direct = c * xs - detail::sq(xs) / sigma;
    const double expanded =
        (2.0 * detail::sq(c) * sigma +
         2.0 * c * std::sqrt(detail::sq(c * sigma) + 4.0 * sigma * k) - 4.0 * k) /
        16.0;
    return {direct, expanded};
}

}  // namespace mqs
