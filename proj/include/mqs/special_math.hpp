#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>

#include "errors.hpp"

namespace mqs {

namespace detail {

// Lanczos approximation, g = 607/128, 15 terms (Godfrey's coefficients).
// Relative error of the rational part is below 1e-15 on the positive axis.
inline constexpr double lanczos_g = 4.7421875;
inline constexpr double lanczos_coeff[15] = {
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

inline double lanczos_sum(double z) {
    double s = lanczos_coeff[0];
    for (int k = 1; k < 15; ++k) s += lanczos_coeff[k] / (z + k - 1);
    return s;
}

// sin(pi*x) with exact argument reduction to the nearest integer, so that
// relative accuracy survives arbitrarily close to the zeros.
inline double sin_pi(double x) {
    const double r = std::round(x);
    const double f = x - r;  // exact for |x| below 2^52
    const double s = std::sin(std::numbers::pi * f);
    return (static_cast<long long>(r) % 2 == 0) ? s : -s;
}

inline double sq(double x) { return x * x; }

// log(e^a + e^b) without overflow.
inline double log_add_exp(double a, double b) {
    const double hi = std::max(a, b);
    const double lo = std::min(a, b);
    if (!std::isfinite(hi)) return hi;
    return hi + std::log1p(std::exp(lo - hi));
}

}  // namespace detail

/// Gamma function for real non-pole arguments. Positive arguments use the
/// Lanczos approximation, negative ones the reflection formula
/// gamma(x) = pi / (sin(pi x) * gamma(1-x)).
inline double gamma(double x) {
    const double r = std::round(x);
    if (r <= 0.0 && std::abs(x - r) < 1e-12)
        throw domain_error("gamma: pole at non-positive integer argument x=" + std::to_string(x));
    if (x < 0.5)
        return std::numbers::pi / (detail::sin_pi(x) * gamma(1.0 - x));
    const double t = x + detail::lanczos_g - 0.5;
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, x - 0.5) * std::exp(-t) *
           detail::lanczos_sum(x);
}

/// Volume of the unit ball in R^n: pi^{n/2} / gamma(n/2 + 1).
inline double unit_ball_volume(int n) {
    if (n < 1) throw domain_error("unit_ball_volume: n must be >= 1");
    return std::pow(std::numbers::pi, 0.5 * n) / gamma(0.5 * n + 1.0);
}

/// Exact binomial coefficient C(a, b). Throws overflow_error instead of
/// wrapping around.
inline std::int64_t binomial(std::int64_t a, std::int64_t b) {
    if (a < 0 || b < 0 || b > a)
        throw domain_error("binomial: requires 0 <= b <= a, got a=" + std::to_string(a) +
                           " b=" + std::to_string(b));
    b = std::min(b, a - b);
    std::int64_t result = 1;
    for (std::int64_t i = 1; i <= b; ++i) {
        // widen so a transient product above 2^63 does not reject a value
        // whose quotient still fits
        const __int128 prod = static_cast<__int128>(result) * (a - b + i) / i;
        if (prod > std::numeric_limits<std::int64_t>::max())
            throw overflow_error("binomial: C(" + std::to_string(a) + "," + std::to_string(b) +
                                 ") exceeds 64-bit range");
        result = static_cast<std::int64_t>(prod);  // division is exact at every step
    }
    return result;
}

}  // namespace mqs
