#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "errors.hpp"
#include "simplex.hpp"
#include "special_math.hpp"

namespace mqs {

/// Rejects exponents beta that land on a non-negative even integer, where
/// the gamma prefactor has a pole.
inline void check_beta(double beta) {
    const double k = std::round(beta / 2.0);
    if (k >= 0.0 && std::abs(beta - 2.0 * k) < 1e-12)
        throw domain_error("beta must not be a non-negative even integer (got " +
                           std::to_string(beta) + ")");
}

/// Conditional positive definiteness order m = max{ceil(beta/2), 0}.
inline int cpd_order(double beta) {
    check_beta(beta);
    return std::max(static_cast<int>(std::ceil(beta / 2.0)), 0);
}

/// Parameters of the radial kernel gamma(-beta/2) * (c^2 + |x|^2)^{beta/2}.
struct KernelParams {
    double beta;
    double c;
    int n;
    double gamma_factor;  // gamma(-beta/2), fixed sign for the whole kernel

    KernelParams(double beta, double c, int n) : beta(beta), c(c), n(n) {
        check_beta(beta);
        if (!(c > 0.0)) throw domain_error("KernelParams: shape parameter c must be positive");
        if (n < 1) throw domain_error("KernelParams: dimension n must be >= 1");
        gamma_factor = gamma(-beta / 2.0);
    }
};

/// Kernel value as a function of the squared radius.
inline double h_eval_r2(const KernelParams& k, double r2) {
    return k.gamma_factor * std::pow(k.c * k.c + r2, 0.5 * k.beta);
}

inline double h_eval(const KernelParams& k, const Point& x) {
    if (static_cast<int>(x.size()) != k.n)
        throw domain_error("h_eval: point dimension mismatch");
    return h_eval_r2(k, x.squaredNorm());
}

/// Monomial basis of the polynomials of degree <= m-1 in n variables,
/// graded order (degree first, then lexicographically decreasing exponents).
/// m = 0 gives the empty basis.
class PolyBasis {
public:
    PolyBasis(int n, int m) : n_(n), degree_(m - 1) {
        if (n < 1) throw domain_error("PolyBasis: n must be >= 1");
        if (m < 0) throw domain_error("PolyBasis: m must be >= 0");
        for (int d = 0; d < m; ++d)
            for (auto& e : detail::compositions(d, n)) exponents_.push_back(std::move(e));
    }

    int n() const { return n_; }
    int degree() const { return degree_; }  // -1 for the empty basis
    int dimension() const { return static_cast<int>(exponents_.size()); }  // Q
    const std::vector<std::vector<int>>& exponents() const { return exponents_; }

    double eval(int j, const Point& x) const {
        double v = 1.0;
        const auto& e = exponents_[static_cast<std::size_t>(j)];
        for (int i = 0; i < n_; ++i)
            for (int p = 0; p < e[i]; ++p) v *= x(i);
        return v;
    }

private:
    int n_;
    int degree_;
    std::vector<std::vector<int>> exponents_;
};

inline PolyBasis poly_basis(int n, int m) { return PolyBasis(n, m); }

}  // namespace mqs
