#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "kernel.hpp"
#include "simplex.hpp"

namespace mqs {

/// Augmented saddle-point system
///   [A P; P^T 0] [c; b] = [values; 0]
/// with A_{ji} = h(x_j - x_i) and P_{ji} = p_i(x_j). Carries everything
/// needed to turn a solution vector back into an interpolant.
struct LinearSystem {
    Eigen::MatrixXd lhs;
    Eigen::VectorXd rhs;
    KernelParams kernel;
    PolyBasis poly;
    std::vector<Point> points;
    std::optional<CenterSet> centers;
    Eigen::VectorXd values;
};

namespace detail {

inline LinearSystem assemble_impl(std::vector<Point> points, std::optional<CenterSet> centers,
                                  const KernelParams& k, const Eigen::VectorXd& values) {
    const auto N = static_cast<Eigen::Index>(points.size());
    if (N == 0) throw domain_error("assemble_system: no centers");
    if (values.size() != N)
        throw domain_error("assemble_system: values length does not match the center count");
    for (const Point& p : points)
        if (p.size() != k.n) throw domain_error("assemble_system: center dimension mismatch");

    PolyBasis poly(k.n, cpd_order(k.beta));
    const auto Q = static_cast<Eigen::Index>(poly.dimension());

    Eigen::MatrixXd lhs = Eigen::MatrixXd::Zero(N + Q, N + Q);
    for (Eigen::Index j = 0; j < N; ++j) {
        lhs(j, j) = h_eval_r2(k, 0.0);
        for (Eigen::Index i = j + 1; i < N; ++i) {
            const double v = h_eval_r2(k, (points[j] - points[i]).squaredNorm());
            lhs(j, i) = v;
            lhs(i, j) = v;
        }
    }
    for (Eigen::Index j = 0; j < N; ++j)
        for (Eigen::Index i = 0; i < Q; ++i) {
            const double v = poly.eval(static_cast<int>(i), points[j]);
            lhs(j, N + i) = v;
            lhs(N + i, j) = v;
        }

    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(N + Q);
    rhs.head(N) = values;
    return {std::move(lhs), std::move(rhs), k, std::move(poly), std::move(points),
            std::move(centers), values};
}

}  // namespace detail

/// Lattice centers: the degree condition l >= m-1 guarantees the polynomial
/// block has full rank.
inline LinearSystem assemble_system(const CenterSet& centers, const KernelParams& k,
                                    const Eigen::VectorXd& values) {
    if (centers.simplex().dim() != k.n)
        throw domain_error("assemble_system: simplex dimension does not match the kernel");
    const int m = cpd_order(k.beta);
    if (centers.degree() < m - 1)
        throw domain_error("assemble_system: lattice degree " +
                           std::to_string(centers.degree()) +
                           " cannot determine polynomials of degree " + std::to_string(m - 1));
    return detail::assemble_impl(centers.points(), centers, k, values);
}

/// Arbitrary centers: the polynomial block is rank-checked instead.
inline LinearSystem assemble_system(const std::vector<Point>& points, const KernelParams& k,
                                    const Eigen::VectorXd& values) {
    LinearSystem sys = detail::assemble_impl(points, std::nullopt, k, values);
    const auto N = static_cast<Eigen::Index>(points.size());
    const auto Q = static_cast<Eigen::Index>(sys.poly.dimension());
    if (Q > 0) {
        const Eigen::MatrixXd P = sys.lhs.block(0, N, N, Q);
        if (Eigen::ColPivHouseholderQR<Eigen::MatrixXd>(P).rank() < Q)
            throw domain_error("assemble_system: centers do not determine the polynomial "
                               "part (rank-deficient side conditions)");
    }
    return sys;
}

/// The solved interpolant s(x) = sum_i c_i h(x - x_i) + sum_j b_j p_j(x).
struct Interpolant {
    KernelParams kernel;
    PolyBasis poly;
    std::vector<Point> centers;
    std::optional<CenterSet> center_set;
    Eigen::VectorXd kernel_coeffs;
    Eigen::VectorXd poly_coeffs;
    Eigen::VectorXd values;
    double cond_estimate;

    double operator()(const Point& x) const {
        if (x.size() != kernel.n) throw domain_error("Interpolant: point dimension mismatch");
        double s = 0.0;
        for (std::size_t i = 0; i < centers.size(); ++i)
            s += kernel_coeffs(static_cast<Eigen::Index>(i)) *
                 h_eval_r2(kernel, (x - centers[i]).squaredNorm());
        for (Eigen::Index j = 0; j < poly_coeffs.size(); ++j)
            s += poly_coeffs(j) * poly.eval(static_cast<int>(j), x);
        return s;
    }
};

namespace detail {

// Residual rhs - lhs*x accumulated in extended precision, for iterative
// refinement and the post-solve verification.
inline Eigen::VectorXd residual_ld(const Eigen::MatrixXd& lhs, const Eigen::VectorXd& x,
                                   const Eigen::VectorXd& rhs) {
    Eigen::VectorXd r(rhs.size());
    for (Eigen::Index i = 0; i < rhs.size(); ++i) {
        long double acc = rhs(i);
        for (Eigen::Index j = 0; j < lhs.cols(); ++j)
            acc -= static_cast<long double>(lhs(i, j)) * static_cast<long double>(x(j));
        r(i) = static_cast<double>(acc);
    }
    return r;
}

}  // namespace detail

inline Interpolant solve(const LinearSystem& sys) {
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys.lhs);
    const double smax = svd.singularValues()(0);
    const double smin = svd.singularValues()(svd.singularValues().size() - 1);
    const double cond = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
    if (!(cond <= 1e15))
        throw conditioning_error("solve: condition estimate " + std::to_string(cond) +
                                     " exceeds 1e15, system numerically singular",
                                 cond);

    const Eigen::FullPivLU<Eigen::MatrixXd> lu(sys.lhs);
    Eigen::VectorXd x = lu.solve(sys.rhs);
    const double mat_scale = sys.lhs.cwiseAbs().maxCoeff();
    for (int pass = 0; pass < 3; ++pass) {
        const Eigen::VectorXd r = detail::residual_ld(sys.lhs, x, sys.rhs);
        const double coeff_scale = std::max(x.cwiseAbs().maxCoeff(), 1e-300);
        if (r.cwiseAbs().maxCoeff() <= 1e-15 * mat_scale * coeff_scale) break;
        const Eigen::VectorXd dx = lu.solve(r);
        if (!dx.allFinite()) break;
        x += dx;
    }

    const auto N = static_cast<Eigen::Index>(sys.points.size());
    const auto Q = static_cast<Eigen::Index>(sys.poly.dimension());
    const Eigen::VectorXd r = detail::residual_ld(sys.lhs, x, sys.rhs);
    const double scale = std::max({sys.values.size() > 0 ? sys.values.cwiseAbs().maxCoeff() : 0.0,
                                   mat_scale * x.cwiseAbs().maxCoeff(), 1e-300});
    if (r.cwiseAbs().maxCoeff() > 1e-8 * scale)
        throw numerical_error("solve: residual " + std::to_string(r.cwiseAbs().maxCoeff()) +
                              " exceeds 1e-8 of the coefficient scale " + std::to_string(scale));

    return {sys.kernel, sys.poly,        sys.points, sys.centers,
            x.head(N),  x.tail(Q),       sys.values, cond};
}

inline double evaluate(const Interpolant& s, const Point& x) { return s(x); }

/// Empirical sup-norm surrogate: the worst absolute error over the evenly
/// spaced probe lattice of the given degree on the interpolant's simplex.
template <class F>
double max_error_on_lattice(const Interpolant& s, const F& target, int probe_degree) {
    if (!s.center_set)
        throw domain_error("max_error_on_lattice: interpolant was not built on a lattice");
    if (probe_degree < s.center_set->degree())
        throw domain_error("max_error_on_lattice: probe degree must be >= the center degree");
    const CenterSet probe(s.center_set->simplex(), probe_degree);
    double worst = 0.0;
    for (const Point& x : probe.points()) worst = std::max(worst, std::abs(target(x) - s(x)));
    return worst;
}

}  // namespace mqs
