#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "special_math.hpp"

namespace mqs {

using Point = Eigen::VectorXd;

/// An n-simplex given by n+1 affinely independent vertices in R^n.
class Simplex {
public:
    explicit Simplex(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
        if (vertices_.size() < 2)
            throw domain_error("Simplex: need at least 2 vertices");
        const int n = static_cast<int>(vertices_[0].size());
        if (static_cast<int>(vertices_.size()) != n + 1)
            throw domain_error("Simplex: an n-simplex needs exactly n+1 vertices");
        for (const auto& v : vertices_)
            if (static_cast<int>(v.size()) != n)
                throw domain_error("Simplex: vertex dimension mismatch");

        diameter_ = 0.0;
        for (std::size_t i = 0; i < vertices_.size(); ++i)
            for (std::size_t j = i + 1; j < vertices_.size(); ++j)
                diameter_ = std::max(diameter_, (vertices_[i] - vertices_[j]).norm());
        if (diameter_ <= 0.0) throw domain_error("Simplex: zero diameter");

        Eigen::MatrixXd edges(n, n);
        for (int i = 0; i < n; ++i) edges.col(i) = vertices_[i + 1] - vertices_[0];
        edge_svd_.compute(edges, Eigen::ComputeFullU | Eigen::ComputeFullV);
        if (edge_svd_.singularValues()(n - 1) <= 1e-10 * diameter_)
            throw domain_error("Simplex: degenerate (vertices nearly affinely dependent)");
    }

    int dim() const { return static_cast<int>(vertices_[0].size()); }
    const std::vector<Point>& vertices() const { return vertices_; }
    const Point& vertex(int i) const { return vertices_[static_cast<std::size_t>(i)]; }
    double diameter() const { return diameter_; }

    /// Barycentric coordinates of x: the (n+1)-vector c with sum(c) = 1 and
    /// x = sum c_i v_i. Coordinates go negative outside the simplex.
    Eigen::VectorXd barycentric(const Point& x) const {
        const int n = dim();
        if (static_cast<int>(x.size()) != n)
            throw domain_error("barycentric: point dimension mismatch");
        const Eigen::VectorXd w = edge_svd_.solve(x - vertices_[0]);
        Eigen::VectorXd coords(n + 1);
        coords.tail(n) = w;
        coords(0) = 1.0 - w.sum();
        return coords;
    }

private:
    std::vector<Point> vertices_;
    double diameter_ = 0.0;
    Eigen::JacobiSVD<Eigen::MatrixXd> edge_svd_;
};

inline Eigen::VectorXd barycentric_coords(const Simplex& s, const Point& x) {
    return s.barycentric(x);
}

namespace detail {

// All tuples of `parts` non-negative integers summing to `total`, in
// lexicographically decreasing order.
inline void enumerate_compositions(int total, int parts, std::vector<int>& prefix,
                                   std::vector<std::vector<int>>& out) {
    if (parts == 1) {
        prefix.push_back(total);
        out.push_back(prefix);
        prefix.pop_back();
        return;
    }
    for (int k = total; k >= 0; --k) {
        prefix.push_back(k);
        enumerate_compositions(total - k, parts - 1, prefix, out);
        prefix.pop_back();
    }
}

inline std::vector<std::vector<int>> compositions(int total, int parts) {
    std::vector<std::vector<int>> out;
    std::vector<int> prefix;
    enumerate_compositions(total, parts, prefix, out);
    return out;
}

}  // namespace detail

/// The evenly spaced points of degree l in a simplex: all points whose
/// barycentric coordinates are (k_1/l, ..., k_{n+1}/l) with sum k_i = l.
class CenterSet {
public:
    CenterSet(Simplex simplex, int degree) : simplex_(std::move(simplex)), degree_(degree) {
        if (degree_ < 1) throw domain_error("CenterSet: degree must be >= 1");
        const int n = simplex_.dim();
        const std::int64_t expected = binomial(n + degree_, n);  // throws on overflow
        indices_ = detail::compositions(degree_, n + 1);
        if (static_cast<std::int64_t>(indices_.size()) != expected)
            throw numerical_error("CenterSet: lattice enumeration count mismatch");
        points_.reserve(indices_.size());
        for (const auto& k : indices_) {
            Point p = Point::Zero(n);
            for (int i = 0; i <= n; ++i)
                p += (static_cast<double>(k[i]) / degree_) * simplex_.vertex(i);
            points_.push_back(std::move(p));
        }
    }

    const Simplex& simplex() const { return simplex_; }
    int degree() const { return degree_; }
    int size() const { return static_cast<int>(points_.size()); }
    const std::vector<Point>& points() const { return points_; }
    const std::vector<std::vector<int>>& barycentric_indices() const { return indices_; }

private:
    Simplex simplex_;
    int degree_;
    std::vector<std::vector<int>> indices_;
    std::vector<Point> points_;
};

inline CenterSet evenly_spaced_points(const Simplex& s, int degree) {
    return CenterSet(s, degree);
}

/// Regular n-simplex with all edge lengths equal to d, one vertex at the
/// origin. Built incrementally: each new vertex sits above the centroid of
/// the previous face.
inline Simplex regular_simplex(int n, double d) {
    if (n < 1) throw domain_error("regular_simplex: n must be >= 1");
    if (!(d > 0.0)) throw domain_error("regular_simplex: edge length must be positive");
    std::vector<Point> v;
    v.push_back(Point::Zero(n));
    for (int k = 1; k <= n; ++k) {
        Point centroid = Point::Zero(n);
        for (const auto& p : v) centroid += p;
        centroid /= static_cast<double>(v.size());
        const double rc2 = (centroid - v[0]).squaredNorm();
        Point next = centroid;
        next(k - 1) = std::sqrt(d * d - rc2);
        v.push_back(std::move(next));
    }
    return Simplex(std::move(v));
}

}  // namespace mqs
