#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include <mqs/simplex.hpp>

using namespace mqs;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

Point pt(std::initializer_list<double> xs) {
    Point p(static_cast<int>(xs.size()));
    int i = 0;
    for (double x : xs) p(i++) = x;
    return p;
}

Simplex unit_interval() { return Simplex({pt({0.0}), pt({1.0})}); }

Simplex right_triangle() {
    return Simplex({pt({0.0, 0.0}), pt({1.0, 0.0}), pt({0.0, 1.0})});
}

}  // namespace

TEST_CASE("barycentric coordinates at vertices and centroid") {
    const auto tri = right_triangle();
    const auto at_v1 = tri.barycentric(tri.vertex(0));
    CHECK_THAT(at_v1(0), WithinAbs(1.0, 1e-12));
    CHECK_THAT(at_v1(1), WithinAbs(0.0, 1e-12));
    CHECK_THAT(at_v1(2), WithinAbs(0.0, 1e-12));

    Point centroid = (tri.vertex(0) + tri.vertex(1) + tri.vertex(2)) / 3.0;
    const auto at_c = tri.barycentric(centroid);
    for (int i = 0; i < 3; ++i) CHECK_THAT(at_c(i), WithinRel(1.0 / 3.0, 1e-12));

    const auto seg = unit_interval();
    const auto at_q = seg.barycentric(pt({0.25}));
    CHECK_THAT(at_q(0), WithinRel(0.75, 1e-12));
    CHECK_THAT(at_q(1), WithinRel(0.25, 1e-12));
}

TEST_CASE("barycentric round trip on random coordinate vectors") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    for (int n = 1; n <= 4; ++n) {
        const auto s = regular_simplex(n, 1.0);
        for (int trial = 0; trial < 50; ++trial) {
            Eigen::VectorXd c(n + 1);
            double sum = 0.0;
            for (int i = 0; i <= n; ++i) sum += (c(i) = dist(rng));
            c /= sum;
            Point x = Point::Zero(n);
            for (int i = 0; i <= n; ++i) x += c(i) * s.vertex(i);
            const auto back = s.barycentric(x);
            // residual of the reconstruction, scaled by the diameter
            Point recon = Point::Zero(n);
            for (int i = 0; i <= n; ++i) recon += back(i) * s.vertex(i);
            CHECK((recon - x).norm() <= 1e-10 * s.diameter());
            CHECK((back - c).cwiseAbs().maxCoeff() <= 1e-10);
        }
    }
}

TEST_CASE("degenerate simplex is rejected") {
    CHECK_THROWS_AS(Simplex({pt({0.0, 0.0}), pt({1.0, 0.0}), pt({2.0, 0.0})}), domain_error);
    CHECK_THROWS_AS(Simplex({pt({0.0}), pt({0.0})}), domain_error);
}

TEST_CASE("evenly spaced points: counts and order") {
    const auto seg = unit_interval();
    const auto cs = evenly_spaced_points(seg, 2);
    REQUIRE(cs.size() == 3);
    // lexicographically decreasing tuples: (2,0), (1,1), (0,2)
    CHECK_THAT(cs.points()[0](0), WithinAbs(0.0, 1e-15));
    CHECK_THAT(cs.points()[1](0), WithinAbs(0.5, 1e-15));
    CHECK_THAT(cs.points()[2](0), WithinAbs(1.0, 1e-15));

    const auto tri10 = evenly_spaced_points(right_triangle(), 3);
    CHECK(tri10.size() == 10);

    for (int n = 1; n <= 4; ++n) {
        const auto s = regular_simplex(n, 0.7);
        for (int l = 1; l <= 6; ++l)
            CHECK(evenly_spaced_points(s, l).size() == binomial(n + l, n));
    }
}

TEST_CASE("degree-1 lattice is the vertex set") {
    const auto s = regular_simplex(3, 0.4);
    const auto cs = evenly_spaced_points(s, 1);
    REQUIRE(cs.size() == 4);
    for (int i = 0; i < 4; ++i)
        CHECK((cs.points()[i] - s.vertex(i)).norm() <= 1e-14);
}

TEST_CASE("lattice barycentric coordinates are multiples of 1/l") {
    const auto s = regular_simplex(2, 1.3);
    const int l = 4;
    const auto cs = evenly_spaced_points(s, l);
    for (int i = 0; i < cs.size(); ++i) {
        const auto bc = s.barycentric(cs.points()[i]);
        for (int j = 0; j <= 2; ++j) {
            const double expected = static_cast<double>(cs.barycentric_indices()[i][j]) / l;
            CHECK_THAT(bc(j), WithinAbs(expected, 1e-10));
        }
    }
}

TEST_CASE("diameter") {
    CHECK_THAT(Simplex({pt({0.0}), pt({0.05})}).diameter(), WithinRel(0.05, 1e-14));
    CHECK_THAT(right_triangle().diameter(), WithinRel(std::sqrt(2.0), 1e-14));
}

TEST_CASE("regular simplex has all edges equal") {
    CHECK_THAT(regular_simplex(1, 1.0).vertex(1)(0), WithinRel(1.0, 1e-14));
    for (int n : {2, 3, 4}) {
        const double d = (n == 3) ? 0.5 : 1.0;
        const auto s = regular_simplex(n, d);
        for (int i = 0; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                CHECK_THAT((s.vertex(i) - s.vertex(j)).norm(), WithinAbs(d, 1e-12));
        CHECK_THAT(s.diameter(), WithinRel(d, 1e-12));
    }
}
