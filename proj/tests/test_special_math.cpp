#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include <mqs/special_math.hpp>

using namespace mqs;
using Catch::Matchers::WithinRel;

namespace {

// Independent recursion for unit ball volumes: a_n = a_{n-2} * 2*pi/n.
double ball_volume_recursive(int n) {
    double a0 = 1.0, a1 = 2.0;
    if (n == 0) return a0;
    for (int k = 2; k <= n; ++k) {
        const double next = (k % 2 == 0 ? a0 : a1) * 2.0 * std::numbers::pi / k;
        (k % 2 == 0 ? a0 : a1) = next;
    }
    return n % 2 == 0 ? a0 : a1;
}

// Count lattice tuples (k_1..k_{n+1}) with sum l by brute-force enumeration.
long count_lattice_tuples(int n, int l) {
    long count = 0;
    // odometer over n+1 digits in [0, l]
    std::vector<int> k(n + 1, 0);
    while (true) {
        int sum = 0;
        for (int v : k) sum += v;
        if (sum == l) ++count;
        int pos = 0;
        while (pos <= n && ++k[pos] > l) k[pos++] = 0;
        if (pos > n) break;
    }
    return count;
}

}  // namespace

TEST_CASE("gamma matches classical values") {
    const double sqrt_pi = std::sqrt(std::numbers::pi);
    CHECK_THAT(mqs::gamma(0.5), WithinRel(sqrt_pi, 1e-14));
    CHECK_THAT(mqs::gamma(-0.5), WithinRel(-2.0 * sqrt_pi, 1e-13));
    CHECK_THAT(mqs::gamma(5.0), WithinRel(24.0, 1e-14));
    CHECK_THAT(mqs::gamma(1.0), WithinRel(1.0, 1e-14));
    CHECK_THAT(mqs::gamma(10.0), WithinRel(362880.0, 1e-14));
}

TEST_CASE("gamma agrees with std::tgamma away from poles") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(0.05, 50.0);
    for (int i = 0; i < 200; ++i) {
        const double x = dist(rng);
        CHECK_THAT(mqs::gamma(x), WithinRel(std::tgamma(x), 1e-12));
    }
}

TEST_CASE("gamma functional equation on (-10, 10)") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    int tested = 0;
    while (tested < 1000) {
        const double x = dist(rng);
        // keep both x and x+1 well clear of the poles
        const bool near_pole = std::abs(x - std::round(x)) < 1e-3 || std::abs(x) < 1e-3;
        if (near_pole) continue;
        ++tested;
        CHECK_THAT(mqs::gamma(x + 1.0), WithinRel(x * mqs::gamma(x), 1e-12));
    }
}

TEST_CASE("gamma rejects pole arguments") {
    CHECK_THROWS_AS(mqs::gamma(0.0), domain_error);
    CHECK_THROWS_AS(mqs::gamma(-3.0), domain_error);
    CHECK_THROWS_AS(mqs::gamma(-2.0 + 1e-13), domain_error);
    CHECK_NOTHROW(mqs::gamma(-2.0 + 1e-9));
}

TEST_CASE("unit ball volumes") {
    CHECK_THAT(unit_ball_volume(1), WithinRel(2.0, 1e-14));
    CHECK_THAT(unit_ball_volume(2), WithinRel(std::numbers::pi, 1e-14));
    CHECK_THAT(unit_ball_volume(3), WithinRel(4.0 * std::numbers::pi / 3.0, 1e-14));
    for (int n = 1; n <= 20; ++n)
        CHECK_THAT(unit_ball_volume(n), WithinRel(ball_volume_recursive(n), 1e-12));
    CHECK_THROWS_AS(unit_ball_volume(0), domain_error);
}

TEST_CASE("binomial basics") {
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(7, 0) == 1);
    CHECK(binomial(0, 0) == 1);
    CHECK(binomial(12, 12) == 1);
    // number of degree-3 lattice points in a triangle
    CHECK(binomial(2 + 3, 2) == count_lattice_tuples(2, 3));
}

TEST_CASE("binomial symmetry and Pascal identity") {
    for (int a = 1; a <= 30; ++a) {
        for (int b = 0; b <= a; ++b) {
            CHECK(binomial(a, b) == binomial(a, a - b));
            if (b >= 1 && b <= a - 1)
                CHECK(binomial(a, b) == binomial(a - 1, b - 1) + binomial(a - 1, b));
        }
    }
}

TEST_CASE("binomial overflow and bad arguments") {
    CHECK_THROWS_AS(binomial(200, 100), mqs::overflow_error);
    CHECK_THROWS_AS(binomial(3, 5), domain_error);
    CHECK_THROWS_AS(binomial(-1, 0), domain_error);
    CHECK(binomial(62, 31) > 0);  // largest central coefficient below 2^63
}

TEST_CASE("log_add_exp is stable") {
    CHECK_THAT(detail::log_add_exp(0.0, 0.0), WithinRel(std::log(2.0), 1e-14));
    CHECK_THAT(detail::log_add_exp(1000.0, 0.0), WithinRel(1000.0, 1e-13));
    CHECK_THAT(detail::log_add_exp(-1000.0, 0.0), WithinRel(0.0, 1e-13));
}
