#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include <mqs/mn.hpp>

using namespace mqs;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("case classification", "[mn]") {
    REQUIRE(classify_case(2, -1.0, 1.0, 2).tag == MnCaseTag::Imq);
    REQUIRE(classify_case(1, -1.0, 1.0, 1).tag == MnCaseTag::Imq1d);
    REQUIRE(classify_case(1, 1.0, 1.0, 1).tag == MnCaseTag::Mq);
    REQUIRE(classify_case(4, -2.5, 1.0, 3).tag == MnCaseTag::Imq);
    // |n+beta| = 0.5 < 1 and beta is neither -1-with-n=1 nor positive
    REQUIRE_THROWS_AS(classify_case(1, -1.5, 1.0, 1), unsupported_regime);
    REQUIRE_THROWS_AS(classify_case(3, -2.5, 1.0, 1), unsupported_regime);
    // n+beta+1 < 0
    REQUIRE_THROWS_AS(classify_case(1, -3.0, 1.0, 1), unsupported_regime);
    // invalid inputs are domain errors, not regime errors
    REQUIRE_THROWS_AS(classify_case(2, 2.0, 1.0, 1), domain_error);
    REQUIRE_THROWS_AS(classify_case(2, -1.0, 0.0, 1), domain_error);
    REQUIRE_THROWS_AS(classify_case(2, -1.0, 1.0, 0), domain_error);
    // the regime message names the failed hypotheses
    try {
        classify_case(1, -1.5, 1.0, 1);
        FAIL("expected unsupported_regime");
    } catch (const unsupported_regime& e) {
        const std::string what = e.what();
        REQUIRE(what.find("|n+beta|") != std::string::npos);
        REQUIRE(what.find("beta > 0") != std::string::npos);
    }
}

TEST_CASE("MN values", "[mn]") {
    SECTION("inverse multiquadric normalization point") {
        for (int l = 1; l <= 5; ++l) {
            const MnCase mc = classify_case(2, -1.0, 1.0, l);
            REQUIRE_THAT(mn_value(mc, 1.0), WithinRel(1.0, 1e-12));
        }
    }
    SECTION("one-dimensional value at the breakpoint") {
        const MnCase mc = classify_case(1, -1.0, 1.0, 1);
        const double c = 2.0 / std::sqrt(3.0);
        const double oracle =
            std::pow(c, -1.5) *
            std::sqrt(1.0 / std::numbers::ln2 + 2.0 * std::sqrt(3.0) * std::exp(0.25));
        REQUIRE_THAT(mn_value(mc, c), WithinRel(oracle, 1e-12));
        REQUIRE_THAT(oracle, WithinAbs(1.9561, 1e-4));
    }
    SECTION("multiquadric hand value") {
        const MnCase mc = classify_case(1, 1.0, 1.0, 1);
        const double oracle =
            std::pow(2.0, -0.75) * std::sqrt(std::pow(1.5, 1.5) * std::exp(0.75));
        REQUIRE_THAT(mn_value(mc, 2.0), WithinRel(oracle, 1e-12));
    }
    SECTION("d0 scales the mq value linearly") {
        const MnCase one = classify_case(1, 1.0, 1.0, 1, 1.0);
        const MnCase seven = classify_case(1, 1.0, 1.0, 1, 7.0);
        REQUIRE_THAT(mn_value(seven, 0.8), WithinRel(7.0 * mn_value(one, 0.8), 1e-12));
    }
    SECTION("linear scale overflows where the log stays finite") {
        const MnCase mc = classify_case(2, -1.0, 1.0, 2);
        REQUIRE(std::isfinite(log_mn_value(mc, 1e6)));
        REQUIRE_THROWS_AS(mn_value(mc, 1e6), overflow_error);
        REQUIRE_THROWS_AS(mn_value(mc, 0.0), domain_error);
    }
}

TEST_CASE("MN curve sampling", "[mn]") {
    const MnCase mc = classify_case(2, -1.0, 1.0, 2);
    SECTION("two points are exactly the endpoints") {
        const MnCurve cv = mn_curve(mc, 0.5, 4.0, 2);
        REQUIRE(cv.c.size() == 2);
        REQUIRE(cv.c[0] == 0.5);
        REQUIRE(cv.c[1] == 4.0);
    }
    SECTION("grid is strictly increasing and deterministic") {
        const MnCurve a = mn_curve(mc, 1e-3, 1e3, 101);
        const MnCurve b = mn_curve(mc, 1e-3, 1e3, 101);
        REQUIRE(a.c == b.c);
        REQUIRE(a.log_mn == b.log_mn);
        for (std::size_t i = 1; i < a.c.size(); ++i) REQUIRE(a.c[i] > a.c[i - 1]);
    }
    SECTION("endpoint values dominate the center value") {
        const MnCurve cv = mn_curve(mc, 1e-3, 1e3, 101);
        const double at_one = log_mn_value(mc, 1.0);
        REQUIRE(cv.log_mn.front() > at_one);
        REQUIRE(cv.log_mn.back() > at_one);
    }
    SECTION("bad grids are rejected") {
        REQUIRE_THROWS_AS(mn_curve(mc, 0.0, 1.0, 10), domain_error);
        REQUIRE_THROWS_AS(mn_curve(mc, 2.0, 1.0, 10), domain_error);
        REQUIRE_THROWS_AS(mn_curve(mc, 0.1, 1.0, 1), domain_error);
    }
}

TEST_CASE("MN minimization", "[mn]") {
    SECTION("interior minimum for the reference inverse-multiquadric setup") {
        const MnCase mc = classify_case(2, -1.0, 1.0, 2);
        const MnResult r = minimize_mn(mc, 1e-3, 1e3);
        REQUIRE(r.status == MnStatus::InteriorMin);
        REQUIRE(r.c_star.has_value());
        REQUIRE(r.mn_at_c_star <= 1.0 + 1e-12);
        // local minimum
        const double cs = *r.c_star;
        REQUIRE(mn_value(mc, cs * (1.0 + 1e-6)) >= r.mn_at_c_star * (1.0 - 1e-10));
        REQUIRE(mn_value(mc, cs * (1.0 - 1e-6)) >= r.mn_at_c_star * (1.0 - 1e-10));
        // within one cell of the scan argmin
        const double la = std::log(1e-3), lb = std::log(1e3);
        int best = 0;
        double best_f = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 2001; ++i) {
            const double ci = std::exp(la + (lb - la) * i / 2000.0);
            const double fi = log_mn_value(mc, ci);
            if (fi < best_f) {
                best_f = fi;
                best = i;
            }
        }
        const double cell = std::exp((lb - la) / 2000.0);
        const double cg = std::exp(la + (lb - la) * best / 2000.0);
        REQUIRE(cs >= cg / cell);
        REQUIRE(cs <= cg * cell);
    }
    SECTION("interior minimum for the multiquadric setup with negative degree exponent") {
        const MnCase mc = classify_case(1, 1.0, 1.0, 1);
        const MnResult r = minimize_mn(mc);
        REQUIRE(r.status == MnStatus::InteriorMin);
        REQUIRE(r.c_star.has_value());
    }
    SECTION("d0 does not move the minimizer") {
        const MnResult one = minimize_mn(classify_case(1, 1.0, 1.0, 1, 1.0));
        const MnResult seven = minimize_mn(classify_case(1, 1.0, 1.0, 1, 7.0));
        // near the flat minimum the function only resolves c to about
        // sqrt(eps), so the two argmins can drift a few 1e-8 apart
        REQUIRE_THAT(*seven.c_star, WithinRel(*one.c_star, 1e-6));
        REQUIRE_THAT(seven.mn_at_c_star, WithinRel(7.0 * one.mn_at_c_star, 1e-9));
    }
    SECTION("decaying multiquadric reports an infimum at zero") {
        const MnCase mc = classify_case(1, 4.5, 1.0, 1);  // 1+beta-n-4l = 0.5 > 0
        const MnResult r = minimize_mn(mc);
        REQUIRE(r.status == MnStatus::InfimumAtZero);
        REQUIRE_FALSE(r.c_star.has_value());
    }
    SECTION("argmin on a bracket edge is not an interior minimum") {
        const MnCase mc = classify_case(2, -1.0, 1.0, 2);
        const MnResult r = minimize_mn(mc, 10.0, 1e3);
        REQUIRE(r.status == MnStatus::UnboundedWarning);
        REQUIRE_FALSE(r.c_star.has_value());
    }
    SECTION("bad brackets are rejected") {
        const MnCase mc = classify_case(2, -1.0, 1.0, 2);
        REQUIRE_THROWS_AS(minimize_mn(mc, 1.0, 1.0), domain_error);
        REQUIRE_THROWS_AS(minimize_mn(mc, 0.0, 1.0), domain_error);
    }
}

TEST_CASE("limit classification", "[mn]") {
    SECTION("inverse multiquadric blows up both ways") {
        const LimitBehavior lb = limit_behavior(classify_case(2, -1.0, 1.0, 2));
        REQUIRE(lb.at_zero == LimitClass::PlusInfinity);
        REQUIRE(lb.at_infinity == LimitClass::PlusInfinity);
        REQUIRE(lb.note.empty());
    }
    SECTION("boundary n+beta+1 = 0 carries a note") {
        const LimitBehavior lb = limit_behavior(classify_case(1, -2.0, 1.0, 1));
        REQUIRE(lb.at_zero == LimitClass::PlusInfinity);
        REQUIRE_FALSE(lb.note.empty());
    }
    SECTION("one-dimensional case blows up both ways") {
        const LimitBehavior lb = limit_behavior(classify_case(1, -1.0, 1.0, 1));
        REQUIRE(lb.at_zero == LimitClass::PlusInfinity);
        REQUIRE(lb.at_infinity == LimitClass::PlusInfinity);
    }
    SECTION("multiquadric splits on the sign of 1+beta-n-4l") {
        REQUIRE(limit_behavior(classify_case(1, 1.0, 1.0, 1)).at_zero ==
                LimitClass::PlusInfinity);
        REQUIRE(limit_behavior(classify_case(1, 4.5, 1.0, 1)).at_zero == LimitClass::Zero);
        // 1+5-2-4 = 0
        REQUIRE(limit_behavior(classify_case(2, 5.0, 1.0, 1)).at_zero ==
                LimitClass::FinitePositive);
    }
    SECTION("numerical direction agrees with the classification") {
        // +inf at both ends: values at the extremes dominate the middle
        const MnCase imq = classify_case(2, -1.0, 1.0, 2);
        const double mid = log_mn_value(imq, 1.0);
        REQUIRE(log_mn_value(imq, 1e-6) > mid + std::log(1e6));
        REQUIRE(log_mn_value(imq, 1e6) > mid + std::log(1e6));
        // zero at the origin: log values keep falling as c shrinks
        const MnCase dec = classify_case(1, 4.5, 1.0, 1);
        REQUIRE(log_mn_value(dec, 1e-8) < log_mn_value(dec, 1e-6) - 0.2);
        REQUIRE(log_mn_value(dec, 1e-6) < log_mn_value(dec, 1e-4) - 0.2);
        // finite positive limit: early values settle near the closed-form limit
        const MnCase fin = classify_case(2, 5.0, 1.0, 1);
        REQUIRE_THAT(mn_value(fin, 1e-6), WithinAbs(2.0 / std::numbers::e, 1e-4));
        REQUIRE(log_mn_value(fin, 1e6) > std::log(1e6));
    }
}
