#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "macsf/curve.hpp"
#include "macsf/errors.hpp"

using namespace macsf;

namespace {

constexpr double kPi = std::numbers::pi;

double sup_err(const SupportGrid& got, const SupportGrid& want)
{
    double e = 0.0;
    for (int i = 0; i < got.n(); ++i) e = std::max(e, std::fabs(got[i] - want[i]));
    return e;
}

}  // namespace

TEST_CASE("SupportGrid validation")
{
    CHECK_THROWS_AS(SupportGrid(std::vector<double>(15, 1.0)), ValidationError);
    CHECK_THROWS_AS(SupportGrid(std::vector<double>(17, 1.0)), ValidationError);
    CHECK_THROWS_AS(SupportGrid(std::vector<double>(8, 1.0)), ValidationError);
    std::vector<double> bad(16, 1.0);
    bad[3] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(SupportGrid(std::move(bad)), ValidationError);
    CHECK_NOTHROW(SupportGrid(std::vector<double>(16, 1.0)));
}

TEST_CASE("deriv1")
{
    const int n = 256;
    CHECK(sup_err(deriv1(SupportGrid::constant(n, 1.0)), SupportGrid::constant(n, 0.0)) == 0.0);

    const SupportGrid s = SupportGrid::from_function(n, [](double th) { return std::sin(th); });
    const SupportGrid want = SupportGrid::from_function(n, [](double th) { return std::cos(th); });
    CHECK(sup_err(deriv1(s), want) < 1e-3);

    const SupportGrid c = SupportGrid::from_function(n, [](double th) { return std::cos(th); });
    const SupportGrid wantc = SupportGrid::from_function(n, [](double th) { return -std::sin(th); });
    CHECK(sup_err(deriv1(c), wantc) < 1e-3);
}

TEST_CASE("deriv2 and its convergence order")
{
    const int n = 256;
    CHECK(sup_err(deriv2(SupportGrid::constant(n, 3.7)), SupportGrid::constant(n, 0.0)) == 0.0);

    const SupportGrid s = SupportGrid::from_function(n, [](double th) { return std::sin(th); });
    const SupportGrid want = SupportGrid::from_function(n, [](double th) { return -std::sin(th); });
    CHECK(sup_err(deriv2(s), want) < 1e-3);

    auto third = [](int m) {
        return SupportGrid::from_function(m, [](double th) { return std::sin(3.0 * th); });
    };
    auto third_dd = [](int m) {
        return SupportGrid::from_function(m, [](double th) { return -9.0 * std::sin(3.0 * th); });
    };
    CHECK(sup_err(deriv2(third(256)), third_dd(256)) < 5e-3);

    const double e128 = sup_err(deriv2(third(128)), third_dd(128));
    const double e256 = sup_err(deriv2(third(256)), third_dd(256));
    const double ratio = e128 / e256;
    CHECK(ratio > 3.5);
    CHECK(ratio < 4.5);
}

TEST_CASE("curvature")
{
    const SupportGrid circle = SupportGrid::constant(256, 2.5);
    const SupportGrid k = curvature(circle);
    for (int i = 0; i < k.n(); ++i) CHECK(k[i] == doctest::Approx(0.4).epsilon(1e-13));

    const SupportGrid ell = ellipse_support(1.0, 0.8, 256);
    const SupportGrid ke = curvature(ell);
    CHECK(std::fabs(ke[0] - 1.0 / 0.64) < 1e-3);   // theta = 0, major-axis vertex
    CHECK(std::fabs(ke[64] - 0.8) < 1e-3);         // theta = pi/2, minor-axis vertex

    const SupportGrid bad =
        SupportGrid::from_function(256, [](double th) { return 1.0 + 0.5 * std::cos(2.0 * th); });
    CHECK_THROWS_WITH_AS(curvature(bad), doctest::Contains("theta"), NonConvexError);
}

TEST_CASE("reconstruct")
{
    const PlaneCurve unit = reconstruct(SupportGrid::constant(64, 1.0));
    for (int i = 0; i < 64; ++i) {
        const double th = 2.0 * kPi * i / 64.0;
        CHECK(std::fabs(unit.points[i][0] - std::cos(th)) < 1e-14);
        CHECK(std::fabs(unit.points[i][1] - std::sin(th)) < 1e-14);
    }

    const PlaneCurve two = reconstruct(SupportGrid::constant(64, 2.0));
    for (const Vec2& p : two.points)
        CHECK(std::hypot(p[0], p[1]) == doctest::Approx(2.0).epsilon(1e-14));

    const PlaneCurve ell = reconstruct(ellipse_support(1.0, 0.8, 256));
    for (const Vec2& p : ell.points)
        CHECK(std::fabs(p[0] * p[0] + p[1] * p[1] / 0.64 - 1.0) < 1e-4);
}

TEST_CASE("support recovery from reconstruct")
{
    const SupportGrid s = SupportGrid::from_function(256, [&](double th) {
        return 1.0 + 0.2 * std::cos(2.0 * th) + 0.05 * std::sin(3.0 * th) + 0.1 * std::cos(th);
    });
    REQUIRE(convexity_margin(s) > 0.0);
    const PlaneCurve c = reconstruct(s);
    for (int i = 0; i < s.n(); ++i) {
        const double th = s.theta(i);
        const double recovered = c.points[i][0] * std::cos(th) + c.points[i][1] * std::sin(th);
        CHECK(recovered == doctest::Approx(s[i]).epsilon(1e-12));
    }
}

TEST_CASE("area")
{
    CHECK(area(SupportGrid::constant(256, 1.0)) == doctest::Approx(kPi).epsilon(1e-10));
    CHECK(area(SupportGrid::constant(256, 1.7)) == doctest::Approx(kPi * 1.7 * 1.7).epsilon(1e-10));
    CHECK(area(ellipse_support(1.0, 0.8, 256)) == doctest::Approx(0.8 * kPi).epsilon(1e-4));
    // Eccentric axes need a finer grid for the 1e-4 relative target (the
    // integrand carries the second-order S_thth stencil).
    for (double a : {0.5, 1.1, 2.0})
        for (double b : {0.6, 1.4}) {
            const double got = area(ellipse_support(a, b, 512));
            CHECK(std::fabs(got - kPi * a * b) / (kPi * a * b) < 1e-4);
        }
}

TEST_CASE("length")
{
    CHECK(length(SupportGrid::constant(256, 1.0)) == doctest::Approx(2.0 * kPi).epsilon(1e-12));
    CHECK(length(SupportGrid::constant(256, 0.3)) == doctest::Approx(0.6 * kPi).epsilon(1e-12));

    const SupportGrid ell = ellipse_support(1.0, 0.8, 256);
    const PlaneCurve c = reconstruct(ell);
    double poly = 0.0;
    for (size_t i = 0; i < c.points.size(); ++i) {
        const Vec2& p = c.points[i];
        const Vec2& q = c.points[(i + 1) % c.points.size()];
        poly += std::hypot(q[0] - p[0], q[1] - p[1]);
    }
    CHECK(std::fabs(length(ell) - poly) < 1e-3);
}

TEST_CASE("convexity_margin")
{
    CHECK(convexity_margin(SupportGrid::constant(256, 1.0)) == doctest::Approx(1.0).epsilon(1e-13));

    // First harmonics are in the kernel of (d^2 + 1).
    const SupportGrid first =
        SupportGrid::from_function(256, [](double th) { return 1.0 + 0.9 * std::cos(th); });
    CHECK(std::fabs(convexity_margin(first) - 1.0) < 1e-3);

    const SupportGrid second =
        SupportGrid::from_function(256, [](double th) { return 1.0 + 0.5 * std::cos(2.0 * th); });
    CHECK(std::fabs(convexity_margin(second) - (-0.5)) < 5e-3);
}

TEST_CASE("ellipse_support")
{
    const SupportGrid s = ellipse_support(1.0, 1.0, 64);
    for (int i = 0; i < s.n(); ++i) CHECK(s[i] == doctest::Approx(1.0).epsilon(1e-15));
    const SupportGrid r = ellipse_support(0.7, 0.7, 64);
    for (int i = 0; i < r.n(); ++i) CHECK(r[i] == doctest::Approx(0.7).epsilon(1e-15));
    CHECK_THROWS_AS(ellipse_support(0.0, 1.0), ValidationError);
    CHECK_THROWS_AS(ellipse_support(1.0, -2.0), ValidationError);
}

TEST_CASE("diameter")
{
    CHECK(diameter(SupportGrid::constant(64, 1.0)) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(diameter(SupportGrid::constant(64, 0.4)) == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(diameter(ellipse_support(1.0, 0.8, 256)) == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("sample_periodic")
{
    const SupportGrid s = SupportGrid::from_function(
        256, [](double th) { return 1.0 + 0.3 * std::cos(th) + 0.1 * std::sin(2.0 * th); });
    for (double th : {0.123, 1.9, 4.4, -0.6, 7.0}) {
        const double want = 1.0 + 0.3 * std::cos(th) + 0.1 * std::sin(2.0 * th);
        CHECK(std::fabs(sample_periodic(s, th) - want) < 1e-5);
    }
    CHECK(sample_periodic(s, s.theta(17)) == s[17]);
}

TEST_CASE("first_harmonic")
{
    const SupportGrid s = SupportGrid::from_function(256, [](double th) {
        return 1.0 + 0.3 * std::cos(th) + 0.4 * std::sin(th) + 0.05 * std::cos(3.0 * th);
    });
    const Vec2 h = first_harmonic(s);
    CHECK(h[0] == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(h[1] == doctest::Approx(0.4).epsilon(1e-12));
}
