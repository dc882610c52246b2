#include <cmath>
#include <numbers>

#include "doctest.h"
#include "macsf/errors.hpp"
#include "macsf/flow.hpp"

using namespace macsf;

namespace {

constexpr double kPi = std::numbers::pi;

double sup_diff(const SupportGrid& a, const SupportGrid& b)
{
    double d = 0.0;
    for (int i = 0; i < a.n(); ++i) d = std::max(d, std::fabs(a[i] - b[i]));
    return d;
}

}  // namespace

TEST_CASE("rhs")
{
    const SupportGrid unit = SupportGrid::constant(256, 1.0);
    const SupportGrid r = rhs(unit, PsiCoefficients{});
    for (int i = 0; i < r.n(); ++i) CHECK(r[i] == doctest::Approx(-1.0).epsilon(1e-14));

    // Uniform S with first-harmonic anisotropy: -1/rho - a12 sin - a21 cos.
    const double rho = 1.4;
    const PsiCoefficients drift{0, 0, 0.3, -0.2};
    const SupportGrid rd = rhs(SupportGrid::constant(256, rho), drift);
    for (int i = 0; i < rd.n(); ++i) {
        const double th = rd.theta(i);
        const double want = -1.0 / rho - 0.3 * std::sin(th) + 0.2 * std::cos(th);
        CHECK(rd[i] == doctest::Approx(want).epsilon(1e-13));
    }

    const SupportGrid ell = ellipse_support(1.0, 0.8, 256);
    const SupportGrid re = rhs(ell, PsiCoefficients{});
    const SupportGrid ke = curvature(ell);
    for (int i = 0; i < re.n(); ++i) CHECK(re[i] == -ke[i]);

    const SupportGrid bad =
        SupportGrid::from_function(256, [](double th) { return 1.0 + 0.5 * std::cos(2.0 * th); });
    CHECK_THROWS_AS(rhs(bad, PsiCoefficients{}), NonConvexError);
}

TEST_CASE("kbar_grid")
{
    const SupportGrid ell = ellipse_support(1.0, 0.8, 256);
    const SupportGrid kb0 = kbar_grid(ell, PsiCoefficients{});
    const SupportGrid ke = curvature(ell);
    for (int i = 0; i < kb0.n(); ++i) CHECK(kb0[i] == ke[i]);

    const SupportGrid unit = SupportGrid::constant(256, 1.0);
    const SupportGrid kb = kbar_grid(unit, PsiCoefficients{1, 0, 0, 0});
    for (int i = 0; i < kb.n(); ++i) {
        const double s = std::sin(kb.theta(i));
        CHECK(kb[i] == doctest::Approx(1.0 + s * s * s).epsilon(1e-14));
    }

    // kbar == -rhs bit for bit.
    const PsiCoefficients c{0.2, -0.1, 0.05, 0.3};
    const SupportGrid kbar = kbar_grid(ell, c);
    const SupportGrid r = rhs(ell, c);
    for (int i = 0; i < kbar.n(); ++i) CHECK(kbar[i] == -r[i]);
}

TEST_CASE("step")
{
    // One step from the unit circle tracks the exact radius sqrt(1 - 2t).
    const FlowState s0{0.0, SupportGrid::constant(256, 1.0)};
    const FlowState s1 = step(s0, PsiCoefficients{}, 0.2);
    CHECK(s1.t > 0.0);
    CHECK(sup_diff(s1.s, exact_circle(1.0, 0.0, 0.0, s1.t, 256)) < 1e-10);

    // Drifting circle oracle after one step.
    const PsiCoefficients drift{0, 0, 0.3, -0.2};
    const FlowState d1 = step(s0, drift, 0.2);
    CHECK(sup_diff(d1.s, exact_circle(1.0, 0.3, -0.2, d1.t, 256)) < 1e-8);

    const SupportGrid bad =
        SupportGrid::from_function(256, [](double th) { return 1.0 + 0.5 * std::cos(2.0 * th); });
    CHECK_THROWS_AS(step(FlowState{0.0, bad}, PsiCoefficients{}, 0.2), NonConvexError);

    // Tiny curve: the stability step size underflows.
    CHECK_THROWS_AS(step(FlowState{0.0, SupportGrid::constant(256, 8e-6)}, PsiCoefficients{}, 0.2),
                    StepUnderflowError);
}

TEST_CASE("run: unit circle collapse")
{
    const FlowTrace tr = run(SupportGrid::constant(256, 1.0), PsiCoefficients{}, FlowConfig{});
    CHECK(tr.stop_reason == StopReason::AreaReached);
    CHECK(std::fabs(tr.omega_hat - 0.5) < 5e-3);
    CHECK(tr.omega_hat >= tr.states.back().t);
    for (size_t j = 1; j < tr.states.size(); ++j) CHECK(tr.states[j].t > tr.states[j - 1].t);
    CHECK(tr.states.size() == tr.diags.size());
}

TEST_CASE("run: drifting circle keeps the collapse time")
{
    const FlowTrace tr =
        run(SupportGrid::constant(256, 1.0), PsiCoefficients{0, 0, 0.3, -0.2}, FlowConfig{});
    CHECK(tr.stop_reason == StopReason::AreaReached);
    CHECK(std::fabs(tr.omega_hat - 0.5) < 5e-3);
    double err = 0.0;
    for (const FlowState& st : tr.states) {
        if (st.t > 0.4) break;
        err = std::max(err, sup_diff(st.s, exact_circle(1.0, 0.3, -0.2, st.t, 256)));
    }
    CHECK(err < 1e-3);
}

TEST_CASE("run: ellipse collapses to a point")
{
    const FlowTrace tr = run(ellipse_support(1.0, 0.8, 256), PsiCoefficients{}, FlowConfig{});
    CHECK(tr.stop_reason == StopReason::AreaReached);
    CHECK(tr.diags.back().diameter < 0.1);
}

TEST_CASE("run: stop reasons")
{
    FlowConfig cap;
    cap.k_cap = 3.0;
    const FlowTrace tc = run(SupportGrid::constant(256, 1.0), PsiCoefficients{}, cap);
    CHECK(tc.stop_reason == StopReason::CurvatureCap);
    CHECK(!std::isfinite(tc.omega_hat));
    CHECK(tc.diags.back().k_max >= 3.0);

    FlowConfig short_run;
    short_run.t_max = 0.1;
    const FlowTrace tt = run(SupportGrid::constant(256, 1.0), PsiCoefficients{}, short_run);
    CHECK(tt.stop_reason == StopReason::TimeLimit);
    CHECK(tt.states.back().t == 0.1);

    const SupportGrid bad =
        SupportGrid::from_function(256, [](double th) { return 1.0 + 0.5 * std::cos(2.0 * th); });
    const FlowTrace tb = run(bad, PsiCoefficients{}, FlowConfig{});
    CHECK(tb.stop_reason == StopReason::LostConvexity);
    CHECK(tb.states.size() == 1);

    // cfl far beyond the stability limit blows up a non-uniform curve.
    FlowConfig unstable;
    unstable.cfl = 5.0;
    const FlowTrace tu = run(ellipse_support(1.0, 0.8, 256), PsiCoefficients{}, unstable);
    CHECK(tu.stop_reason == StopReason::LostConvexity);
}

TEST_CASE("run: checkpoints are landed on exactly")
{
    const std::vector<double> cps{0.1, 0.2};
    const FlowTrace tr =
        run(SupportGrid::constant(256, 1.0), PsiCoefficients{}, FlowConfig{}, cps);
    bool saw1 = false, saw2 = false;
    for (const FlowState& st : tr.states) {
        saw1 |= st.t == 0.1;
        saw2 |= st.t == 0.2;
    }
    CHECK(saw1);
    CHECK(saw2);
}

TEST_CASE("run is deterministic")
{
    const SupportGrid ell = ellipse_support(1.0, 0.8, 128);
    const PsiCoefficients c{-0.1, 0, 0, 0};
    const FlowTrace a = run(ell, c, FlowConfig{});
    const FlowTrace b = run(ell, c, FlowConfig{});
    REQUIRE(a.states.size() == b.states.size());
    CHECK(a.omega_hat == b.omega_hat);
    for (size_t j = 0; j < a.states.size(); ++j) {
        CHECK(a.states[j].t == b.states[j].t);
        CHECK(sup_diff(a.states[j].s, b.states[j].s) == 0.0);
    }
}

TEST_CASE("exact_circle")
{
    const SupportGrid s0 = exact_circle(1.0, 0.0, 0.0, 0.0, 64);
    for (int i = 0; i < s0.n(); ++i) CHECK(s0[i] == 1.0);

    const SupportGrid s = exact_circle(1.0, 0.0, 0.0, 0.375, 64);
    for (int i = 0; i < s.n(); ++i) CHECK(s[i] == doctest::Approx(0.5).epsilon(1e-15));

    const SupportGrid d = exact_circle(1.0, 0.3, -0.2, 0.3, 64);
    CHECK(d[16] == doctest::Approx(std::sqrt(0.4) - 0.09).epsilon(1e-14));  // theta = pi/2

    CHECK_THROWS_AS(exact_circle(1.0, 0.0, 0.0, 0.5, 64), BeyondCollapseError);
    CHECK_THROWS_AS(exact_circle(1.0, 0.0, 0.0, -0.1, 64), ValidationError);
}

TEST_CASE("containment_check")
{
    const SupportGrid two = SupportGrid::constant(64, 2.0);
    const SupportGrid one = SupportGrid::constant(64, 1.0);
    CHECK(containment_check(two, one));
    CHECK(containment_check(one, one));  // boundary case
    CHECK_FALSE(containment_check(ellipse_support(1.0, 0.8, 64), SupportGrid::constant(64, 0.9)));
}

TEST_CASE("omega_bound")
{
    CHECK(omega_bound(kPi, 1.0, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(omega_bound(kPi, 1.0, 0.2) == doctest::Approx(0.75).epsilon(1e-14));
    CHECK_THROWS_AS(omega_bound(kPi, 0.6, 0.2), HypothesisError);
    CHECK_THROWS_AS(omega_bound(-1.0, 1.0, 0.0), ValidationError);
}

TEST_CASE("area_identity_residual")
{
    FlowTrace tiny;
    tiny.states.resize(2);
    tiny.diags.resize(2);
    CHECK_THROWS_AS(area_identity_residual(tiny, PsiCoefficients{}), TraceError);

    const FlowTrace circle = run(SupportGrid::constant(256, 1.0), PsiCoefficients{}, FlowConfig{});
    CHECK(area_identity_residual(circle, PsiCoefficients{}) < 1e-6);

    const SupportGrid ell = ellipse_support(1.0, 0.8, 256);
    const FlowTrace e0 = run(ell, PsiCoefficients{}, FlowConfig{});
    CHECK(area_identity_residual(e0, PsiCoefficients{}) < 1e-2);

    const PsiCoefficients canon{-0.1, 0, 0, 0};
    const FlowTrace e1 = run(ell, canon, FlowConfig{});
    CHECK(area_identity_residual(e1, canon) < 1e-2);
}

TEST_CASE("monitor_bounds and the maximum principle")
{
    const FlowTrace circle = run(SupportGrid::constant(256, 1.0), PsiCoefficients{}, FlowConfig{});
    const MonitorReport mc = monitor_bounds(circle, PsiCoefficients{}, 0.0);
    CHECK(mc.kbar_vs_initial_slack >= -1e-12);
    CHECK(mc.k_lower_slack >= -1e-12);

    const SupportGrid ell = ellipse_support(1.0, 0.8, 256);
    const FlowTrace e0 = run(ell, PsiCoefficients{}, FlowConfig{});
    CHECK(monitor_bounds(e0, PsiCoefficients{}, 0.0).k_lower_slack >= -1e-6);

    const PsiCoefficients canon{-0.15, 0, 0, 0};
    const FlowTrace e1 = run(ell, canon, FlowConfig{});
    const MonitorReport m1 = monitor_bounds(e1, canon, 0.15);
    CHECK(m1.k_lower_slack >= -1e-6);
    CHECK(m1.kbar_vs_initial_slack >= -1e-6);

    // min kbar is non-decreasing record to record, not just versus t = 0.
    for (size_t j = 1; j < e1.diags.size(); ++j)
        CHECK(e1.diags[j].kbar_min >= e1.diags[j - 1].kbar_min - 1e-6);
}

TEST_CASE("quadratic curvature bound from the enclosed-area argument")
{
    // Wherever a disc of radius 2 rho about the origin fits inside the curve,
    // rho k^2 <= 2k + c bounds the curvature by (1 + sqrt(1 + c rho))/rho.
    const SupportGrid ell = ellipse_support(1.0, 0.8, 256);
    const PsiCoefficients canon{-0.1, 0, 0, 0};
    const double c = 0.1;
    const FlowTrace tr = run(ell, canon, FlowConfig{});
    for (size_t j = 0; j < tr.states.size(); ++j) {
        double smin = std::numeric_limits<double>::infinity();
        for (int i = 0; i < tr.states[j].s.n(); ++i) smin = std::min(smin, tr.states[j].s[i]);
        if (smin <= 0.0) continue;
        const double rho = 0.5 * smin;
        const double bound = (1.0 + std::sqrt(1.0 + c * rho)) / rho;
        CHECK(tr.diags[j].k_max <= bound + 1e-9);
    }
}
