#include "macsf/flow.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "macsf/errors.hpp"

namespace macsf {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<double> psi_table(const SupportGrid& s, const PsiCoefficients& c)
{
    std::vector<double> p(static_cast<size_t>(s.n()));
    for (int i = 0; i < s.n(); ++i) p[static_cast<size_t>(i)] = psi_eval(c, s.theta(i));
    return p;
}

[[noreturn]] void throw_nonconvex_at(const SupportGrid& q, int i)
{
    char buf[96];
    std::snprintf(buf, sizeof buf, "curve not convex at theta=%.10g (S_thth + S = %.10g)",
                  q.theta(i), q[i]);
    throw NonConvexError(buf);
}

// One Heun step from s, with q = curvature_radius(s) already computed.
SupportGrid heun(const SupportGrid& s, const SupportGrid& q, const std::vector<double>& psi,
                 double dt)
{
    const int n = s.n();
    SupportGrid stage = s;
    std::vector<double> f0(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        f0[static_cast<size_t>(i)] = -1.0 / q[i] - psi[static_cast<size_t>(i)];
        stage[i] = s[i] + dt * f0[static_cast<size_t>(i)];
    }
    const SupportGrid q1 = curvature_radius(stage);
    SupportGrid out = s;
    for (int i = 0; i < n; ++i) {
        if (q1[i] <= 0.0) throw_nonconvex_at(q1, i);
        const double f1 = -1.0 / q1[i] - psi[static_cast<size_t>(i)];
        out[i] = s[i] + 0.5 * dt * (f0[static_cast<size_t>(i)] + f1);
    }
    return out;
}

}  // namespace

const char* to_string(StopReason r)
{
    switch (r) {
        case StopReason::AreaReached: return "AreaReached";
        case StopReason::CurvatureCap: return "CurvatureCap";
        case StopReason::TimeLimit: return "TimeLimit";
        case StopReason::LostConvexity: return "LostConvexity";
    }
    return "?";
}

SupportGrid rhs(const SupportGrid& s, const PsiCoefficients& c)
{
    SupportGrid k = curvature(s);
    for (int i = 0; i < k.n(); ++i) k[i] = -k[i] - psi_eval(c, k.theta(i));
    return k;
}

SupportGrid kbar_grid(const SupportGrid& s, const PsiCoefficients& c)
{
    SupportGrid k = curvature(s);
    for (int i = 0; i < k.n(); ++i) k[i] = k[i] + psi_eval(c, k.theta(i));
    return k;
}

Diagnostics compute_diagnostics(const SupportGrid& s, const PsiCoefficients& c)
{
    const SupportGrid q = curvature_radius(s);
    Diagnostics d;
    d.convexity_margin = std::numeric_limits<double>::infinity();
    double a = 0.0, l = 0.0;
    for (int i = 0; i < s.n(); ++i) {
        d.convexity_margin = std::min(d.convexity_margin, q[i]);
        a += s[i] * q[i];
        l += s[i];
    }
    d.area = 0.5 * a * s.dtheta();
    d.length = l * s.dtheta();
    d.diameter = diameter(s);
    if (d.convexity_margin > 0.0) {
        d.k_min = std::numeric_limits<double>::infinity();
        d.k_max = -std::numeric_limits<double>::infinity();
        d.kbar_min = std::numeric_limits<double>::infinity();
        for (int i = 0; i < s.n(); ++i) {
            const double k = 1.0 / q[i];
            d.k_min = std::min(d.k_min, k);
            d.k_max = std::max(d.k_max, k);
            d.kbar_min = std::min(d.kbar_min, k + psi_eval(c, s.theta(i)));
        }
    } else {
        d.k_min = d.k_max = d.kbar_min = std::numeric_limits<double>::quiet_NaN();
    }
    return d;
}

FlowState step(const FlowState& state, const PsiCoefficients& c, double cfl)
{
    if (cfl <= 0.0) throw ValidationError("cfl must be positive");
    const SupportGrid q = curvature_radius(state.s);
    double kmax = 0.0;
    for (int i = 0; i < q.n(); ++i) {
        if (q[i] <= 0.0) throw_nonconvex_at(q, i);
        kmax = std::max(kmax, 1.0 / q[i]);
    }
    const double dth = state.s.dtheta();
    const double dt = cfl * dth * dth / (kmax * kmax);
    if (dt < 1e-14) throw StepUnderflowError("time step underflow");
    return FlowState{state.t + dt, heun(state.s, q, psi_table(state.s, c), dt)};
}

FlowTrace run(const SupportGrid& s0, const PsiCoefficients& c, const FlowConfig& cfg,
              std::span<const double> checkpoints)
{
    if (cfg.cfl <= 0.0) throw ValidationError("cfl must be positive");
    if (cfg.t_max <= 0.0) throw ValidationError("t_max must be positive");
    if (cfg.k_cap <= 0.0) throw ValidationError("k_cap must be positive");
    if (cfg.record_every < 1) throw ValidationError("record_every must be >= 1");

    const double stop_area = cfg.area_stop > 0.0 ? cfg.area_stop : 1e-3 * area(s0);
    const double dth = s0.dtheta();
    const std::vector<double> psi = psi_table(s0, c);

    FlowTrace trace;
    trace.omega_hat = std::numeric_limits<double>::quiet_NaN();

    SupportGrid s = s0;
    double t = 0.0;
    long steps = 0;
    size_t cp = 0;
    while (cp < checkpoints.size() && checkpoints[cp] <= 0.0) ++cp;

    auto record = [&]() {
        if (!trace.states.empty() && trace.states.back().t == t) return;
        trace.states.push_back(FlowState{t, s});
        trace.diags.push_back(compute_diagnostics(s, c));
    };
    record();

    for (;;) {
        const SupportGrid q = curvature_radius(s);
        double margin = std::numeric_limits<double>::infinity();
        double kmax = 0.0;
        double a = 0.0;
        for (int i = 0; i < q.n(); ++i) {
            margin = std::min(margin, q[i]);
            a += s[i] * q[i];
        }
        a *= 0.5 * dth;

        if (margin <= 0.0) {
            record();
            trace.stop_reason = StopReason::LostConvexity;
            break;
        }
        for (int i = 0; i < q.n(); ++i) kmax = std::max(kmax, 1.0 / q[i]);

        if (a <= stop_area) {
            record();
            trace.stop_reason = StopReason::AreaReached;
            trace.omega_hat = t + a / kTwoPi;
            break;
        }
        if (kmax >= cfg.k_cap) {
            record();
            trace.stop_reason = StopReason::CurvatureCap;
            break;
        }
        if (t >= cfg.t_max) {
            record();
            trace.stop_reason = StopReason::TimeLimit;
            break;
        }

        const double dt_cfl = cfg.cfl * dth * dth / (kmax * kmax);
        if (dt_cfl < 1e-14) throw StepUnderflowError("time step underflow");

        // Land exactly on the nearest of t_max and the next checkpoint.
        double target = cfg.t_max;
        bool at_checkpoint = false;
        if (cp < checkpoints.size() && checkpoints[cp] < target) {
            target = checkpoints[cp];
            at_checkpoint = true;
        }
        double t_next = t + dt_cfl;
        bool landed = false;
        if (t_next >= target) {
            t_next = target;
            landed = true;
        }
        const double dt = t_next - t;

        try {
            s = heun(s, q, psi, dt);
        } catch (const NonConvexError&) {
            record();
            trace.stop_reason = StopReason::LostConvexity;
            break;
        }
        t = t_next;
        ++steps;

        const bool cp_hit = landed && at_checkpoint;
        if (cp_hit) ++cp;
        if (cp_hit || steps % cfg.record_every == 0) record();
    }
    return trace;
}

SupportGrid exact_circle(double rho0, double a12, double a21, double t, int n)
{
    if (rho0 <= 0.0) throw ValidationError("rho0 must be positive");
    if (t < 0.0) throw ValidationError("time must be nonnegative");
    if (t >= 0.5 * rho0 * rho0) throw BeyondCollapseError("circle has collapsed before this time");
    const double rho = std::sqrt(rho0 * rho0 - 2.0 * t);
    return SupportGrid::from_function(n, [&](double th) {
        return rho - a12 * t * std::sin(th) - a21 * t * std::cos(th);
    });
}

bool containment_check(const SupportGrid& outer, const SupportGrid& inner)
{
    if (outer.n() != inner.n()) throw ValidationError("containment_check needs matching grids");
    for (int i = 0; i < outer.n(); ++i)
        if (inner[i] > outer[i]) return false;
    return true;
}

double omega_bound(double a0, double k0, double c)
{
    if (a0 <= 0.0) throw ValidationError("initial area must be positive");
    if (k0 <= 3.0 * c) throw HypothesisError("collapse-time bound requires k0 > 3c");
    return a0 / kTwoPi * (k0 - 2.0 * c) / (k0 - 3.0 * c);
}

double area_identity_residual(const FlowTrace& trace, const PsiCoefficients& c)
{
    const size_t m = trace.states.size();
    if (m < 3) throw TraceError("area identity needs at least 3 recorded states");
    double worst = 0.0;
    for (size_t j = 1; j + 1 < m; ++j) {
        const double dadt = (trace.diags[j + 1].area - trace.diags[j - 1].area) /
                            (trace.states[j + 1].t - trace.states[j - 1].t);
        const SupportGrid& s = trace.states[j].s;
        const SupportGrid q = curvature_radius(s);
        double integral = 0.0;
        for (int i = 0; i < s.n(); ++i) integral += psi_eval(c, s.theta(i)) * q[i];
        integral *= s.dtheta();
        worst = std::max(worst, std::fabs(dadt + kTwoPi + integral));
    }
    return worst;
}

MonitorReport monitor_bounds(const FlowTrace& trace, const PsiCoefficients&, double tensor_norm)
{
    MonitorReport r;
    if (trace.diags.empty()) return r;
    const double k0 = trace.diags.front().k_min;
    const double kbar0 = trace.diags.front().kbar_min;
    r.k_lower_slack = std::numeric_limits<double>::infinity();
    r.kbar_vs_initial_slack = std::numeric_limits<double>::infinity();
    for (const Diagnostics& d : trace.diags) {
        r.k_lower_slack = std::min(r.k_lower_slack, d.k_min - (k0 - 2.0 * tensor_norm));
        r.kbar_vs_initial_slack = std::min(r.kbar_vs_initial_slack, d.kbar_min - kbar0);
    }
    return r;
}

}  // namespace macsf
