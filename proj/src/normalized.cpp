#include "macsf/normalized.hpp"

#include <cmath>
#include <limits>

#include "macsf/errors.hpp"

namespace macsf {

namespace {

// Right-hand side of the normalized evolution at slow time tau.
SupportGrid normalized_rhs(const SupportGrid& s, const PsiCoefficients& c, double omega,
                           double tau)
{
    SupportGrid f = curvature(s);  // throws NonConvexError
    const double forcing = std::sqrt(2.0 * omega) * std::exp(-tau);
    for (int i = 0; i < s.n(); ++i) f[i] = s[i] - f[i] - forcing * psi_eval(c, s.theta(i));
    return f;
}

double max_curvature(const SupportGrid& s)
{
    const SupportGrid k = curvature(s);
    double m = 0.0;
    for (int i = 0; i < k.n(); ++i) m = std::max(m, k[i]);
    return m;
}

NormalizedState heun_tau(const NormalizedState& st, const PsiCoefficients& c, double omega,
                         double dtau)
{
    const SupportGrid f0 = normalized_rhs(st.s_tilde, c, omega, st.tau);
    SupportGrid stage = st.s_tilde;
    for (int i = 0; i < stage.n(); ++i) stage[i] += dtau * f0[i];
    const SupportGrid f1 = normalized_rhs(stage, c, omega, st.tau + dtau);
    NormalizedState out{st.tau + dtau, st.s_tilde};
    for (int i = 0; i < out.s_tilde.n(); ++i) out.s_tilde[i] += 0.5 * dtau * (f0[i] + f1[i]);
    return out;
}

}  // namespace

Vec2 collapse_point_estimate(const FlowTrace& trace)
{
    if (trace.states.empty()) throw TraceError("empty trace");
    return first_harmonic(trace.states.back().s);
}

std::vector<NormalizedState> normalize_trace(const FlowTrace& trace)
{
    if (trace.states.empty()) throw TraceError("empty trace");
    const double omega = trace.omega_hat;
    if (!std::isfinite(omega) || !(omega > trace.states.back().t))
        throw TraceError("collapse time not estimated for this trace");

    const Vec2 p = collapse_point_estimate(trace);
    std::vector<NormalizedState> out;
    out.reserve(trace.states.size());
    for (const FlowState& st : trace.states) {
        const double remaining = omega - st.t;
        const double scale = 1.0 / std::sqrt(2.0 * remaining);
        NormalizedState ns;
        ns.tau = -0.5 * std::log(remaining / omega);
        ns.s_tilde = st.s;
        for (int i = 0; i < st.s.n(); ++i) {
            const double th = st.s.theta(i);
            ns.s_tilde[i] = scale * (st.s[i] - p[0] * std::cos(th) - p[1] * std::sin(th));
        }
        out.push_back(std::move(ns));
    }
    return out;
}

NormalizedState step_normalized(const NormalizedState& state, const PsiCoefficients& c,
                                double omega, double cfl)
{
    if (cfl <= 0.0) throw ValidationError("cfl must be positive");
    if (omega <= 0.0) throw ValidationError("omega must be positive");
    const double kmax = max_curvature(state.s_tilde);
    const double dth = state.s_tilde.dtheta();
    const double dtau = cfl * dth * dth / (kmax * kmax);
    return heun_tau(state, c, omega, dtau);
}

NormalizedTrace run_normalized(const SupportGrid& s_tilde0, const PsiCoefficients& c, double omega,
                               double cfl, double tau_max, int record_every)
{
    if (cfl <= 0.0) throw ValidationError("cfl must be positive");
    if (omega <= 0.0) throw ValidationError("omega must be positive");
    if (tau_max <= 0.0) throw ValidationError("tau_max must be positive");
    if (record_every < 1) throw ValidationError("record_every must be >= 1");

    NormalizedTrace trace;
    NormalizedState st{0.0, s_tilde0};
    trace.states.push_back(st);
    const double dth = s_tilde0.dtheta();
    long steps = 0;
    while (st.tau < tau_max) {
        const double kmax = max_curvature(st.s_tilde);
        double dtau = cfl * dth * dth / (kmax * kmax);
        bool landed = false;
        if (st.tau + dtau >= tau_max) {
            dtau = tau_max - st.tau;
            landed = true;
        }
        st = heun_tau(st, c, omega, dtau);
        if (landed) st.tau = tau_max;
        ++steps;
        if (landed || steps % record_every == 0) trace.states.push_back(st);
    }
    if (trace.states.back().tau != st.tau) trace.states.push_back(st);
    return trace;
}

double entropy(const SupportGrid& s_tilde)
{
    const SupportGrid k = curvature(s_tilde);
    double e = 0.0;
    for (int i = 0; i < k.n(); ++i) e += std::log(k[i]);
    return e * s_tilde.dtheta() / (2.0 * std::numbers::pi);
}

double stationarity_residual(const SupportGrid& s_tilde)
{
    const SupportGrid k = curvature(s_tilde);
    double r = 0.0;
    for (int i = 0; i < k.n(); ++i) r = std::max(r, std::fabs(s_tilde[i] - k[i]));
    return r;
}

double circle_deviation(const SupportGrid& s_tilde)
{
    double r = 0.0;
    for (int i = 0; i < s_tilde.n(); ++i) r = std::max(r, std::fabs(s_tilde[i] - 1.0));
    return r;
}

}  // namespace macsf
