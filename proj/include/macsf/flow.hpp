#pragma once

#include <span>
#include <vector>

#include "macsf/contorsion.hpp"
#include "macsf/curve.hpp"

namespace macsf {

// Controls for the explicit integration of S_t = -(S_thth + S)^{-1} - psi.
// area_stop <= 0 means "1e-3 times the initial area". cfl values above 0.5
// are accepted but exceed the parabolic stability limit of the scheme.
struct FlowConfig {
    double cfl = 0.2;
    double t_max = 10.0;
    double area_stop = -1.0;
    double k_cap = 1e4;
    int record_every = 10;
};

struct FlowState {
    double t = 0.0;
    SupportGrid s;
};

enum class StopReason { AreaReached, CurvatureCap, TimeLimit, LostConvexity };

const char* to_string(StopReason r);

// Time-ordered recorded states with per-record diagnostics. omega_hat is the
// estimated collapse time t_stop + A(t_stop)/(2 pi); it is NaN unless the run
// stopped on AreaReached.
struct FlowTrace {
    std::vector<FlowState> states;
    std::vector<Diagnostics> diags;
    StopReason stop_reason = StopReason::TimeLimit;
    double omega_hat = 0.0;
};

// -k - psi, the right-hand side of the support-function evolution.
SupportGrid rhs(const SupportGrid& s, const PsiCoefficients& c);

// kbar = k + psi, the curvature with respect to the affine connection.
SupportGrid kbar_grid(const SupportGrid& s, const PsiCoefficients& c);

Diagnostics compute_diagnostics(const SupportGrid& s, const PsiCoefficients& c);

// One explicit Heun step with dt = cfl dtheta^2 / max k^2, the stability
// scale of the linearized equation h_t = k^2 (h_thth + h).
FlowState step(const FlowState& state, const PsiCoefficients& c, double cfl);

// Integrates from S0 until the area drops to area_stop, the curvature hits
// k_cap, t reaches t_max, or convexity is lost (recorded, not thrown).
// Checkpoints, when given (sorted ascending), are landed on exactly and
// recorded in addition to the record_every cadence.
FlowTrace run(const SupportGrid& s0, const PsiCoefficients& c, const FlowConfig& cfg,
              std::span<const double> checkpoints = {});

// Analytic drifting shrinking circle
//   S(theta,t) = sqrt(rho0^2 - 2t) - a12 t sin(theta) - a21 t cos(theta),
// the exact solution when psi has first harmonics only.
SupportGrid exact_circle(double rho0, double a12, double a21, double t, int n = 256);

// Support dominance: true iff inner lies in the region enclosed by outer
// (both support functions taken about the same origin).
bool containment_check(const SupportGrid& outer, const SupportGrid& inner);

// Collapse-time bound A0/(2 pi) * (k0 - 2c)/(k0 - 3c); requires k0 > 3c.
double omega_bound(double a0, double k0, double c);

// Max over interior record times of |dA/dt (centered) + 2 pi + int psi/k|.
double area_identity_residual(const FlowTrace& trace, const PsiCoefficients& c);

// Slacks of the two maximum-principle consequences along a trace; both are
// >= -tolerance on a valid run.
struct MonitorReport {
    double k_lower_slack = 0.0;        // min_t k_min(t) - (k0 - 2c)
    double kbar_vs_initial_slack = 0.0;  // min_t (kbar_min(t) - kbar_min(0))
};

MonitorReport monitor_bounds(const FlowTrace& trace, const PsiCoefficients& c, double tensor_norm);

}  // namespace macsf
