#pragma once

#include <vector>

#include "macsf/contorsion.hpp"
#include "macsf/curve.hpp"
#include "macsf/flow.hpp"

namespace macsf {

// Rescaled solution S_tilde = (2(omega - t))^{-1/2} S in the slow time
// tau = -(1/2) log(1 - t/omega); the collapsing flow becomes a trajectory
// approaching the unit circle.
struct NormalizedState {
    double tau = 0.0;
    SupportGrid s_tilde;
};

struct NormalizedTrace {
    std::vector<NormalizedState> states;
};

// Collapse point estimate: the first Fourier harmonic of the last recorded
// support function. The late-time curve is a near-point, so this recovers
// where the flow shrinks to within O(omega_hat - t_last).
Vec2 collapse_point_estimate(const FlowTrace& trace);

// Post-hoc normalization of a recorded trace. The support functions are
// re-centered at the estimated collapse point before rescaling (the limit is
// the unit circle about the collapse point, not about the lab origin).
// Throws TraceError when the trace carries no collapse-time estimate.
std::vector<NormalizedState> normalize_trace(const FlowTrace& trace);

// One Heun step of S_tilde_tau = -(k_tilde + sqrt(2 omega) e^{-tau} psi) + S_tilde
// with dtau = cfl dtheta^2 / max k_tilde^2.
NormalizedState step_normalized(const NormalizedState& state, const PsiCoefficients& c,
                                double omega, double cfl);

// Direct integration in tau from an already normalized (and re-centered)
// initial grid. Records every record_every steps plus the initial and final
// states; the final step lands exactly on tau_max.
NormalizedTrace run_normalized(const SupportGrid& s_tilde0, const PsiCoefficients& c, double omega,
                               double cfl, double tau_max, int record_every);

// (1/2 pi) int log k_tilde dtheta.
double entropy(const SupportGrid& s_tilde);

// sup |S_tilde - k_tilde|, distance to the stationary profile S = k.
double stationarity_residual(const SupportGrid& s_tilde);

// sup |S_tilde - 1|.
double circle_deviation(const SupportGrid& s_tilde);

}  // namespace macsf
