#pragma once

#include <array>

namespace macsf {

using Vec2 = std::array<double, 2>;

// Contorsion tensor with constant components T^k_ij = <T(e_i,e_j), e_k>,
// i, j, k in {1,2}. The tensor measures how an affine connection on the
// plane deviates from the Levi-Civita connection. Immutable value type.
class ContorsionTensor {
public:
    ContorsionTensor() : comp_{} {}

    // Accessors use the 1-based index convention of the component symbol
    // T^k_ij: t(k,i,j) with k,i,j in {1,2}.
    double t(int k, int i, int j) const { return comp_[idx(k, i, j)]; }
    void set(int k, int i, int j, double v) { comp_[idx(k, i, j)] = v; }

    const std::array<double, 8>& components() const { return comp_; }

private:
    static int idx(int k, int i, int j) { return ((k - 1) << 2) | ((i - 1) << 1) | (j - 1); }
    std::array<double, 8> comp_;
};

// Frobenius norm c = sqrt(sum of squares of the 8 components). It dominates
// the pointwise anisotropy: |psi(theta)| <= c for every theta.
double norm(const ContorsionTensor& t);

// Coefficients of the anisotropy function in the basis
//   psi(theta) = a30 sin^3 + a03 cos^3 + a12 sin + a21 cos.
struct PsiCoefficients {
    double a30 = 0.0;
    double a03 = 0.0;
    double a12 = 0.0;
    double a21 = 0.0;
};

// Closed-form coefficients of psi(theta) = <T(tangent,tangent), normal> with
// the inner normal N = -(cos theta, sin theta) and tangent T = (-sin, cos).
PsiCoefficients psi_coefficients(const ContorsionTensor& t);

double psi_eval(const PsiCoefficients& c, double theta);

// Evaluates <T(tangent,tangent), normal> by direct frame contraction.
// Independent of psi_coefficients/psi_eval; serves as their oracle.
double psi_direct(const ContorsionTensor& t, double theta);

// psi_thth + psi in closed form. First harmonics are annihilated; the cubic
// terms leave pure third harmonics, so the value is bounded by 9c.
double psi_second_deriv_plus_psi(const PsiCoefficients& c, double theta);

// Projective connection generated by U: T(X,Y) = <U,Y>X + <U,X>Y.
// Its anisotropy vanishes identically.
ContorsionTensor projective(const Vec2& u);

// Semi-symmetric connection generated by U: T(X,Y) = <U,Y>X - <X,Y>U.
// Its anisotropy is the pure first harmonic u1 cos + u2 sin.
ContorsionTensor semi_symmetric(const Vec2& u);

// Tensor with the single component T^2_11 = -amplitude, which produces
// psi(theta) = amplitude * sin^3(theta) and norm |amplitude|.
ContorsionTensor sin3_contorsion(double amplitude);

// Rigid-motion reduction of the flow. A solution S(theta,t) of the flow with
// the original coefficients maps to a solution of the flow with `reduced` by
//   S_red(theta, t) = S(theta - rotation, t) + t*(drift[0] cos + drift[1] sin),
// i.e. rotate the plane by `rotation` and translate with velocity `drift`.
struct Reduction {
    PsiCoefficients reduced;
    Vec2 drift{0.0, 0.0};
    double rotation = 0.0;
};

// Cancels the first harmonics of psi by a parallel translation with velocity
// (a21, a12); the cubic part is left untouched.
Reduction reduce_by_translation(const PsiCoefficients& c);

// Full reduction to the canonical profile psi = a_tilde * sin^3(theta):
// translation (first harmonics), rotation (phase of the third harmonic),
// then a second translation absorbing the first harmonics re-created by the
// rotation. Inputs with a03 = 0 are already canonical and map to the
// identity reduction; otherwise a_tilde = -hypot(a30, a03) <= 0.
Reduction reduce_to_canonical(const PsiCoefficients& c);

}  // namespace macsf
