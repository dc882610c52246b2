#include "macsf/contorsion.hpp"

#include <cmath>
#include <numbers>

namespace macsf {

double norm(const ContorsionTensor& t)
{
    double s = 0.0;
    for (double v : t.components()) s += v * v;
    return std::sqrt(s);
}

PsiCoefficients psi_coefficients(const ContorsionTensor& t)
{
    // Contracting <T(tangent,tangent), normal> with tangent = (-sin, cos) and
    // normal = -(cos, sin) gives
    //   -T2_11 sin^3 + (T2_12 + T2_21 - T1_11) sin^2 cos
    //   + (T1_12 + T1_21 - T2_22) sin cos^2 - T1_22 cos^3.
    // With sin^2 cos = cos - cos^3 and sin cos^2 = sin - sin^3 this collects to
    // the {sin^3, cos^3, sin, cos} basis as below.
    PsiCoefficients c;
    c.a12 = t.t(1, 1, 2) + t.t(1, 2, 1) - t.t(2, 2, 2);
    c.a21 = t.t(2, 1, 2) + t.t(2, 2, 1) - t.t(1, 1, 1);
    c.a30 = t.t(2, 2, 2) - t.t(2, 1, 1) - t.t(1, 1, 2) - t.t(1, 2, 1);
    c.a03 = t.t(1, 1, 1) - t.t(1, 2, 2) - t.t(2, 1, 2) - t.t(2, 2, 1);
    return c;
}

double psi_eval(const PsiCoefficients& c, double theta)
{
    const double s = std::sin(theta);
    const double co = std::cos(theta);
    return c.a30 * s * s * s + c.a03 * co * co * co + c.a12 * s + c.a21 * co;
}

double psi_direct(const ContorsionTensor& t, double theta)
{
    const double tg[2] = {-std::sin(theta), std::cos(theta)};
    const double nrm[2] = {-std::cos(theta), -std::sin(theta)};
    double psi = 0.0;
    for (int k = 1; k <= 2; ++k) {
        double w = 0.0;
        for (int i = 1; i <= 2; ++i)
            for (int j = 1; j <= 2; ++j) w += t.t(k, i, j) * tg[i - 1] * tg[j - 1];
        psi += w * nrm[k - 1];
    }
    return psi;
}

double psi_second_deriv_plus_psi(const PsiCoefficients& c, double theta)
{
    // (d^2/dth^2 + 1) kills sin and cos; sin^3 = (3 sin - sin 3th)/4 and
    // cos^3 = (3 cos + cos 3th)/4 leave 2 sin 3th and -2 cos 3th.
    return 2.0 * c.a30 * std::sin(3.0 * theta) - 2.0 * c.a03 * std::cos(3.0 * theta);
}

ContorsionTensor projective(const Vec2& u)
{
    ContorsionTensor t;
    for (int k = 1; k <= 2; ++k)
        for (int i = 1; i <= 2; ++i)
            for (int j = 1; j <= 2; ++j)
                t.set(k, i, j, u[j - 1] * (i == k ? 1.0 : 0.0) + u[i - 1] * (j == k ? 1.0 : 0.0));
    return t;
}

ContorsionTensor semi_symmetric(const Vec2& u)
{
    ContorsionTensor t;
    for (int k = 1; k <= 2; ++k)
        for (int i = 1; i <= 2; ++i)
            for (int j = 1; j <= 2; ++j)
                t.set(k, i, j, u[j - 1] * (i == k ? 1.0 : 0.0) - (i == j ? 1.0 : 0.0) * u[k - 1]);
    return t;
}

ContorsionTensor sin3_contorsion(double amplitude)
{
    ContorsionTensor t;
    t.set(2, 1, 1, -amplitude);
    return t;
}

Reduction reduce_by_translation(const PsiCoefficients& c)
{
    Reduction r;
    r.reduced = PsiCoefficients{c.a30, c.a03, 0.0, 0.0};
    r.drift = {c.a21, c.a12};
    r.rotation = 0.0;
    return r;
}

Reduction reduce_to_canonical(const PsiCoefficients& c)
{
    const Vec2 base{c.a21, c.a12};  // translation cancelling the first harmonics

    Reduction r;
    if (c.a03 == 0.0) {
        // Already a pure sin^3 profile once the first harmonics are gone.
        r.reduced = PsiCoefficients{c.a30, 0.0, 0.0, 0.0};
        r.drift = base;
        r.rotation = 0.0;
        return r;
    }

    // a30 sin^3 + a03 cos^3 = (3/4) amp cos(th - phi) + (1/4) amp cos(3 th + phi),
    // amp = hypot(a30, a03), phi = atan2(a30, a03). Rotating the normal angle by
    // delta = (phi + pi/2)/3 turns the third harmonic into (amp/4) sin 3th, the
    // third-harmonic content of -amp sin^3. The rotated first harmonic plus the
    // one owed to -amp sin^3 is then removed by a second translation (b21, b12).
    const double amp = std::hypot(c.a30, c.a03);
    const double phi = std::atan2(c.a30, c.a03);
    const double delta = (phi + std::numbers::pi / 2.0) / 3.0;
    const double b21 = 0.75 * amp * std::cos(delta + phi);
    const double b12 = 0.75 * amp * (std::sin(delta + phi) + 1.0);

    r.reduced = PsiCoefficients{-amp, 0.0, 0.0, 0.0};
    r.rotation = delta;
    // The first translation is applied before the rotation, so its velocity
    // rotates along with the curve.
    const double cd = std::cos(delta), sd = std::sin(delta);
    r.drift = {cd * base[0] - sd * base[1] + b21, sd * base[0] + cd * base[1] + b12};
    return r;
}

}  // namespace macsf
