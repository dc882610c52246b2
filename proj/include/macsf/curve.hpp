#pragma once

#include <numbers>
#include <utility>
#include <vector>

#include "macsf/contorsion.hpp"

namespace macsf {

// Uniform periodic samples of the support function S(theta) of a convex
// closed curve, theta_i = 2 pi i / n. The grid size must be even and >= 16
// (evenness makes theta + pi a grid point, which the width function needs).
// Convexity is diagnosed via convexity_margin, never enforced on construction.
class SupportGrid {
public:
    SupportGrid() = default;
    explicit SupportGrid(std::vector<double> values);

    static SupportGrid constant(int n, double value);

    template <class F>
    static SupportGrid from_function(int n, F f)
    {
        std::vector<double> v(static_cast<size_t>(n));
        const double dth = 2.0 * std::numbers::pi / n;
        for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = f(dth * i);
        return SupportGrid(std::move(v));
    }

    int n() const { return static_cast<int>(v_.size()); }
    double dtheta() const { return 2.0 * std::numbers::pi / n(); }
    double theta(int i) const { return dtheta() * i; }

    double operator[](int i) const { return v_[static_cast<size_t>(i)]; }
    double& operator[](int i) { return v_[static_cast<size_t>(i)]; }

    const std::vector<double>& values() const { return v_; }

private:
    std::vector<double> v_;
};

struct PlaneCurve {
    std::vector<Vec2> points;  // point i has normal angle theta_i
};

// Geometric state of a grid at one instant. For non-convex grids the
// curvature statistics are NaN; the rest stays well defined.
struct Diagnostics {
    double k_min = 0.0;
    double k_max = 0.0;
    double kbar_min = 0.0;
    double area = 0.0;
    double length = 0.0;
    double convexity_margin = 0.0;
    double diameter = 0.0;
};

// Second-order centered differences on the periodic grid.
SupportGrid deriv1(const SupportGrid& s);
SupportGrid deriv2(const SupportGrid& s);

// S_thth + S, the radius of curvature as a function of the normal angle.
SupportGrid curvature_radius(const SupportGrid& s);

// k = 1/(S_thth + S). Throws NonConvexError naming the offending theta if
// the radius of curvature is not positive everywhere.
SupportGrid curvature(const SupportGrid& s);

// Curve points from the support function:
//   x = S cos - S_th sin,  y = S sin + S_th cos.
PlaneCurve reconstruct(const SupportGrid& s);

// Enclosed area (1/2) int S (S_thth + S) dtheta by the periodic rectangle
// rule, which coincides with the trapezoid rule here.
double area(const SupportGrid& s);

// Perimeter int S dtheta (Cauchy's formula).
double length(const SupportGrid& s);

// min over the grid of S_thth + S; positive iff the grid is convex.
double convexity_margin(const SupportGrid& s);

// Support function of the axis-aligned ellipse x^2/a^2 + y^2/b^2 = 1.
SupportGrid ellipse_support(double a, double b, int n = 256);

// Maximum of the width function S(theta) + S(theta + pi).
double diameter(const SupportGrid& s);

// Periodic cubic (Catmull-Rom) interpolation of the grid at an arbitrary
// angle. Used to compare solutions across rotated frames.
double sample_periodic(const SupportGrid& s, double theta);

// First Fourier harmonic ((1/pi) int S cos, (1/pi) int S sin); equals the
// position vector for a grid representing a translated point/near-point.
Vec2 first_harmonic(const SupportGrid& s);

}  // namespace macsf
