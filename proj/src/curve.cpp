#include "macsf/curve.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "macsf/errors.hpp"

namespace macsf {

namespace {

void check_finite(const std::vector<double>& v)
{
    for (double x : v)
        if (!std::isfinite(x)) throw ValidationError("support grid contains a non-finite value");
}

[[noreturn]] void throw_nonconvex(double theta, double q)
{
    char buf[96];
    std::snprintf(buf, sizeof buf, "curve not convex at theta=%.10g (S_thth + S = %.10g)", theta, q);
    throw NonConvexError(buf);
}

}  // namespace

SupportGrid::SupportGrid(std::vector<double> values) : v_(std::move(values))
{
    if (v_.size() < 16 || v_.size() % 2 != 0)
        throw ValidationError("support grid size must be even and >= 16");
    check_finite(v_);
}

SupportGrid SupportGrid::constant(int n, double value)
{
    return SupportGrid(std::vector<double>(static_cast<size_t>(n), value));
}

SupportGrid deriv1(const SupportGrid& s)
{
    const int n = s.n();
    const double inv = 1.0 / (2.0 * s.dtheta());
    std::vector<double> d(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const int ip = (i + 1) % n;
        const int im = (i + n - 1) % n;
        d[static_cast<size_t>(i)] = (s[ip] - s[im]) * inv;
    }
    return SupportGrid(std::move(d));
}

SupportGrid deriv2(const SupportGrid& s)
{
    const int n = s.n();
    const double inv = 1.0 / (s.dtheta() * s.dtheta());
    std::vector<double> d(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const int ip = (i + 1) % n;
        const int im = (i + n - 1) % n;
        d[static_cast<size_t>(i)] = (s[ip] - 2.0 * s[i] + s[im]) * inv;
    }
    return SupportGrid(std::move(d));
}

SupportGrid curvature_radius(const SupportGrid& s)
{
    SupportGrid q = deriv2(s);
    for (int i = 0; i < s.n(); ++i) q[i] += s[i];
    return q;
}

SupportGrid curvature(const SupportGrid& s)
{
    SupportGrid q = curvature_radius(s);
    for (int i = 0; i < q.n(); ++i) {
        if (q[i] <= 0.0) throw_nonconvex(q.theta(i), q[i]);
        q[i] = 1.0 / q[i];
    }
    return q;
}

PlaneCurve reconstruct(const SupportGrid& s)
{
    const SupportGrid ds = deriv1(s);
    PlaneCurve c;
    c.points.resize(static_cast<size_t>(s.n()));
    for (int i = 0; i < s.n(); ++i) {
        const double th = s.theta(i);
        const double co = std::cos(th), si = std::sin(th);
        c.points[static_cast<size_t>(i)] = {s[i] * co - ds[i] * si, s[i] * si + ds[i] * co};
    }
    return c;
}

double area(const SupportGrid& s)
{
    const SupportGrid q = curvature_radius(s);
    double a = 0.0;
    for (int i = 0; i < s.n(); ++i) a += s[i] * q[i];
    return 0.5 * a * s.dtheta();
}

double length(const SupportGrid& s)
{
    double l = 0.0;
    for (int i = 0; i < s.n(); ++i) l += s[i];
    return l * s.dtheta();
}

double convexity_margin(const SupportGrid& s)
{
    const SupportGrid q = curvature_radius(s);
    double m = std::numeric_limits<double>::infinity();
    for (int i = 0; i < q.n(); ++i) m = std::min(m, q[i]);
    return m;
}

SupportGrid ellipse_support(double a, double b, int n)
{
    if (a <= 0.0 || b <= 0.0) throw ValidationError("ellipse semi-axes must be positive");
    return SupportGrid::from_function(n, [a, b](double th) {
        const double co = std::cos(th), si = std::sin(th);
        return std::sqrt(a * a * co * co + b * b * si * si);
    });
}

double diameter(const SupportGrid& s)
{
    const int n = s.n();
    const int half = n / 2;
    double w = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) w = std::max(w, s[i] + s[(i + half) % n]);
    return w;
}

double sample_periodic(const SupportGrid& s, double theta)
{
    const int n = s.n();
    const double two_pi = 2.0 * std::numbers::pi;
    double x = std::fmod(theta, two_pi);
    if (x < 0.0) x += two_pi;
    const double u = x / s.dtheta();
    const int i = std::min(static_cast<int>(u), n - 1);
    const double f = u - i;
    const double p0 = s[(i + n - 1) % n];
    const double p1 = s[i];
    const double p2 = s[(i + 1) % n];
    const double p3 = s[(i + 2) % n];
    return p1 + 0.5 * f * (p2 - p0 + f * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 + f * (3.0 * (p1 - p2) + p3 - p0)));
}

Vec2 first_harmonic(const SupportGrid& s)
{
    double cx = 0.0, cy = 0.0;
    for (int i = 0; i < s.n(); ++i) {
        const double th = s.theta(i);
        cx += s[i] * std::cos(th);
        cy += s[i] * std::sin(th);
    }
    const double w = s.dtheta() / std::numbers::pi;
    return {cx * w, cy * w};
}

}  // namespace macsf
