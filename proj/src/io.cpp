#include "macsf/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "macsf/errors.hpp"

namespace macsf {

namespace {

void num(std::string& out, double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

double parse_num(const std::string& s, int line)
{
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str()) {
        std::ostringstream os;
        os << "csv line " << line << ": expected a number, got '" << s << "'";
        throw ParseError(os.str());
    }
    return v;
}

}  // namespace

std::string support_grid_csv(const SupportGrid& s)
{
    std::string out = "theta,S\n";
    for (int i = 0; i < s.n(); ++i) {
        num(out, s.theta(i));
        out += ',';
        num(out, s[i]);
        out += '\n';
    }
    return out;
}

SupportGrid support_grid_from_csv(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::vector<double> values;
    std::vector<double> thetas;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        if (lineno == 1 && line.rfind("theta", 0) == 0) continue;  // header
        const size_t comma = line.find(',');
        if (comma == std::string::npos) {
            std::ostringstream os;
            os << "csv line " << lineno << ": expected 'theta,S'";
            throw ParseError(os.str());
        }
        thetas.push_back(parse_num(line.substr(0, comma), lineno));
        values.push_back(parse_num(line.substr(comma + 1), lineno));
    }
    SupportGrid s(std::move(values));  // validates size and finiteness
    for (int i = 0; i < s.n(); ++i)
        if (std::fabs(thetas[static_cast<size_t>(i)] - s.theta(i)) > 1e-9)
            throw ValidationError("csv theta column is not the uniform grid 2*pi*i/N");
    return s;
}

std::string plane_curve_csv(const PlaneCurve& c)
{
    std::string out = "theta,x,y\n";
    const int n = static_cast<int>(c.points.size());
    const double dth = 2.0 * std::numbers::pi / n;
    for (int i = 0; i < n; ++i) {
        num(out, dth * i);
        out += ',';
        num(out, c.points[static_cast<size_t>(i)][0]);
        out += ',';
        num(out, c.points[static_cast<size_t>(i)][1]);
        out += '\n';
    }
    return out;
}

std::string trace_csv(const FlowTrace& t, const PsiCoefficients& c)
{
    std::string out = "t,theta,S,k,kbar\n";
    for (const FlowState& st : t.states) {
        const SupportGrid q = curvature_radius(st.s);
        for (int i = 0; i < st.s.n(); ++i) {
            const double k = q[i] > 0.0 ? 1.0 / q[i] : std::numeric_limits<double>::quiet_NaN();
            num(out, st.t);
            out += ',';
            num(out, st.s.theta(i));
            out += ',';
            num(out, st.s[i]);
            out += ',';
            num(out, k);
            out += ',';
            num(out, k + psi_eval(c, st.s.theta(i)));
            out += '\n';
        }
    }
    return out;
}

std::string summary_csv(const FlowTrace& t)
{
    std::string out = "t,area,length,k_min,k_max,kbar_min,diameter\n";
    for (size_t j = 0; j < t.states.size(); ++j) {
        const Diagnostics& d = t.diags[j];
        num(out, t.states[j].t);
        out += ',';
        num(out, d.area);
        out += ',';
        num(out, d.length);
        out += ',';
        num(out, d.k_min);
        out += ',';
        num(out, d.k_max);
        out += ',';
        num(out, d.kbar_min);
        out += ',';
        num(out, d.diameter);
        out += '\n';
    }
    return out;
}

std::string normalized_trace_csv(std::span<const NormalizedState> states)
{
    std::string out = "tau,theta,S_tilde,k_tilde\n";
    for (const NormalizedState& st : states) {
        const SupportGrid q = curvature_radius(st.s_tilde);
        for (int i = 0; i < st.s_tilde.n(); ++i) {
            const double k = q[i] > 0.0 ? 1.0 / q[i] : std::numeric_limits<double>::quiet_NaN();
            num(out, st.tau);
            out += ',';
            num(out, st.s_tilde.theta(i));
            out += ',';
            num(out, st.s_tilde[i]);
            out += ',';
            num(out, k);
            out += '\n';
        }
    }
    return out;
}

std::string normalized_summary_csv(std::span<const NormalizedState> states)
{
    std::string out = "tau,entropy,circle_deviation,stationarity_residual\n";
    for (const NormalizedState& st : states) {
        num(out, st.tau);
        out += ',';
        num(out, entropy(st.s_tilde));
        out += ',';
        num(out, circle_deviation(st.s_tilde));
        out += ',';
        num(out, stationarity_residual(st.s_tilde));
        out += '\n';
    }
    return out;
}

std::string curves_svg(const std::vector<PlaneCurve>& curves)
{
    if (curves.empty()) throw ValidationError("svg export needs at least one curve");

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const PlaneCurve& c : curves)
        for (const Vec2& p : c.points) {
            xmin = std::min(xmin, p[0]);
            xmax = std::max(xmax, p[0]);
            ymin = std::min(ymin, -p[1]);  // svg y points down
            ymax = std::max(ymax, -p[1]);
        }
    const double margin = 0.05 * 0.5 * std::max(xmax - xmin, ymax - ymin);
    const double bx = xmin - margin, by = ymin - margin;
    const double bw = xmax - xmin + 2.0 * margin, bh = ymax - ymin + 2.0 * margin;
    const double stroke = 0.005 * std::max(bw, bh);

    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"";
    num(out, bx);
    out += ' ';
    num(out, by);
    out += ' ';
    num(out, bw);
    out += ' ';
    num(out, bh);
    out += "\" width=\"720\" height=\"720\">\n";
    for (const PlaneCurve& c : curves) {
        out += "  <polygon fill=\"none\" stroke=\"black\" stroke-width=\"";
        num(out, stroke);
        out += "\" points=\"";
        for (size_t i = 0; i < c.points.size(); ++i) {
            if (i) out += ' ';
            num(out, c.points[i][0]);
            out += ',';
            num(out, -c.points[i][1]);
        }
        out += "\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << content;
    if (!out) throw IoError("write failed for " + path);
}

}  // namespace macsf
