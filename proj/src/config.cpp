#include "macsf/config.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>

#include "macsf/errors.hpp"
#include "macsf/io.hpp"

namespace macsf {

namespace {

std::string trim(const std::string& s)
{
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void parse_fail(int line, const std::string& msg)
{
    std::ostringstream os;
    os << "line " << line << ": " << msg;
    throw ParseError(os.str());
}

double to_number(const std::string& v, int line)
{
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0') parse_fail(line, "expected a number, got '" + v + "'");
    return x;
}

Vec2 to_vec2(const std::string& v, int line)
{
    if (v.size() < 2 || v.front() != '[' || v.back() != ']')
        parse_fail(line, "expected an array [v1, v2]");
    const std::string body = v.substr(1, v.size() - 2);
    const size_t comma = body.find(',');
    if (comma == std::string::npos) parse_fail(line, "expected two array entries");
    return {to_number(trim(body.substr(0, comma)), line),
            to_number(trim(body.substr(comma + 1)), line)};
}

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

const char* kTensorKeys[8] = {"T111", "T112", "T121", "T122", "T211", "T212", "T221", "T222"};

}  // namespace

RunConfig parse_config(const std::string& text)
{
    RunConfig cfg;
    std::set<std::string> seen;
    std::istringstream in(text);
    std::string raw;
    int line = 0;

    while (std::getline(in, raw)) {
        ++line;
        const size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string s = trim(raw);
        if (s.empty()) continue;
        const size_t eq = s.find('=');
        if (eq == std::string::npos) parse_fail(line, "expected 'key = value'");
        const std::string key = trim(s.substr(0, eq));
        const std::string val = trim(s.substr(eq + 1));
        if (key.empty()) parse_fail(line, "empty key");
        if (val.empty()) parse_fail(line, "empty value for '" + key + "'");
        if (!seen.insert(key).second) parse_fail(line, "duplicate key '" + key + "'");

        if (key == "N") {
            cfg.n = static_cast<int>(to_number(val, line));
            cfg.n_explicit = true;
        } else if (key == "cfl") {
            cfg.flow.cfl = to_number(val, line);
        } else if (key == "t_max") {
            cfg.flow.t_max = to_number(val, line);
        } else if (key == "area_stop") {
            cfg.flow.area_stop = to_number(val, line);
        } else if (key == "k_cap") {
            cfg.flow.k_cap = to_number(val, line);
        } else if (key == "record_every") {
            cfg.flow.record_every = static_cast<int>(to_number(val, line));
        } else if (key == "initial") {
            if (val == "circle") cfg.initial = RunConfig::Initial::Circle;
            else if (val == "ellipse") cfg.initial = RunConfig::Initial::Ellipse;
            else if (val == "csv") cfg.initial = RunConfig::Initial::Csv;
            else parse_fail(line, "initial must be circle, ellipse or csv");
        } else if (key == "rho0") {
            cfg.rho0 = to_number(val, line);
        } else if (key == "a") {
            cfg.a = to_number(val, line);
        } else if (key == "b") {
            cfg.b = to_number(val, line);
        } else if (key == "csv_path") {
            cfg.csv_path = val;
        } else if (key == "connection") {
            if (val == "explicit") cfg.connection = RunConfig::Connection::Explicit;
            else if (val == "projective") cfg.connection = RunConfig::Connection::Projective;
            else if (val == "semi_symmetric") cfg.connection = RunConfig::Connection::SemiSymmetric;
            else parse_fail(line, "connection must be explicit, projective or semi_symmetric");
        } else if (key == "U") {
            cfg.u = to_vec2(val, line);
        } else if (key == "normalized_mode") {
            if (val == "posthoc") cfg.normalized_mode = RunConfig::NormalizedMode::Posthoc;
            else if (val == "direct") cfg.normalized_mode = RunConfig::NormalizedMode::Direct;
            else parse_fail(line, "normalized_mode must be posthoc or direct");
        } else if (key == "tau_max") {
            cfg.tau_max = to_number(val, line);
        } else if (key.size() == 4 && key[0] == 'T') {
            bool ok = key[1] >= '1' && key[1] <= '2' && key[2] >= '1' && key[2] <= '2' &&
                      key[3] >= '1' && key[3] <= '2';
            if (!ok) parse_fail(line, "unknown key '" + key + "'");
            cfg.t_comp[key[1] - '1'][key[2] - '1'][key[3] - '1'] = to_number(val, line);
        } else {
            parse_fail(line, "unknown key '" + key + "'");
        }
    }

    // Field-level validation.
    if (cfg.n < 16 || cfg.n % 2 != 0) throw ValidationError("N: must be even and >= 16");
    if (cfg.flow.cfl <= 0.0) throw ValidationError("cfl: must be positive");
    if (cfg.flow.t_max <= 0.0) throw ValidationError("t_max: must be positive");
    if (seen.count("area_stop") && cfg.flow.area_stop <= 0.0)
        throw ValidationError("area_stop: must be positive");
    if (cfg.flow.k_cap <= 0.0) throw ValidationError("k_cap: must be positive");
    if (cfg.flow.record_every < 1) throw ValidationError("record_every: must be >= 1");
    if (cfg.rho0 <= 0.0) throw ValidationError("rho0: must be positive");
    if (cfg.a <= 0.0 || cfg.b <= 0.0) throw ValidationError("a, b: must be positive");
    if (cfg.tau_max <= 0.0) throw ValidationError("tau_max: must be positive");

    // Exactly one way of giving the initial curve and the connection.
    const bool is_circle = cfg.initial == RunConfig::Initial::Circle;
    const bool is_ellipse = cfg.initial == RunConfig::Initial::Ellipse;
    const bool is_csv = cfg.initial == RunConfig::Initial::Csv;
    if (!is_circle && seen.count("rho0")) throw ValidationError("rho0: only valid for initial = circle");
    if (!is_ellipse && (seen.count("a") || seen.count("b")))
        throw ValidationError("a, b: only valid for initial = ellipse");
    if (!is_csv && seen.count("csv_path")) throw ValidationError("csv_path: only valid for initial = csv");
    if (is_csv && cfg.csv_path.empty()) throw ValidationError("csv_path: required for initial = csv");

    const bool is_explicit = cfg.connection == RunConfig::Connection::Explicit;
    bool any_t = false;
    for (const char* k : kTensorKeys) any_t |= seen.count(k) > 0;
    if (!is_explicit && any_t)
        throw ValidationError("T components: only valid for connection = explicit");
    if (is_explicit && seen.count("U")) throw ValidationError("U: requires projective or semi_symmetric");

    return cfg;
}

std::string serialize_config(const RunConfig& cfg)
{
    std::string out;
    auto kv = [&out](const char* k, const std::string& v) {
        out += k;
        out += " = ";
        out += v;
        out += '\n';
    };

    switch (cfg.initial) {
        case RunConfig::Initial::Circle:
            kv("initial", "circle");
            kv("rho0", fmt(cfg.rho0));
            break;
        case RunConfig::Initial::Ellipse:
            kv("initial", "ellipse");
            kv("a", fmt(cfg.a));
            kv("b", fmt(cfg.b));
            break;
        case RunConfig::Initial::Csv:
            kv("initial", "csv");
            kv("csv_path", cfg.csv_path);
            break;
    }

    switch (cfg.connection) {
        case RunConfig::Connection::Explicit: {
            kv("connection", "explicit");
            for (int k = 0; k < 2; ++k)
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j) {
                        char name[5] = {'T', char('1' + k), char('1' + i), char('1' + j), 0};
                        kv(name, fmt(cfg.t_comp[k][i][j]));
                    }
            break;
        }
        case RunConfig::Connection::Projective:
            kv("connection", "projective");
            kv("U", "[" + fmt(cfg.u[0]) + ", " + fmt(cfg.u[1]) + "]");
            break;
        case RunConfig::Connection::SemiSymmetric:
            kv("connection", "semi_symmetric");
            kv("U", "[" + fmt(cfg.u[0]) + ", " + fmt(cfg.u[1]) + "]");
            break;
    }

    kv("N", fmt(cfg.n));
    kv("cfl", fmt(cfg.flow.cfl));
    kv("t_max", fmt(cfg.flow.t_max));
    if (cfg.flow.area_stop > 0.0) kv("area_stop", fmt(cfg.flow.area_stop));
    kv("k_cap", fmt(cfg.flow.k_cap));
    kv("record_every", fmt(cfg.flow.record_every));
    kv("normalized_mode",
       cfg.normalized_mode == RunConfig::NormalizedMode::Posthoc ? "posthoc" : "direct");
    kv("tau_max", fmt(cfg.tau_max));
    return out;
}

ContorsionTensor make_tensor(const RunConfig& cfg)
{
    switch (cfg.connection) {
        case RunConfig::Connection::Projective: return projective(cfg.u);
        case RunConfig::Connection::SemiSymmetric: return semi_symmetric(cfg.u);
        case RunConfig::Connection::Explicit: break;
    }
    ContorsionTensor t;
    for (int k = 0; k < 2; ++k)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) t.set(k + 1, i + 1, j + 1, cfg.t_comp[k][i][j]);
    return t;
}

SupportGrid make_initial(const RunConfig& cfg)
{
    switch (cfg.initial) {
        case RunConfig::Initial::Circle: return SupportGrid::constant(cfg.n, cfg.rho0);
        case RunConfig::Initial::Ellipse: return ellipse_support(cfg.a, cfg.b, cfg.n);
        case RunConfig::Initial::Csv: break;
    }
    SupportGrid s = support_grid_from_csv(read_file(cfg.csv_path));
    if (cfg.n_explicit && s.n() != cfg.n)
        throw ValidationError("N: does not match the grid size of " + cfg.csv_path);
    return s;
}

}  // namespace macsf
