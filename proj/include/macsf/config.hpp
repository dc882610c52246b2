#pragma once

#include <string>

#include "macsf/contorsion.hpp"
#include "macsf/curve.hpp"
#include "macsf/flow.hpp"

namespace macsf {

// Batch-run description parsed from the flat `key = value` config format.
// Exactly one initial-curve choice and at most one connection choice (the
// zero tensor when omitted).
struct RunConfig {
    int n = 256;
    bool n_explicit = false;  // whether N was given (csv grids may define it)
    FlowConfig flow;

    enum class Initial { Circle, Ellipse, Csv };
    Initial initial = Initial::Circle;
    double rho0 = 1.0;
    double a = 1.0;
    double b = 1.0;
    std::string csv_path;

    enum class Connection { Explicit, Projective, SemiSymmetric };
    Connection connection = Connection::Explicit;
    double t_comp[2][2][2] = {};  // explicit components, [k-1][i-1][j-1]
    Vec2 u{0.0, 0.0};

    enum class NormalizedMode { Posthoc, Direct };
    NormalizedMode normalized_mode = NormalizedMode::Posthoc;
    double tau_max = 5.0;
};

// Parses the line-based format: `key = value`, `#` comments, arrays as
// `[v1, v2]`. Unknown keys and malformed lines raise ParseError with the
// line number; semantically invalid values raise ValidationError naming
// the field.
RunConfig parse_config(const std::string& text);

// Canonical text form; parse_config(serialize_config(cfg)) reproduces cfg.
std::string serialize_config(const RunConfig& cfg);

ContorsionTensor make_tensor(const RunConfig& cfg);

// Builds the initial support grid (reads the CSV file for Initial::Csv).
SupportGrid make_initial(const RunConfig& cfg);

}  // namespace macsf
