#pragma once

#include <stdexcept>
#include <string>

namespace macsf {

// Geometry error: a support grid whose S_thth + S is not positive everywhere.
struct NonConvexError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StepUnderflowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BeyondCollapseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct HypothesisError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A trace does not carry enough data for the requested post-processing.
struct TraceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace macsf
