#pragma once

#include <span>
#include <string>
#include <vector>

#include "macsf/curve.hpp"
#include "macsf/flow.hpp"
#include "macsf/normalized.hpp"

namespace macsf {

// All writers build deterministic byte strings (%.17g, '\n' line ends), so
// identical inputs always produce identical files.

std::string support_grid_csv(const SupportGrid& s);            // theta,S
SupportGrid support_grid_from_csv(const std::string& text);

std::string plane_curve_csv(const PlaneCurve& c);              // theta,x,y

std::string trace_csv(const FlowTrace& t, const PsiCoefficients& c);  // t,theta,S,k,kbar
std::string summary_csv(const FlowTrace& t);  // t,area,length,k_min,k_max,kbar_min,diameter

// tau,theta,S_tilde,k_tilde
std::string normalized_trace_csv(std::span<const NormalizedState> states);
// tau,entropy,circle_deviation,stationarity_residual
std::string normalized_summary_csv(std::span<const NormalizedState> states);

// One closed polygon per curve, equal-scale viewBox over the union bounding
// box with a 5% margin, stroke width 0.5% of the box.
std::string curves_svg(const std::vector<PlaneCurve>& curves);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace macsf
