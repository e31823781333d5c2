#pragma once

#include <string>

#include "axicyl/evolution.hpp"

namespace axicyl {

inline constexpr int kSchemaVersion = 1;

// Strict key = value format, one entry per line, '#' starts a comment.
// schema_version, nu and t_end are required; every other key has a default.
// Unknown or repeated keys are errors.
SimConfig parse_config_text(const std::string& text, const std::string& origin = "<config>");
SimConfig parse_config(const std::string& path);

// Canonical text with every key, parseable by parse_config_text.
std::string echo_config(const SimConfig& c);

// theta > eps/2 holds exactly when eps2 < eps1 (d-6)/(d+6); both sides are
// evaluated so the echo can show them.
struct BootstrapCheck {
  double theta = 0.0, half_eps = 0.0, eps2_bound = 0.0;
  bool theta_exceeds_half_eps = false, eps2_below_bound = false;
};
BootstrapCheck bootstrap_check(const AnalysisParams& a);

// Shortest round-trip decimal form.
std::string format_double(double x);

}  // namespace axicyl
