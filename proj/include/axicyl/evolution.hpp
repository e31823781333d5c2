#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>

#include "axicyl/flow_state.hpp"
#include "axicyl/forcing.hpp"

namespace axicyl {

struct InitialSpec {
  // "swirl-bubble": u = A r^2 (1-(r/R)^2)^2 cos^2(pi z/2a), Gamma = 0.
  // "sheared-jet": the same u plus Gamma = B (1-(r/R)^2) sin(pi z/a) (1-(z/a)^2).
  std::string id = "swirl-bubble";
  double swirl_amplitude = 1.0;
  double gamma_amplitude = 1.0;
  // Amplitude of a seeded smooth perturbation of u (cosine modes in z).
  double perturbation = 0.0;
};

struct ForcingSpec {
  std::string id = "none";
  std::map<std::string, double> params;
};

struct AnalysisParams {
  double delta = 0.1;
  double d = 8.0;
  double s = 8.0;
  double eps1 = 0.3;
  double eps2 = 0.05;
  double mu = 0.5;
  double c0 = 0.01;
  // Validate the exponent constraints of the interaction-integral bound.
  bool check_interaction_exponents = true;

  double eps() const { return eps1 + eps2; }
  double theta() const { return (1.0 - 3.0 / d) * eps1 - (3.0 / d) * eps2; }
};

struct SimConfig {
  double nu = 0.0;
  double R = 1.0, a = 1.0;
  int nr = 32, nz = 64;
  double cfl_advective = 0.4;
  double cfl_diffusive = 0.2;
  double t_end = 0.0;
  long output_every = 10;
  InitialSpec initial;
  ForcingSpec forcing;
  AnalysisParams analysis;
  std::uint64_t seed = 0;
  EllipticSolveSettings elliptic;

  // Throws ConfigError naming the violated relation.
  void validate() const;
};

GridPtr grid_for(const SimConfig& c);
Forcing forcing_for(const SimConfig& c);
FlowState initial_state(const SimConfig& c, const GridPtr& g);

ScalarField rhs_swirl(const FlowState& s, const Forcing& f, double nu);
ScalarField rhs_gamma(const FlowState& s, const Forcing& f, double nu);

double stable_dt(const FlowState& s, const SimConfig& c);

// One SSP-RK3 step of size dt (stable_dt when dt <= 0).
FlowState step(const FlowState& s, const SimConfig& c, const Forcing& f, double dt = 0.0);

class DiagnosticsSeries;

struct RunHooks {
  // Called after every recorded row (output cadence and t_end).
  std::function<void(const FlowState&, const DiagnosticsSeries&)> on_record;
};

struct RunResult {
  FlowState state;
  std::shared_ptr<DiagnosticsSeries> series;
};

// Integrate to t_end from the preset initial data.
RunResult run(const SimConfig& c, const RunHooks& hooks = {});
// Continue from a given state and series (restart).
RunResult run_from(const SimConfig& c, FlowState state, std::shared_ptr<DiagnosticsSeries> series,
                   const RunHooks& hooks = {});

}  // namespace axicyl
