#include <gtest/gtest.h>

#include <cmath>

#include "axicyl/diagnostics.hpp"
#include "axicyl/errors.hpp"
#include "axicyl/evolution.hpp"

using namespace axicyl;

namespace {

SimConfig small_config(const std::string& initial = "swirl-bubble") {
  SimConfig c;
  c.nu = 0.05;
  c.nr = 16;
  c.nz = 32;
  c.t_end = 0.02;
  c.output_every = 5;
  c.initial.id = initial;
  return c;
}

double max_abs_diff(const ScalarField& a, const ScalarField& b) { return (a - b).max_abs(); }

}  // namespace

TEST(Config, ValidationNamesTheViolatedRelation) {
  SimConfig c = small_config();
  EXPECT_NO_THROW(c.validate());
  c.nu = 0.0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = small_config();
  c.analysis.d = 8.0;
  c.analysis.eps1 = 0.3;
  c.analysis.eps2 = 2.0;
  try {
    c.validate();
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("theta"), std::string::npos);
  }
  c.analysis.check_interaction_exponents = false;
  EXPECT_NO_THROW(c.validate());
  c = small_config();
  c.initial.id = "vortex-ring";
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(Config, InteractionExponentsFromTheBootstrap) {
  AnalysisParams a;
  a.d = 8.0;
  a.eps1 = 0.3;
  a.eps2 = 0.2;
  // theta = (1 - 3/8) 0.3 - (3/8) 0.2 = 0.1125
  EXPECT_NEAR(a.theta(), 0.1125, 1e-15);
}

TEST(Initial, PresetsRespectBoundaryConditions) {
  for (const char* id : {"swirl-bubble", "sheared-jet"}) {
    const SimConfig c = small_config(id);
    const auto g = grid_for(c);
    const FlowState s = initial_state(c, g);
    for (int j = 0; j <= c.nz; ++j) {
      EXPECT_EQ(s.u(0, j), 0.0);
      EXPECT_EQ(s.u(c.nr, j), 0.0);
      EXPECT_EQ(s.gamma(c.nr, j), 0.0);
    }
    for (int i = 0; i <= c.nr; ++i) {
      EXPECT_EQ(s.gamma(i, 0), 0.0);
      EXPECT_EQ(s.gamma(i, c.nz), 0.0);
    }
    EXPECT_LE(divergence_residual(s.v_r, s.v_z), 1e-10);
  }
}

TEST(Initial, PerturbationIsSeeded) {
  SimConfig c = small_config();
  c.initial.perturbation = 0.1;
  c.seed = 4;
  const auto g = grid_for(c);
  const auto a = initial_state(c, g), b = initial_state(c, g);
  EXPECT_EQ(a.u.values(), b.u.values());
  c.seed = 5;
  EXPECT_NE(initial_state(c, g).u.values(), a.u.values());
}

TEST(TimeStep, DiffusiveLimitWithoutMeridionalFlow) {
  // Swirl bubble: Gamma = 0, so v_r = v_z = 0 and only the diffusive bound is
  // active: 0.2 h^2 / (4 nu) with h = 1/32, nu = 0.05.
  SimConfig c = small_config();
  c.nr = 32;
  c.nz = 64;
  const auto s = initial_state(c, grid_for(c));
  EXPECT_DOUBLE_EQ(stable_dt(s, c), 0.2 / 1024.0 / 0.2);
}

TEST(TimeStep, AdvectiveLimitUsesMeridionalSpeed) {
  SimConfig c = small_config("sheared-jet");
  c.nu = 1e-6;
  c.initial.gamma_amplitude = 50.0;
  const auto s = initial_state(c, grid_for(c));
  double vmax = 0.0;
  for (int i = 0; i <= c.nr; ++i)
    for (int j = 0; j <= c.nz; ++j)
      vmax = std::max(vmax, std::abs(s.v_r(i, j)) + std::abs(s.v_z(i, j)));
  ASSERT_GT(vmax, 0.0);
  EXPECT_DOUBLE_EQ(stable_dt(s, c), c.cfl_advective * (1.0 / 16.0) / vmax);
}

// u = r^2 (1 - r^2), Gamma = 0 with f0 = 8 nu r^2 is a steady state; the
// finite-volume swirl operator reproduces r (u_r / r)_r exactly on r^2 and r^4.
TEST(Evolution, ManufacturedSteadyState) {
  SimConfig c = small_config();
  const auto g = grid_for(c);
  const double nu = c.nu;
  Forcing f = no_forcing();
  f.id = "manufactured";
  f.zero = false;
  f.f0 = [nu](double r, double, double) { return 8.0 * nu * r * r; };
  f.f_phi = [nu](double r, double, double) { return 8.0 * nu * r; };
  f.F_z = [nu](double, double, double) { return 16.0 * nu; };
  auto u = ScalarField::sample(
      g, [](double r, double) { return r * r * (1.0 - r * r); }, Parity::Even, EdgeRule::Even);
  FlowState s = make_state(u, make_gamma_field(g), 0.0, c.elliptic);
  EXPECT_LT(rhs_swirl(s, f, nu).max_abs(), 1e-12);
  EXPECT_LT(rhs_gamma(s, f, nu).max_abs(), 1e-12);
  for (int k = 0; k < 50; ++k) s = step(s, c, f);
  EXPECT_LT(max_abs_diff(s.u, u), 1e-13);
  EXPECT_LT(s.gamma.max_abs(), 1e-13);
  EXPECT_EQ(s.step, 50);
}

TEST(Evolution, StepPreservesBoundaryConditionsAndContinuity) {
  SimConfig c = small_config("sheared-jet");
  c.forcing.id = "swirl-drive";
  const auto g = grid_for(c);
  const Forcing f = forcing_for(c);
  FlowState s = initial_state(c, g);
  for (int k = 0; k < 10; ++k) s = step(s, c, f);
  for (int j = 0; j <= c.nz; ++j) {
    EXPECT_EQ(s.u(0, j), 0.0);
    EXPECT_EQ(s.u(c.nr, j), 0.0);
    EXPECT_EQ(s.gamma(c.nr, j), 0.0);
  }
  for (int i = 0; i <= c.nr; ++i) EXPECT_EQ(s.gamma(i, c.nz), 0.0);
  EXPECT_LE(divergence_residual(s.v_r, s.v_z), 1e-9);
}

TEST(Evolution, ThirdOrderInTime) {
  SimConfig c = small_config("sheared-jet");
  c.initial.gamma_amplitude = 5.0;
  const auto g = grid_for(c);
  const Forcing f = forcing_for(c);
  const double T = 0.02;
  auto advance = [&](int n) {
    FlowState s = initial_state(c, g);
    for (int k = 0; k < n; ++k) s = step(s, c, f, T / n);
    return s;
  };
  const FlowState ref = advance(64);
  const double e1 = max_abs_diff(advance(4).gamma, ref.gamma);
  const double e2 = max_abs_diff(advance(8).gamma, ref.gamma);
  EXPECT_GT(e1 / e2, 6.5);
}

TEST(Evolution, DecayRunObeysMaximumPrinciple) {
  SimConfig c = small_config();
  c.initial.perturbation = 0.3;
  c.seed = 9;
  const RunResult r = run(c);
  const double u0 = r.series->rows().front().u_inf;
  EXPECT_LE(r.series->totals().u_inf_sup, u0 * (1.0 + 1e-10));
  EXPECT_DOUBLE_EQ(r.state.t, c.t_end);
}

TEST(Evolution, RunRecordsOnCadenceAndAtTheEnd) {
  SimConfig c = small_config();
  const RunResult r = run(c);
  const auto& rows = r.series->rows();
  ASSERT_GE(rows.size(), 2u);
  EXPECT_EQ(rows.front().step, 0);
  EXPECT_DOUBLE_EQ(rows.back().t, c.t_end);
  EXPECT_EQ(rows.back().step, r.state.step);
  for (std::size_t k = 1; k + 1 < rows.size(); ++k) EXPECT_EQ(rows[k].step % c.output_every, 0);
}

TEST(Evolution, RunsAreDeterministic) {
  SimConfig c = small_config("sheared-jet");
  c.forcing.id = "swirl-drive";
  const RunResult a = run(c), b = run(c);
  EXPECT_EQ(a.state.u.values(), b.state.u.values());
  EXPECT_EQ(a.state.gamma.values(), b.state.gamma.values());
}

TEST(Evolution, NonFiniteStateIsASolverError) {
  SimConfig c = small_config();
  const auto g = grid_for(c);
  FlowState s = initial_state(c, g);
  s.u(3, 3) = NAN;
  EXPECT_THROW(step(s, c, forcing_for(c), 1e-4), Error);
}
