#include <gtest/gtest.h>

#include <cmath>

#include "axicyl/diagnostics.hpp"
#include "axicyl/errors.hpp"

using namespace axicyl;

namespace {

SimConfig config(int n) {
  SimConfig c;
  c.nu = 0.05;
  c.nr = n;
  c.nz = n;
  c.t_end = 1.0;
  return c;
}

// u = A r^2 (1 - r^2) sin(pi z / 2): v_phi = A r (1 - r^2) sin, and
// Phi = -u_z / r^2 = -A (pi/2) (1 - r^2) cos(pi z / 2).
FlowState swirl_state(const SimConfig& c, double A, const ScalarField* gamma = nullptr) {
  const auto g = grid_for(c);
  auto u = ScalarField::sample(
      g, [A](double r, double z) { return A * r * r * (1 - r * r) * std::sin(M_PI * z / 2); },
      Parity::Even, EdgeRule::Even);
  return make_state(u, gamma ? *gamma : make_gamma_field(g), 0.0, c.elliptic);
}

}  // namespace

TEST(Measure, EnergyOfASwirlBubble) {
  // u = r^2 (1 - r^2)^2 cos^2(pi z/2), no meridional flow: v_phi^2 r integrates
  // to (1/60)(3/4) over r in [0, 1] and z in [-1, 1], so the energy is 1/160.
  SimConfig c = config(64);
  const auto s = initial_state(c, grid_for(c));
  DiagnosticsSeries d(c, forcing_for(c));
  d.record(s, 0.0);
  EXPECT_NEAR(d.rows()[0].energy, 1.0 / 160.0, 1e-3 / 160.0);
  EXPECT_NEAR(d.rows()[0].u_inf, 4.0 / 27.0, 1e-3);
}

TEST(Measure, InteractionIntegral) {
  // With Gamma = (1 - r^2) sin(pi z) the integral of (v_phi/r) Phi Gamma is
  // -(pi/2) (1/8) (1/2) = -pi/32.
  double err[2];
  for (int k = 0; k < 2; ++k) {
    SimConfig c = config(32 << k);
    const auto g = grid_for(c);
    auto gamma = ScalarField::sample(
        g, [](double r, double z) { return (1 - r * r) * std::sin(M_PI * z); }, Parity::Even);
    const auto s = swirl_state(c, 1.0, &gamma);
    err[k] = std::abs(interaction_integral_increment(s) + M_PI / 32.0);
  }
  EXPECT_LT(err[1], 1e-3);
  EXPECT_GT(err[0] / err[1], 3.0);
}

TEST(Series, VNormOfAFrozenState) {
  // Same state at t = 0 and t = 4: |Phi|_V = |Phi|_2 + sqrt(4 |grad Phi|_2^2),
  // |Phi|_2^2 = pi^2/24, |grad Phi|_2^2 = pi^2/4 + pi^4/96.
  SimConfig c = config(64);
  FlowState s = swirl_state(c, 1.0);
  DiagnosticsSeries d(c, forcing_for(c));
  d.record(s, 0.0);
  s.t = 4.0;
  d.record(s, 4.0);
  const double expect = M_PI / std::sqrt(24.0) + 2.0 * std::sqrt(M_PI * M_PI / 4 + std::pow(M_PI, 4) / 96);
  EXPECT_NEAR(v_norm(d, "phi"), expect, 1e-2 * expect);
  EXPECT_EQ(v_norm(d, "gamma"), 0.0);
  EXPECT_DOUBLE_EQ(d.X(), v_norm(d, "phi"));
  EXPECT_THROW(v_norm(d, "psi"), ContractError);
}

TEST(Series, TrapezoidAndSupremaOverTwoPoints) {
  // Doubling u quadruples the dissipation, so the trapezoid over [0, 1]
  // gives (D + 4D)/2 = 5D/2.
  SimConfig c = config(24);
  FlowState a = swirl_state(c, 1.0), b = swirl_state(c, 2.0);
  b.t = 1.0;
  DiagnosticsSeries one(c, forcing_for(c));
  one.record(a, 0.0);
  one.record(a, 0.0);
  const double D = one.last().dissipation;
  DiagnosticsSeries d(c, forcing_for(c));
  d.record(a, 0.0);
  d.record(b, 1.0);
  EXPECT_NEAR(d.totals().dissipation, 2.5 * D, 1e-12 * D);
  EXPECT_NEAR(d.totals().phi_l2_sup, 2.0 * one.totals().phi_l2_sup, 1e-12);
  EXPECT_NEAR(d.rows()[1].dissipation_cum, c.nu * 2.5 * D, 1e-12);
  // The criterion ratio is scale invariant.
  EXPECT_NEAR(*criterion_ratio(d, 8.0), *criterion_ratio(one, 8.0), 1e-12);
}

TEST(Series, TimeMustNotRegress) {
  SimConfig c = config(16);
  FlowState s = swirl_state(c, 1.0);
  s.t = 1.0;
  DiagnosticsSeries d(c, forcing_for(c));
  d.record(s, 0.0);
  s.t = 0.5;
  EXPECT_THROW(d.advance(s, 0.1), ContractError);
}

TEST(Series, DataConstantsWithoutForcing) {
  SimConfig c = config(32);
  const auto s = initial_state(c, grid_for(c));
  DiagnosticsSeries d(c, forcing_for(c));
  d.record(s, 0.0);
  const auto D = d.d_constants();
  EXPECT_DOUBLE_EQ(D[1], std::sqrt(2.0 * d.rows()[0].energy));
  EXPECT_DOUBLE_EQ(D[2], d.rows()[0].u_inf);
  for (int k = 1; k <= 12; ++k) {
    EXPECT_TRUE(D.tracked[k - 1]) << "D" << k;
    EXPECT_GE(D[k], 0.0) << "D" << k;
  }
}

TEST(Series, CriterionRatioUndefinedWithoutSwirl) {
  SimConfig c = config(16);
  const auto g = grid_for(c);
  const FlowState s = make_state(make_swirl_field(g), make_gamma_field(g), 0.0, c.elliptic);
  DiagnosticsSeries d(c, forcing_for(c));
  d.record(s, 0.0);
  EXPECT_FALSE(criterion_ratio(d, 8.0).has_value());
  EXPECT_FALSE(d.rows()[0].ratio_d.has_value());
  EXPECT_FALSE(fprop_limit_check(d).defined);
}

TEST(Series, FpropRatiosIncreaseTowardsOne) {
  SimConfig c = config(64);
  const auto s = swirl_state(c, 1.0);
  DiagnosticsSeries d(c, forcing_for(c));
  d.record(s, 0.0);
  const auto rep = fprop_limit_check(d);
  ASSERT_TRUE(rep.defined);
  ASSERT_EQ(rep.ratio.size(), 4u);
  EXPECT_TRUE(rep.monotone);
  EXPECT_TRUE(rep.limit_ok);
  // The measure of the unit cylinder is 1, so every ratio is at most 1.
  for (double x : rep.ratio) EXPECT_LE(x, 1.0 + 1e-12);
  const double l8 = lp_norm(s.v_phi, 8.0) / s.v_phi.max_abs();
  EXPECT_NEAR(rep.ratio[0], l8, 1e-14);
  EXPECT_THROW(fprop_limit_check(d, {8, 9}), ContractError);
}

TEST(Series, JsonRoundTripRestoresTheAccumulators) {
  SimConfig c = config(16);
  c.t_end = 0.01;
  c.output_every = 3;
  const auto r = run(c);
  DiagnosticsSeries copy(c, forcing_for(c));
  copy.load_json(r.series->to_json());
  EXPECT_EQ(copy.to_json(), r.series->to_json());
  EXPECT_EQ(copy.rows().size(), r.series->rows().size());
  EXPECT_DOUBLE_EQ(copy.X(), r.series->X());
  EXPECT_THROW(copy.load_json("{not json"), FormatError);
}

TEST(Series, EnergyResidualIsSmallOnADecayRun) {
  SimConfig c = config(32);
  c.nz = 64;
  c.t_end = 0.05;
  const auto r = run(c);
  EXPECT_LT(r.series->energy_residual(), 1e-3);
  EXPECT_LE(r.series->max_div_residual(), 1e-9);
}

TEST(Csv, ColumnContract) {
  const std::vector<std::string> expect = {
      "step",     "t",           "dt",        "energy",       "dissipation_cum",
      "u_inf",    "vphi_inf",    "vphi_d",    "phi_l2",       "gamma_l2",
      "phi_V",    "gamma_V",     "X",         "I_abs",        "ratio_d",
      "div_residual", "energy_residual", "D1", "D2",          "D3",
      "D4",       "D5",          "D6",        "D7",           "D8",
      "D9",       "D10",         "D11",       "D12"};
  EXPECT_EQ(csv_columns(), expect);
}
