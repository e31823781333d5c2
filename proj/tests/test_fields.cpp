#include <gtest/gtest.h>

#include <omp.h>

#include <cmath>
#include <cstring>
#include <random>

#include "axicyl/calculus.hpp"
#include "axicyl/errors.hpp"
#include "axicyl/kernels.hpp"

using namespace axicyl;

namespace {

double max_diff(const ScalarField& f, const std::function<double(double, double)>& exact) {
  const auto& g = f.grid();
  double m = 0.0;
  for (int i = 0; i <= g.nr(); ++i)
    for (int j = 0; j <= g.nz(); ++j) m = std::max(m, std::abs(f(i, j) - exact(g.r(i), g.z(j))));
  return m;
}

ScalarField random_field(const GridPtr& g, Parity p, EdgeRule e, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ScalarField f(g, p, e);
  for (auto& v : f.values()) v = u(rng);
  f.enforce_symmetry();
  return f;
}

}  // namespace

TEST(Derivative, ExactOnQuadratics) {
  const auto g = build_grid(1.0, 1.0, 16, 12);
  const auto f = ScalarField::sample(
      g, [](double r, double z) { return r * r + 3.0 * z * z - z; }, Parity::Even);
  const auto fr = derivative(f, Direction::R);
  const auto fz = derivative(f, Direction::Z);
  EXPECT_LT(max_diff(fr, [](double r, double) { return 2.0 * r; }), 1e-12);
  EXPECT_LT(max_diff(fz, [](double, double z) { return 6.0 * z - 1.0; }), 1e-12);
  EXPECT_EQ(fr.parity(), Parity::Odd);
  EXPECT_EQ(fz.parity(), Parity::Even);
}

TEST(Derivative, OddFieldUsesAntisymmetricGhost) {
  const auto g = build_grid(1.0, 1.0, 16, 8);
  const auto f = ScalarField::sample(g, [](double r, double) { return r; }, Parity::Odd);
  const auto fr = derivative(f, Direction::R);
  EXPECT_LT(max_diff(fr, [](double, double) { return 1.0; }), 1e-12);
  EXPECT_EQ(fr.parity(), Parity::Even);
}

TEST(Derivative, SecondOrderConvergence) {
  auto f = [](double r, double z) { return std::cos(r) * std::sin(2.0 * z); };
  auto fr = [](double r, double z) { return -std::sin(r) * std::sin(2.0 * z); };
  double err[2];
  for (int k = 0; k < 2; ++k) {
    const auto g = build_grid(1.0, 1.0, 16 << k, 16 << k);
    err[k] = max_diff(derivative(ScalarField::sample(g, f, Parity::Even), Direction::R), fr);
  }
  EXPECT_NEAR(err[0] / err[1], 4.0, 0.6);
}

TEST(Derivative, EdgeRulesFlipUnderZ) {
  const auto g = build_grid(1.0, 1.0, 8, 16);
  const auto f = ScalarField::sample(
      g, [](double, double z) { return std::cos(M_PI * z); }, Parity::Even, EdgeRule::Even);
  const auto fz = derivative(f, Direction::Z);
  EXPECT_EQ(fz.edge(), EdgeRule::Odd);
  for (int i = 0; i <= g->nr(); ++i) {
    EXPECT_EQ(fz(i, 0), 0.0);
    EXPECT_EQ(fz(i, g->nz()), 0.0);
  }
}

TEST(Parity, DerivativeAlgebraOnRandomInputs) {
  std::mt19937_64 rng(7);
  const auto g = build_grid(1.0, 1.0, 12, 10);
  for (Parity p : {Parity::Even, Parity::Odd}) {
    for (EdgeRule e : {EdgeRule::None, EdgeRule::Even, EdgeRule::Odd}) {
      const auto f = random_field(g, p, e, rng);
      const auto fr = derivative(f, Direction::R);
      const auto fz = derivative(f, Direction::Z);
      EXPECT_EQ(fr.parity(), flip(p));
      EXPECT_EQ(fz.parity(), p);
      EXPECT_EQ(fz.edge(), flip(e));
      // Odd outputs vanish on the axis exactly.
      for (const auto* d : {&fr, &fz})
        if (d->parity() == Parity::Odd)
          for (int j = 0; j <= g->nz(); ++j) EXPECT_EQ((*d)(0, j), 0.0);
    }
  }
  EXPECT_EQ(product_parity(Parity::Odd, Parity::Odd), Parity::Even);
  EXPECT_EQ(product_parity(Parity::Odd, Parity::Even), Parity::Odd);
}

TEST(Parity, MismatchedSumIsAContractError) {
  const auto g = build_grid(1.0, 1.0, 8, 8);
  ScalarField a(g, Parity::Even), b(g, Parity::Odd);
  EXPECT_THROW(a + b, ContractError);
  EXPECT_THROW(over_r(a), ContractError);
}

TEST(Curl, SolidBodyRotation) {
  // v_phi = r: omega_z = d_r v_phi + v_phi / r = 2, omega_r = omega_phi = 0.
  const auto g = build_grid(1.0, 1.0, 16, 16);
  ScalarField vr(g, Parity::Odd), vz(g, Parity::Even);
  const auto vphi = ScalarField::sample(g, [](double r, double) { return r; }, Parity::Odd);
  const auto w = curl_axisym(vr, vphi, vz);
  EXPECT_LT(max_diff(w.z, [](double, double) { return 2.0; }), 1e-12);
  EXPECT_LT(w.r.max_abs(), 1e-14);
  EXPECT_LT(w.phi.max_abs(), 1e-14);
  EXPECT_EQ(w.r.parity(), Parity::Odd);
  EXPECT_EQ(w.phi.parity(), Parity::Odd);
  EXPECT_EQ(w.z.parity(), Parity::Even);
  EXPECT_THROW(curl_axisym(vz, vphi, vz), ContractError);
}

TEST(Curl, SwirlDerivedQuantities) {
  // u = r^2 z: v_phi = r z, Phi = -u_z / r^2 = -1 including the axis limit.
  const auto g = build_grid(1.0, 1.0, 16, 16);
  const auto u = ScalarField::sample(g, [](double r, double z) { return r * r * z; }, Parity::Even);
  EXPECT_LT(max_diff(swirl_velocity(u), [](double r, double z) { return r * z; }), 1e-14);
  EXPECT_LT(max_diff(phi_from_swirl(u), [](double, double) { return -1.0; }), 1e-12);
  EXPECT_LT(max_diff(over_r2(u), [](double, double z) { return z; }), 1e-12);
}

TEST(Curl, OverRAxisLimit) {
  const auto g = build_grid(1.0, 1.0, 16, 8);
  const auto f = ScalarField::sample(
      g, [](double r, double z) { return std::sin(r) * (1.0 + z); }, Parity::Odd);
  const auto q = over_r(f);
  for (int j = 0; j <= g->nz(); ++j) EXPECT_NEAR(q(0, j), 1.0 + g->z(j), 2e-3);
}

TEST(Continuity, SolenoidalPairHasSmallResidual) {
  // v_r = -r z, v_z = z^2: d_r(r v_r) = -2 r z cancels d_z(r v_z) = 2 r z.
  const auto g = build_grid(1.0, 1.0, 16, 16);
  const auto vr = ScalarField::sample(g, [](double r, double z) { return -r * z; }, Parity::Odd);
  const auto vz = ScalarField::sample(g, [](double, double z) { return z * z; }, Parity::Even);
  EXPECT_LT(divergence_residual(vr, vz), 1e-12);
}

TEST(Zero, SwirlMustVanishOnAxis) {
  const auto g = build_grid(1.0, 1.0, 8, 8);
  auto u = ScalarField::sample(g, [](double r, double) { return r * r; }, Parity::Even);
  EXPECT_NO_THROW(require_zero_on_axis(u, "u"));
  u(0, 3) = 1.0;
  EXPECT_THROW(require_zero_on_axis(u, "u"), ContractError);
}

// The OpenMP kernels must reproduce the serial reference bit for bit,
// independent of the thread count.
class KernelBackends : public ::testing::TestWithParam<int> {};

TEST_P(KernelBackends, BitwiseEqualToSerial) {
  const int threads = GetParam();
  omp_set_num_threads(threads);
  const int rows = 37, cols = 53;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<double> in(rows * cols), rw(rows), zw(cols);
  for (auto& v : in) v = u(rng);
  for (auto& v : rw) v = std::abs(u(rng));
  for (auto& v : zw) v = std::abs(u(rng));

  kernels::RadialStencil st;
  st.i0 = 1;
  st.i1 = rows - 2;
  st.lo.resize(rows);
  st.di.resize(rows);
  st.up.resize(rows);
  for (int i = 0; i < rows; ++i) {
    st.lo[i] = u(rng);
    st.di[i] = u(rng);
    st.up[i] = u(rng);
  }

  std::vector<double> a(in.size()), b(in.size());
  auto same = [&] { return std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0; };
  for (auto p : {kernels::AxisParity::Even, kernels::AxisParity::Odd}) {
    kernels::serial::derivative_r(rows, cols, 0.1, p, in.data(), a.data());
    kernels::omp::derivative_r(rows, cols, 0.1, p, in.data(), b.data());
    EXPECT_TRUE(same());
  }
  for (auto e : {kernels::EdgeRule::None, kernels::EdgeRule::Even, kernels::EdgeRule::Odd}) {
    kernels::serial::derivative_z(rows, cols, 0.2, e, in.data(), a.data());
    kernels::omp::derivative_z(rows, cols, 0.2, e, in.data(), b.data());
    EXPECT_TRUE(same());
  }
  for (auto zc : {kernels::ZClosure::Dirichlet, kernels::ZClosure::Mirror}) {
    kernels::serial::apply_stencil(rows, cols, st, 0.3, zc, in.data(), a.data());
    kernels::omp::apply_stencil(rows, cols, st, 0.3, zc, in.data(), b.data());
    EXPECT_TRUE(same());
  }
  const double s1 = kernels::serial::weighted_sum(rows, cols, rw.data(), zw.data(), in.data());
  const double s2 = kernels::omp::weighted_sum(rows, cols, rw.data(), zw.data(), in.data());
  EXPECT_EQ(std::memcmp(&s1, &s2, sizeof s1), 0);
  for (double p : {1.5, 2.0, 8.0, 1024.0}) {
    const double q1 =
        kernels::serial::weighted_power_sum(rows, cols, rw.data(), zw.data(), in.data(), p, 2.0);
    const double q2 =
        kernels::omp::weighted_power_sum(rows, cols, rw.data(), zw.data(), in.data(), p, 2.0);
    EXPECT_EQ(std::memcmp(&q1, &q2, sizeof q1), 0) << "p = " << p;
  }
  const double d1 = kernels::serial::dot(static_cast<int>(in.size()), in.data(), in.data());
  const double d2 = kernels::omp::dot(static_cast<int>(in.size()), in.data(), in.data());
  EXPECT_EQ(std::memcmp(&d1, &d2, sizeof d1), 0);
}

INSTANTIATE_TEST_SUITE_P(Threads, KernelBackends, ::testing::Values(1, 2, 4, 7));

TEST(Kernels, AbsPowMatchesStdPow) {
  for (double x : {-1.7, 0.3, 2.5})
    for (double p : {1.0, 2.0, 3.0, 8.0, 33.0, 1.5})
      EXPECT_NEAR(kernels::abs_pow(x, p), std::pow(std::abs(x), p),
                  1e-13 * std::pow(std::abs(x), p));
}
