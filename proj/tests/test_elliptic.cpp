#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "axicyl/calculus.hpp"
#include "axicyl/elliptic.hpp"
#include "axicyl/errors.hpp"

using namespace axicyl;

namespace {

struct Unknowns {
  std::vector<std::pair<int, int>> nodes;
  std::vector<int> slot;  // grid index -> unknown number or -1
};

Unknowns unknowns(const EllipticSystem& sys) {
  const auto& g = sys.grid();
  Unknowns u;
  u.slot.assign(g.size(), -1);
  for (int i = sys.first_row(); i <= sys.last_row(); ++i)
    for (int j = 1; j < g.nz(); ++j) {
      u.slot[g.index(i, j)] = static_cast<int>(u.nodes.size());
      u.nodes.emplace_back(i, j);
    }
  return u;
}

// Dense finite-volume matrix assembled directly from the operator definitions:
// radial fluxes r^k (f_{i+1} - f_i)/h across the faces r_i +- h/2 divided by the
// control volume integral of r^k, plus the three-point z difference.
Eigen::MatrixXd dense_operator(const EllipticSystem& sys) {
  const auto& g = sys.grid();
  const auto u = unknowns(sys);
  const int n = static_cast<int>(u.nodes.size());
  const double h = g.hr(), hz2 = g.hz() * g.hz();
  const bool psi1 = sys.kind() == OperatorKind::Psi1;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (int q = 0; q < n; ++q) {
    const auto [i, j] = u.nodes[q];
    const double r = g.r(i), rm = std::max(r - h / 2, 0.0), rp = r + h / 2;
    double vol, fm, fp, extra = 0.0;
    if (psi1) {
      vol = (std::pow(rp, 4) - std::pow(rm, 4)) / 4.0;
      fm = std::pow(rm, 3) / h;
      fp = std::pow(rp, 3) / h;
    } else {
      vol = r * h;
      fm = rm / h;
      fp = rp / h;
      extra = 1.0 / (r * r);
    }
    auto add = [&](int ii, int jj, double v) {
      const int s = u.slot[g.index(ii, jj)];
      if (s >= 0) A(q, s) += v;
    };
    add(i, j, (fm + fp) / vol + extra + 2.0 / hz2);
    if (i > 0) add(i - 1, j, -fm / vol);
    add(i + 1, j, -fp / vol);
    add(i, j - 1, -1.0 / hz2);
    add(i, j + 1, -1.0 / hz2);
  }
  return A;
}

Eigen::MatrixXd matrix_of(const EllipticSystem& sys, bool spd) {
  const auto& g = sys.grid();
  const auto u = unknowns(sys);
  const int n = static_cast<int>(u.nodes.size());
  Eigen::MatrixXd M(n, n);
  std::vector<double> x(g.size()), y(g.size());
  for (int c = 0; c < n; ++c) {
    std::fill(x.begin(), x.end(), 0.0);
    x[g.index(u.nodes[c].first, u.nodes[c].second)] = 1.0;
    spd ? sys.apply_spd(x.data(), y.data()) : sys.apply(x.data(), y.data());
    for (int q = 0; q < n; ++q) M(q, c) = y[g.index(u.nodes[q].first, u.nodes[q].second)];
  }
  return M;
}

class OperatorKinds : public ::testing::TestWithParam<OperatorKind> {};

}  // namespace

TEST_P(OperatorKinds, MatchesDenseAssembly) {
  const auto g = build_grid(1.0, 0.7, 9, 11);
  const EllipticSystem sys(g, GetParam());
  EXPECT_LT((matrix_of(sys, false) - dense_operator(sys)).cwiseAbs().maxCoeff(), 1e-9);
}

TEST_P(OperatorKinds, WeightedOperatorIsSymmetricPositiveDefinite) {
  const auto g = build_grid(1.0, 1.0, 10, 8);
  const EllipticSystem sys(g, GetParam());
  const Eigen::MatrixXd K = matrix_of(sys, true);
  EXPECT_LT((K - K.transpose()).cwiseAbs().maxCoeff(), 1e-12 * K.cwiseAbs().maxCoeff());
  Eigen::LLT<Eigen::MatrixXd> llt(K);
  EXPECT_EQ(llt.info(), Eigen::Success);
}

TEST_P(OperatorKinds, SolveAgreesWithDenseLU) {
  const auto g = build_grid(1.3, 0.8, 12, 14);
  const EllipticSystem sys(g, GetParam());
  const auto u = unknowns(sys);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> rhs(g->size(), 0.0);
  Eigen::VectorXd b(u.nodes.size());
  for (std::size_t q = 0; q < u.nodes.size(); ++q)
    b[q] = rhs[g->index(u.nodes[q].first, u.nodes[q].second)] = d(rng);
  const Eigen::VectorXd x = dense_operator(sys).partialPivLu().solve(b);
  for (auto pc : {Preconditioner::None, Preconditioner::Diagonal, Preconditioner::Separable}) {
    EllipticSolveSettings s;
    s.tolerance = 1e-13;
    s.preconditioner = pc;
    // Plain CG loses orthogonality on the strongly graded axis weights and
    // needs more than the default budget to reach 1e-13.
    if (pc == Preconditioner::None) s.max_iterations = 5000;
    SolveInfo info;
    const auto got = sys.solve(rhs, s, &info);
    EXPECT_LE(info.residual, 1e-13);
    double err = 0.0;
    for (std::size_t q = 0; q < u.nodes.size(); ++q)
      err = std::max(err, std::abs(got[g->index(u.nodes[q].first, u.nodes[q].second)] - x[q]));
    EXPECT_LT(err, 1e-10 * x.cwiseAbs().maxCoeff()) << "preconditioner " << static_cast<int>(pc);
  }
}

INSTANTIATE_TEST_SUITE_P(Kinds, OperatorKinds,
                         ::testing::Values(OperatorKind::Psi1, OperatorKind::Psi));

TEST(Elliptic, SeparableSolveInvertsTheWeightedOperator) {
  const auto g = build_grid(1.0, 1.0, 16, 20);
  const EllipticSystem sys(g, OperatorKind::Psi1);
  const auto u = unknowns(sys);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> x(g->size(), 0.0), Kx(g->size()), back(g->size());
  for (const auto& [i, j] : u.nodes) x[g->index(i, j)] = d(rng);
  sys.apply_spd(x.data(), Kx.data());
  sys.separable_solve(Kx.data(), back.data());
  for (const auto& [i, j] : u.nodes) EXPECT_NEAR(back[g->index(i, j)], x[g->index(i, j)], 1e-11);
}

TEST(Elliptic, SeparablePreconditionerConvergesInFewIterations) {
  const auto g = build_grid(1.0, 1.0, 64, 64);
  const auto gamma = ScalarField::sample(
      g, [](double r, double z) { return (1 - r * r) * std::cos(M_PI * z / 2); }, Parity::Even);
  SolveInfo info;
  solve_psi1(gamma, {}, &info);
  EXPECT_LE(info.iterations, 3);
  EXPECT_LE(info.residual, 1e-10);
}

// A quadratic in r with the control-volume scheme: -(1/r^3)(r^3 (r^2)_r)_r = -8
// holds exactly, the axis row included.
TEST(Elliptic, Psi1OperatorExactOnQuadratics) {
  const auto g = build_grid(1.0, 1.0, 12, 12);
  const auto f = ScalarField::sample(
      g, [](double r, double z) { return r * r + z * z; }, Parity::Even);
  const auto Af = apply_psi1_operator(f);
  const EllipticSystem sys(g, OperatorKind::Psi1);
  for (int i = 0; i <= g->nr(); ++i)
    for (int j = 0; j <= g->nz(); ++j)
      if (sys.is_unknown(i, j)) EXPECT_NEAR(Af(i, j), -10.0, 1e-9) << i << "," << j;
}

TEST(Elliptic, ManufacturedSolutionConvergesAtSecondOrder) {
  auto exact = [](double r, double z) { return (1 - r * r) * std::cos(M_PI * z / 2); };
  auto gamma = [](double r, double z) {
    return (8.0 + M_PI * M_PI / 4.0 * (1 - r * r)) * std::cos(M_PI * z / 2);
  };
  double err[2];
  for (int k = 0; k < 2; ++k) {
    const auto g = build_grid(1.0, 1.0, 16 << k, 16 << k);
    const auto psi = solve_psi1(ScalarField::sample(g, gamma, Parity::Even));
    err[k] = 0.0;
    for (int i = 0; i <= g->nr(); ++i)
      for (int j = 0; j <= g->nz(); ++j)
        err[k] = std::max(err[k], std::abs(psi(i, j) - exact(g->r(i), g->z(j))));
  }
  EXPECT_LT(err[1], 2e-2);
  EXPECT_NEAR(err[0] / err[1], 4.0, 0.6);
}

TEST(Elliptic, PsiAndPsi1AgreeThroughR) {
  // omega_phi = r Gamma gives psi = r psi1 up to discretisation error.
  const auto g = build_grid(1.0, 1.0, 48, 48);
  const auto gamma = ScalarField::sample(
      g, [](double r, double z) { return (1 - r * r) * std::cos(M_PI * z / 2); }, Parity::Even);
  const auto psi1 = solve_psi1(gamma);
  const auto psi = solve_psi(times_r(gamma));
  const auto diff = psi - times_r(psi1);
  EXPECT_LT(diff.max_abs(), 5e-3 * psi.max_abs());
}

TEST(Elliptic, RejectsOddSources) {
  const auto g = build_grid(1.0, 1.0, 8, 8);
  EXPECT_THROW(solve_psi1(ScalarField(g, Parity::Odd)), ContractError);
  EXPECT_THROW(solve_psi(ScalarField(g, Parity::Even)), ContractError);
}

TEST(Elliptic, IterationCapRaisesSolverError) {
  const auto g = build_grid(1.0, 1.0, 32, 32);
  const auto gamma = ScalarField::sample(
      g, [](double r, double z) { return std::exp(r) * (1 + z * z * z); }, Parity::Even);
  EllipticSolveSettings s;
  s.preconditioner = Preconditioner::None;
  s.max_iterations = 2;
  EXPECT_THROW(solve_psi1(gamma, s), SolverError);
  s.tolerance = 1.0;
  EXPECT_THROW(s.validate(), ConfigError);
}

TEST(Velocity, PolynomialStreamFunctionIsDivergenceFree) {
  const auto g = build_grid(1.0, 1.0, 32, 32);
  const auto psi1 = ScalarField::sample(
      g, [](double r, double z) { return (1 - r * r) * (1 - z * z) * (2 + r * r * z); },
      Parity::Even);
  const auto v = velocity_from_psi1(psi1);
  EXPECT_LE(divergence_residual(v.r, v.z), 1e-10);
  EXPECT_EQ(v.r.parity(), Parity::Odd);
  EXPECT_EQ(v.z.parity(), Parity::Even);
  for (int j = 0; j <= g->nz(); ++j) {
    EXPECT_EQ(v.r(0, j), 0.0);
    EXPECT_NEAR(v.r(g->nr(), j), 0.0, 1e-14);
    EXPECT_NEAR(v.z(0, j), 2.0 * psi1(0, j), 1e-14);
  }
}
