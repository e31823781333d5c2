#include "axicyl/elliptic.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include "axicyl/calculus.hpp"
#include "axicyl/errors.hpp"

namespace axicyl {

namespace {

// FFTW planning is not thread-safe; execution with the new-array interface is.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwBuffer {
  explicit FftwBuffer(std::size_t n)
      : p(static_cast<double*>(fftw_malloc(sizeof(double) * std::max<std::size_t>(n, 1)))) {
    std::fill(p, p + n, 0.0);
  }
  ~FftwBuffer() { fftw_free(p); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  double* p;
};

}  // namespace

Preconditioner parse_preconditioner(const std::string& s) {
  if (s == "none") return Preconditioner::None;
  if (s == "diagonal") return Preconditioner::Diagonal;
  if (s == "separable") return Preconditioner::Separable;
  throw ConfigError("unknown preconditioner '" + s + "' (expected none | diagonal | separable)");
}

void EllipticSolveSettings::validate() const {
  if (!(tolerance > 0.0 && tolerance <= 1e-4))
    throw ConfigError("elliptic tolerance must lie in (0, 1e-4], got " + std::to_string(tolerance));
  if (max_iterations < 0) throw ConfigError("elliptic max_iterations must be >= 1");
}

int EllipticSolveSettings::iterations_for(const CylinderGrid& g) const {
  return max_iterations > 0 ? max_iterations : 20 * (g.nr() + g.nz());
}

EllipticSystem::EllipticSystem(GridPtr grid, OperatorKind kind)
    : grid_(std::move(grid)), kind_(kind) {
  const auto& g = *grid_;
  const int N = g.nr();
  const double h = g.hr();
  stencil_.lo.assign(N + 1, 0.0);
  stencil_.di.assign(N + 1, 0.0);
  stencil_.up.assign(N + 1, 0.0);
  vol_.assign(N + 1, 0.0);
  stencil_.i0 = kind == OperatorKind::Psi1 ? 0 : 1;
  stencil_.i1 = N - 1;
  for (int i = stencil_.i0; i <= stencil_.i1; ++i) {
    const double rm = std::max(g.r(i) - 0.5 * h, 0.0), rp = g.r(i) + 0.5 * h;
    if (kind == OperatorKind::Psi1) {
      vol_[i] = (std::pow(rp, 4) - std::pow(rm, 4)) / 4.0;
      stencil_.lo[i] = rm * rm * rm / (h * vol_[i]);
      stencil_.up[i] = rp * rp * rp / (h * vol_[i]);
      stencil_.di[i] = -(stencil_.lo[i] + stencil_.up[i]);
    } else {
      vol_[i] = g.r(i) * h;
      stencil_.lo[i] = rm / (h * vol_[i]);
      stencil_.up[i] = rp / (h * vol_[i]);
      stencil_.di[i] = -(stencil_.lo[i] + stencil_.up[i]) - 1.0 / (g.r(i) * g.r(i));
    }
  }

  n_ = g.nz() - 1;
  howmany_ = stencil_.i1 - stencil_.i0 + 1;
  mu_.resize(n_);
  for (int k = 0; k < n_; ++k)
    mu_[k] = (2.0 - 2.0 * std::cos(std::numbers::pi * (k + 1) / g.nz())) / (g.hz() * g.hz());

  const int m = howmany_;
  cprime_.assign(static_cast<std::size_t>(n_) * m, 0.0);
  dinv_.assign(static_cast<std::size_t>(n_) * m, 0.0);
  for (int k = 0; k < n_; ++k) {
    double* cp = &cprime_[static_cast<std::size_t>(k) * m];
    double* di = &dinv_[static_cast<std::size_t>(k) * m];
    for (int q = 0; q < m; ++q) {
      const int i = stencil_.i0 + q;
      const double a = q > 0 ? -stencil_.lo[i] : 0.0;
      const double b = -stencil_.di[i] + mu_[k];
      const double c = q < m - 1 ? -stencil_.up[i] : 0.0;
      const double denom = b - (q > 0 ? a * cp[q - 1] : 0.0);
      di[q] = 1.0 / denom;
      cp[q] = c * di[q];
    }
  }

  FftwBuffer in(static_cast<std::size_t>(n_) * m), out(static_cast<std::size_t>(n_) * m);
  fftw_r2r_kind kinds[1] = {FFTW_RODFT00};
  int len[1] = {n_};
  std::lock_guard<std::mutex> lock(fftw_planner_mutex());
  plan_ = fftw_plan_many_r2r(1, len, m, in.p, nullptr, 1, n_, out.p, nullptr, 1, n_, kinds,
                             FFTW_ESTIMATE);
  if (!plan_) throw SolverError("could not create sine transform plan");
}

EllipticSystem::~EllipticSystem() {
  std::lock_guard<std::mutex> lock(fftw_planner_mutex());
  if (plan_) fftw_destroy_plan(static_cast<fftw_plan>(plan_));
}

bool EllipticSystem::is_unknown(int i, int j) const {
  return i >= stencil_.i0 && i <= stencil_.i1 && j >= 1 && j <= grid_->nz() - 1;
}

void EllipticSystem::apply(const double* x, double* y) const {
  const auto& g = *grid_;
  kernels::apply_stencil(g.rows(), g.cols(), stencil_, g.hz(), kernels::ZClosure::Dirichlet, x, y);
  const std::size_t n = g.size();
#pragma omp parallel for schedule(static) if (n > 4096)
  for (std::size_t k = 0; k < n; ++k) y[k] = -y[k];
}

void EllipticSystem::apply_spd(const double* x, double* y) const {
  apply(x, y);
  const auto& g = *grid_;
  const int cols = g.cols();
#pragma omp parallel for schedule(static) if (g.size() > 4096)
  for (int i = 0; i < g.rows(); ++i) {
    const double w = spd_weight(i);
    for (int j = 0; j < cols; ++j) y[static_cast<std::size_t>(i) * cols + j] *= w;
  }
}

void EllipticSystem::separable_solve(const double* r, double* z) const {
  const auto& g = *grid_;
  const int cols = g.cols(), m = howmany_, n = n_;
  FftwBuffer a(static_cast<std::size_t>(n) * m), b(static_cast<std::size_t>(n) * m);
  for (int q = 0; q < m; ++q) {
    const int i = stencil_.i0 + q;
    const double w = 1.0 / spd_weight(i);
    for (int j = 1; j <= n; ++j) a.p[static_cast<std::size_t>(q) * n + j - 1] =
        r[static_cast<std::size_t>(i) * cols + j] * w;
  }
  const auto plan = static_cast<fftw_plan>(plan_);
  fftw_execute_r2r(plan, a.p, b.p);
#pragma omp parallel for schedule(static) if (static_cast<long>(n) * m > 4096)
  for (int k = 0; k < n; ++k) {
    const double* cp = &cprime_[static_cast<std::size_t>(k) * m];
    const double* di = &dinv_[static_cast<std::size_t>(k) * m];
    double prev = 0.0;
    for (int q = 0; q < m; ++q) {
      const int i = stencil_.i0 + q;
      const double a_coef = q > 0 ? -stencil_.lo[i] : 0.0;
      double& d = b.p[static_cast<std::size_t>(q) * n + k];
      d = (d - a_coef * prev) * di[q];
      prev = d;
    }
    for (int q = m - 2; q >= 0; --q)
      b.p[static_cast<std::size_t>(q) * n + k] -= cp[q] * b.p[static_cast<std::size_t>(q + 1) * n + k];
  }
  fftw_execute_r2r(plan, b.p, a.p);
  const double scale = 1.0 / (2.0 * (n + 1));
  std::fill(z, z + g.size(), 0.0);
  for (int q = 0; q < m; ++q) {
    const int i = stencil_.i0 + q;
    for (int j = 1; j <= n; ++j)
      z[static_cast<std::size_t>(i) * cols + j] = a.p[static_cast<std::size_t>(q) * n + j - 1] * scale;
  }
}

std::vector<double> EllipticSystem::solve(const std::vector<double>& rhs,
                                          const EllipticSolveSettings& s, SolveInfo* info) const {
  s.validate();
  const auto& g = *grid_;
  const std::size_t n = g.size();
  const int cols = g.cols();
  std::vector<double> b(n, 0.0), x(n, 0.0), r(n), z(n), p(n), Ap(n), diag;
  for (int i = stencil_.i0; i <= stencil_.i1; ++i)
    for (int j = 1; j < g.nz(); ++j) {
      const std::size_t k = static_cast<std::size_t>(i) * cols + j;
      b[k] = spd_weight(i) * rhs[k];
    }
  if (s.preconditioner == Preconditioner::Diagonal) {
    diag.assign(n, 1.0);
    for (int i = stencil_.i0; i <= stencil_.i1; ++i)
      for (int j = 1; j < g.nz(); ++j)
        diag[static_cast<std::size_t>(i) * cols + j] =
            spd_weight(i) * (-stencil_.di[i] + 2.0 / (g.hz() * g.hz()));
  }
  auto precondition = [&](const std::vector<double>& in, std::vector<double>& out) {
    switch (s.preconditioner) {
      case Preconditioner::None: out = in; break;
      case Preconditioner::Diagonal:
        for (std::size_t k = 0; k < n; ++k) out[k] = in[k] / diag[k];
        break;
      case Preconditioner::Separable: separable_solve(in.data(), out.data()); break;
    }
  };

  const int N = static_cast<int>(n);
  const double bnorm = std::sqrt(kernels::dot(N, b.data(), b.data()));
  SolveInfo local;
  if (bnorm == 0.0) {
    if (info) *info = local;
    return x;
  }
  r = b;
  precondition(r, z);
  p = z;
  double rz = kernels::dot(N, r.data(), z.data());
  const int max_it = s.iterations_for(g);
  double res = 1.0;
  for (int it = 1; it <= max_it; ++it) {
    apply_spd(p.data(), Ap.data());
    const double alpha = rz / kernels::dot(N, p.data(), Ap.data());
    for (std::size_t k = 0; k < n; ++k) {
      x[k] += alpha * p[k];
      r[k] -= alpha * Ap[k];
    }
    res = std::sqrt(kernels::dot(N, r.data(), r.data())) / bnorm;
    if (!std::isfinite(res)) throw SolverError("elliptic solve produced a non-finite residual", res);
    if (res <= s.tolerance) {
      local.iterations = it;
      local.residual = res;
      if (info) *info = local;
      return x;
    }
    precondition(r, z);
    const double rz_new = kernels::dot(N, r.data(), z.data());
    const double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t k = 0; k < n; ++k) p[k] = z[k] + beta * p[k];
  }
  std::ostringstream msg;
  msg << "elliptic solve did not converge in " << max_it << " iterations (relative residual "
      << std::scientific << std::setprecision(3) << res << ")";
  throw SolverError(msg.str(), res);
}

std::shared_ptr<const EllipticSystem> elliptic_system(const GridPtr& grid, OperatorKind kind) {
  using Key = std::tuple<int, int, int, double, double>;
  static std::mutex m;
  static std::map<Key, std::shared_ptr<const EllipticSystem>> cache;
  const Key key{static_cast<int>(kind), grid->nr(), grid->nz(), grid->R(), grid->a()};
  {
    std::lock_guard<std::mutex> lock(m);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto sys = std::make_shared<const EllipticSystem>(grid, kind);
  std::lock_guard<std::mutex> lock(m);
  return cache.emplace(key, sys).first->second;
}

namespace {

bool zero_on_z_edges(const ScalarField& f) {
  const auto& g = f.grid();
  const double tol = 1e-13 * f.max_abs();
  for (int i = 0; i <= g.nr(); ++i)
    if (std::abs(f(i, 0)) > tol || std::abs(f(i, g.nz())) > tol) return false;
  return true;
}

}  // namespace

ScalarField solve_psi1(const ScalarField& gamma, const EllipticSolveSettings& settings,
                       SolveInfo* info) {
  if (gamma.parity() != Parity::Even)
    throw ContractError("solve_psi1 needs an even right-hand side");
  gamma.require_finite();
  const auto sys = elliptic_system(gamma.grid_ptr(), OperatorKind::Psi1);
  ScalarField psi1(gamma.grid_ptr(), Parity::Even,
                   zero_on_z_edges(gamma) ? EdgeRule::Odd : EdgeRule::None, "psi1");
  psi1.values() = sys->solve(gamma.values(), settings, info);
  return psi1;
}

ScalarField solve_psi(const ScalarField& omega_phi, const EllipticSolveSettings& settings,
                      SolveInfo* info) {
  if (omega_phi.parity() != Parity::Odd)
    throw ContractError("solve_psi needs an odd right-hand side");
  omega_phi.require_finite();
  const auto sys = elliptic_system(omega_phi.grid_ptr(), OperatorKind::Psi);
  ScalarField psi(omega_phi.grid_ptr(), Parity::Odd,
                  zero_on_z_edges(omega_phi) ? EdgeRule::Odd : EdgeRule::None, "psi");
  psi.values() = sys->solve(omega_phi.values(), settings, info);
  return psi;
}

ScalarField apply_psi1_operator(const ScalarField& psi1) {
  const auto sys = elliptic_system(psi1.grid_ptr(), OperatorKind::Psi1);
  ScalarField out(psi1.grid_ptr(), Parity::Even, EdgeRule::None, "L psi1");
  sys->apply(psi1.data(), out.data());
  return out;
}

ScalarField apply_psi_operator(const ScalarField& psi) {
  const auto sys = elliptic_system(psi.grid_ptr(), OperatorKind::Psi);
  ScalarField out(psi.grid_ptr(), Parity::Odd, EdgeRule::None, "L psi");
  sys->apply(psi.data(), out.data());
  return out;
}

MeridionalVelocity velocity_from_psi1(const ScalarField& psi1) {
  if (psi1.parity() != Parity::Even)
    throw ContractError("velocity_from_psi1 needs an even psi1");
  const auto& g = psi1.grid();
  const ScalarField dz = derivative(psi1, Direction::Z);
  MeridionalVelocity v{ScalarField(psi1.grid_ptr(), Parity::Odd, dz.edge(), "v_r"),
                       ScalarField(psi1.grid_ptr(), Parity::Even, psi1.edge(), "v_z")};
  ScalarField big(psi1.grid_ptr(), Parity::Even, psi1.edge());
  for (int i = 0; i <= g.nr(); ++i)
    for (int j = 0; j <= g.nz(); ++j) big(i, j) = g.r(i) * g.r(i) * psi1(i, j);
  const ScalarField dbig = derivative(big, Direction::R);
  for (int j = 0; j <= g.nz(); ++j) v.z(0, j) = 2.0 * psi1(0, j);
  for (int i = 1; i <= g.nr(); ++i)
    for (int j = 0; j <= g.nz(); ++j) {
      v.r(i, j) = -g.r(i) * dz(i, j);
      v.z(i, j) = dbig(i, j) / g.r(i);
    }
  return v;
}

}  // namespace axicyl
