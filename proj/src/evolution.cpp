#include "axicyl/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <random>
#include <sstream>
#include <tuple>

#include "axicyl/diagnostics.hpp"
#include "axicyl/errors.hpp"

namespace axicyl {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

// Radial stencil of r ((1/r) u_r)_r on rows 1..N-1.
const kernels::RadialStencil& swirl_stencil(const CylinderGrid& g) {
  using Key = std::tuple<int, double>;
  static std::mutex m;
  static std::map<Key, kernels::RadialStencil> cache;
  std::lock_guard<std::mutex> lock(m);
  auto [it, fresh] = cache.try_emplace(Key{g.nr(), g.R()});
  if (fresh) {
    auto& s = it->second;
    const int N = g.nr();
    const double h = g.hr();
    s.lo.assign(N + 1, 0.0);
    s.di.assign(N + 1, 0.0);
    s.up.assign(N + 1, 0.0);
    s.i0 = 1;
    s.i1 = N - 1;
    for (int i = 1; i < N; ++i) {
      const double r = g.r(i);
      s.lo[i] = r / (h * h * (r - 0.5 * h));
      s.up[i] = r / (h * h * (r + 0.5 * h));
      s.di[i] = -(s.lo[i] + s.up[i]);
    }
  }
  return it->second;
}

void require_finite(const ScalarField& f, const char* stage) {
  for (std::size_t k = 0; k < f.size(); ++k)
    if (!std::isfinite(f.values()[k]))
      throw SolverError(std::string("non-finite ") + f.label() + " after " + stage);
}

}  // namespace

void SimConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw ConfigError(std::string(name) + " must be positive, got " + fmt(v));
  };
  positive(nu, "nu");
  positive(R, "R");
  positive(a, "a");
  positive(cfl_advective, "cfl_advective");
  positive(cfl_diffusive, "cfl_diffusive");
  if (nr < 8 || nz < 8) throw ConfigError("nr and nz must be >= 8");
  if (!(t_end >= 0.0)) throw ConfigError("t_end must be >= 0");
  if (output_every < 1) throw ConfigError("output_every must be >= 1");
  const auto& p = analysis;
  if (!(p.delta > 0.0 && p.delta < 1.0))
    throw ConfigError("delta must lie in (0,1), got " + fmt(p.delta));
  if (!(p.d > 3.0)) throw ConfigError("d must exceed 3, got " + fmt(p.d));
  if (!(p.s > 1.0)) throw ConfigError("s must exceed 1, got " + fmt(p.s));
  positive(p.eps1, "eps1");
  positive(p.eps2, "eps2");
  if (!(p.mu > 0.0 && p.mu < 1.0)) throw ConfigError("mu must lie in (0,1), got " + fmt(p.mu));
  positive(p.c0, "c0");
  if (p.check_interaction_exponents) {
    const double theta = p.theta();
    if (!(theta > 0.0 && theta < 1.0))
      throw ConfigError("theta = (1 - 3/d) eps1 - (3/d) eps2 = " + fmt(theta) +
                        " must lie in (0,1) (d=" + fmt(p.d) + ", eps1=" + fmt(p.eps1) +
                        ", eps2=" + fmt(p.eps2) + ")");
    const double lhs = 1.0 + p.eps2 / p.eps1, rhs = p.d / 3.0;
    if (!(lhs <= rhs))
      throw ConfigError("1 + eps2/eps1 = " + fmt(lhs) + " must not exceed d/3 = " + fmt(rhs));
  }
  if (initial.id != "swirl-bubble" && initial.id != "sheared-jet")
    throw ConfigError("unknown initial preset '" + initial.id +
                      "' (expected swirl-bubble | sheared-jet)");
  if (forcing.id != "none" && forcing.id != "swirl-drive")
    throw ConfigError("unknown forcing preset '" + forcing.id + "' (expected none | swirl-drive)");
  elliptic.validate();
}

GridPtr grid_for(const SimConfig& c) { return build_grid(c.R, c.a, c.nr, c.nz); }

Forcing forcing_for(const SimConfig& c) {
  return make_forcing(c.forcing.id, c.forcing.params, c.R, c.a);
}

FlowState initial_state(const SimConfig& c, const GridPtr& g) {
  using std::numbers::pi;
  const double R = c.R, a = c.a, A = c.initial.swirl_amplitude, B = c.initial.gamma_amplitude;
  auto bubble = [=](double r, double z) {
    const double w = 1.0 - (r / R) * (r / R), cz = std::cos(pi * z / (2.0 * a));
    return A * r * r * w * w * cz * cz;
  };
  ScalarField u = make_swirl_field(g);
  ScalarField gamma = make_gamma_field(g);
  u = ScalarField::sample(g, bubble, Parity::Even, EdgeRule::Even, "u");
  if (c.initial.id == "sheared-jet") {
    gamma = ScalarField::sample(
        g,
        [=](double r, double z) {
          return B * (1.0 - (r / R) * (r / R)) * std::sin(pi * z / a) * (1.0 - (z / a) * (z / a));
        },
        Parity::Even, EdgeRule::None, "Gamma");
  }
  if (c.initial.perturbation != 0.0) {
    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::array<double, 4> ck{};
    for (auto& x : ck) x = coef(rng);
    const double eps = c.initial.perturbation;
    axpy(u, 1.0, ScalarField::sample(
                     g,
                     [&](double r, double z) {
                       const double w = 1.0 - (r / R) * (r / R);
                       double m = 0.0;
                       for (int k = 0; k < 4; ++k)
                         m += ck[k] / (k + 1) * std::cos((k + 1) * pi * (z + a) / (2.0 * a));
                       return eps * r * r * w * w * m;
                     },
                     Parity::Even, EdgeRule::Even));
  }
  return make_state(std::move(u), std::move(gamma), 0.0, c.elliptic);
}

ScalarField rhs_swirl(const FlowState& s, const Forcing& f, double nu) {
  const auto& g = s.grid();
  const int N = g.nr(), M = g.nz();
  const ScalarField adv_r = derivative(times_r(s.v_r * s.u), Direction::R);
  const ScalarField adv_z = derivative(times_r(s.v_z * s.u), Direction::Z);
  ScalarField diff(s.grid_ptr(), Parity::Even, EdgeRule::Even);
  kernels::apply_stencil(g.rows(), g.cols(), swirl_stencil(g), g.hz(), kernels::ZClosure::Mirror,
                         s.u.data(), diff.data());
  ScalarField out = make_swirl_field(s.grid_ptr());
  out.set_label("du/dt");
  const ScalarField f0 = f.sample(s.grid_ptr(), f.f0, Parity::Even, s.t, "f0");
  for (int i = 1; i < N; ++i) {
    const double ir = 1.0 / g.r(i);
    for (int j = 0; j <= M; ++j)
      out(i, j) = -ir * (adv_r(i, j) + adv_z(i, j)) + nu * diff(i, j) + f0(i, j);
  }
  return out;
}

ScalarField rhs_gamma(const FlowState& s, const Forcing& f, double nu) {
  const auto& g = s.grid();
  const int N = g.nr(), M = g.nz();
  const ScalarField gr = derivative(s.gamma, Direction::R);
  const ScalarField gz = derivative(s.gamma, Direction::Z);
  const auto sys = elliptic_system(s.grid_ptr(), OperatorKind::Psi1);
  ScalarField diff(s.grid_ptr(), Parity::Even);
  kernels::apply_stencil(g.rows(), g.cols(), sys->stencil(), g.hz(), kernels::ZClosure::Dirichlet,
                         s.gamma.data(), diff.data());
  const ScalarField fbar = f.sample(s.grid_ptr(), f.Fbar_phi, Parity::Even, s.t, "Fbar_phi");
  ScalarField out = make_gamma_field(s.grid_ptr());
  out.set_label("dGamma/dt");
  for (int i = 0; i < N; ++i)
    for (int j = 1; j < M; ++j)
      out(i, j) = -(s.v_r(i, j) * gr(i, j) + s.v_z(i, j) * gz(i, j)) + nu * diff(i, j) -
                  2.0 * s.vphi_over_r(i, j) * s.phi(i, j) + fbar(i, j);
  return out;
}

double stable_dt(const FlowState& s, const SimConfig& c) {
  const auto& g = s.grid();
  double vmax = 0.0;
  for (std::size_t k = 0; k < s.v_r.size(); ++k)
    vmax = std::max(vmax, std::abs(s.v_r.values()[k]) + std::abs(s.v_z.values()[k]));
  const double h = std::min(g.hr(), g.hz());
  return std::min(c.cfl_advective * h / std::max(vmax, 1e-12),
                  c.cfl_diffusive * h * h / (4.0 * c.nu));
}

FlowState step(const FlowState& s, const SimConfig& c, const Forcing& f, double dt) {
  if (dt <= 0.0) dt = stable_dt(s, c);
  const double nu = c.nu;

  auto stage = [&](const FlowState& base, double wb, const FlowState& cur, double wc, double t,
                   const char* name) {
    // next = wb*base + wc*(cur + dt*rhs(cur))
    const ScalarField du = rhs_swirl(cur, f, nu);
    const ScalarField dg = rhs_gamma(cur, f, nu);
    FlowState next;
    next.t = t;
    next.step = s.step;
    next.u = make_swirl_field(s.grid_ptr());
    next.gamma = make_gamma_field(s.grid_ptr());
    const std::size_t n = s.u.size();
    for (std::size_t k = 0; k < n; ++k) {
      next.u.values()[k] = wb * base.u.values()[k] + wc * (cur.u.values()[k] + dt * du.values()[k]);
      next.gamma.values()[k] =
          wb * base.gamma.values()[k] + wc * (cur.gamma.values()[k] + dt * dg.values()[k]);
    }
    enforce_boundary_conditions(next.u, next.gamma);
    require_finite(next.u, name);
    require_finite(next.gamma, name);
    refresh(next, c.elliptic);
    return next;
  };

  // y1 = x + dt*f(x)
  FlowState y1 = stage(s, 0.0, s, 1.0, s.t + dt, "stage 1");
  // y2 = 3/4*x + 1/4*(y1 + dt*f(y1))
  FlowState y2 = stage(s, 0.75, y1, 0.25, s.t + 0.5 * dt, "stage 2");
  // x_new = 1/3*x + 2/3*(y2 + dt*f(y2))
  FlowState out = stage(s, 1.0 / 3.0, y2, 2.0 / 3.0, s.t + dt, "stage 3");
  out.step = s.step + 1;
  return out;
}

RunResult run(const SimConfig& c, const RunHooks& hooks) {
  c.validate();
  const GridPtr g = grid_for(c);
  const Forcing f = forcing_for(c);
  FlowState s = initial_state(c, g);
  auto series = std::make_shared<DiagnosticsSeries>(c, f);
  series->record(s, 0.0);
  if (hooks.on_record) hooks.on_record(s, *series);
  return run_from(c, std::move(s), std::move(series), hooks);
}

RunResult run_from(const SimConfig& c, FlowState s, std::shared_ptr<DiagnosticsSeries> series,
                   const RunHooks& hooks) {
  const Forcing f = forcing_for(c);
  // Tolerance on reaching t_end, relative to the diffusive step scale.
  const double h = std::min(c.R / c.nr, 2.0 * c.a / c.nz);
  const double t_eps = 1e-9 * c.cfl_diffusive * h * h / (4.0 * c.nu);
  while (s.t < c.t_end - t_eps) {
    double dt = stable_dt(s, c);
    const bool last = s.t + dt >= c.t_end - t_eps;
    if (last) dt = c.t_end - s.t;
    s = step(s, c, f, dt);
    if (last) s.t = c.t_end;
    if (last || s.step % c.output_every == 0) {
      series->record(s, dt);
      if (hooks.on_record) hooks.on_record(s, *series);
    } else {
      series->advance(s, dt);
    }
  }
  return {std::move(s), std::move(series)};
}

}  // namespace axicyl
