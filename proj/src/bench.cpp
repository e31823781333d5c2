#include "axicyl/bench.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <sstream>

#include "axicyl/errors.hpp"

namespace axicyl {

namespace {

double sq(double x) { return x * x; }

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

// Gauss-Legendre rule on [-1, 1] by Newton iteration on P_n.
struct GaussRule {
  std::vector<double> x, w;
  explicit GaussRule(int n) : x(n), w(n) {
    for (int i = 0; i < n; ++i) {
      double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = t;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (t * p1 - p0) / (t * t - 1.0);
        const double dt = p1 / dp;
        t -= dt;
        if (std::abs(dt) < 1e-16) break;
      }
      x[i] = t;
      w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
  }
};

const GaussRule& gauss16() {
  static const GaussRule g(16);
  return g;
}

template <class F>
double gauss(F&& g, double lo, double hi) {
  const auto& q = gauss16();
  const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
  double s = 0.0;
  for (std::size_t k = 0; k < q.x.size(); ++k) s += q.w[k] * g(c + h * q.x[k]);
  return h * s;
}

// Dyadic grading towards 0 for integrands ~ x^gamma, gamma > -1.
template <class F>
double gauss_graded(F&& g, double hi) {
  double s = 0.0, b = hi;
  for (int j = 0; j < 200 && b > 1e-300; ++j) {
    s += gauss(g, 0.5 * b, b);
    b *= 0.5;
  }
  return s;
}

bool is_zero_on_boundary(const ScalarField& f) {
  const auto& g = f.grid();
  const double tol = 1e-12 * std::max(1.0, f.max_abs());
  for (int j = 0; j <= g.nz(); ++j)
    if (std::abs(f(g.nr(), j)) > tol) return false;
  for (int i = 0; i <= g.nr(); ++i)
    if (std::abs(f(i, 0)) > tol || std::abs(f(i, g.nz())) > tol) return false;
  return true;
}

void require_gamma(const ScalarField& gamma, bool zero_on_boundary, const char* what) {
  if (gamma.parity() != Parity::Even)
    throw ContractError(std::string(what) + ": Gamma must be even in r");
  if (zero_on_boundary && !is_zero_on_boundary(gamma))
    throw ContractError(std::string(what) + ": Gamma must vanish on the boundary");
}

ScalarField dr(const ScalarField& f) { return derivative(f, Direction::R); }
ScalarField dz(const ScalarField& f) { return derivative(f, Direction::Z); }
double l2sq(const ScalarField& f) { return integrate(square(f)); }
double trace_sq(const ScalarField& f, Edge e) { return boundary_trace_integral(f, e, 2); }

// Pointwise Euclidean length of (a, b).
ScalarField hypot_field(const ScalarField& a, const ScalarField& b) {
  ScalarField out(a.grid_ptr(), Parity::Even);
  for (std::size_t k = 0; k < out.size(); ++k)
    out.values()[k] = std::hypot(a.values()[k], b.values()[k]);
  return out;
}

// Sum of L_p norms of the derivative family of the given order.
double family_norm(const ScalarField& f, int order, double p) {
  if (order == 0) return lp_norm(f, p);
  const ScalarField fr = dr(f), fz = dz(f);
  if (order == 1) return lp_norm(fr, p) + lp_norm(fz, p);
  return lp_norm(dr(fr), p) + lp_norm(dr(fz), p) + lp_norm(dz(fz), p) + lp_norm(over_r(fr), p);
}

}  // namespace

InequalityReport make_report(std::string name, double lhs, double rhs) {
  InequalityReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  if (!std::isfinite(lhs) || !std::isfinite(rhs))
    throw EvaluationError(r.name + ": non-finite side (lhs " + fmt(lhs) + ", rhs " + fmt(rhs) +
                          ")");
  if (rhs > 0.0)
    r.ratio = lhs / rhs;
  else
    r.status = "degenerate";
  return r;
}

double EnsembleSummary::refinement_change() const {
  if (fine_max == 0.0) return coarse_max == 0.0 ? 0.0 : INFINITY;
  return std::abs(fine_max - coarse_max) / fine_max;
}

EnsembleSummary summarize(const std::string& name, const std::vector<InequalityReport>& coarse,
                          const std::vector<InequalityReport>& fine) {
  EnsembleSummary s;
  s.name = name;
  s.count = static_cast<int>(std::max(coarse.size(), fine.size()));
  std::vector<double> all;
  auto scan = [&](const std::vector<InequalityReport>& v, double& mx) {
    for (const auto& r : v) {
      if (!r.ratio) {
        ++s.degenerate;
        continue;
      }
      mx = std::max(mx, *r.ratio);
      all.push_back(*r.ratio);
    }
  };
  scan(coarse, s.coarse_max);
  scan(fine, s.fine_max);
  if (!all.empty()) {
    std::sort(all.begin(), all.end());
    s.max_ratio = all.back();
    const std::size_t n = all.size();
    s.median_ratio = n % 2 ? all[n / 2] : 0.5 * (all[n / 2 - 1] + all[n / 2]);
  }
  return s;
}

InequalityReport verify_hardy(double p, double beta, const Profile& prof) {
  if (!(p >= 1.0)) throw ConfigError("Hardy: p must be >= 1, got " + fmt(p));
  if (beta == 1.0 / p) throw ConfigError("Hardy: beta must differ from 1/p = " + fmt(1.0 / p));
  const auto& x = prof.x;
  const auto& f = prof.f;
  if (x.size() < 2 || x.size() != f.size() || x.front() != 0.0)
    throw ContractError("Hardy: profile must start at 0 with matching node and value arrays");
  const std::size_t n = x.size() - 1;
  if (f.back() != 0.0) throw ContractError("Hardy: profile must vanish at the end of its support");

  // Primitive from 0 at the nodes (exact for the linear interpolant).
  std::vector<double> F0(n + 1, 0.0);
  for (std::size_t k = 0; k < n; ++k) F0[k + 1] = F0[k] + 0.5 * (x[k + 1] - x[k]) * (f[k] + f[k + 1]);
  const double total = F0[n];
  const bool from_zero = beta > 1.0 / p;

  double lhs_p = 0.0, rhs_p = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double x0 = x[k], dx = x[k + 1] - x0;
    if (dx <= 0.0) continue;
    const double f0 = f[k], slope = (f[k + 1] - f0) / dx;
    auto fv = [&](double y) { return f0 + slope * (y - x0); };
    auto Fv = [&](double y) {
      const double t = y - x0;
      const double prim = F0[k] + f0 * t + 0.5 * slope * t * t;
      return from_zero ? prim : total - prim;
    };
    auto lhs_int = [&](double y) { return std::pow(y, -beta * p) * std::pow(std::abs(Fv(y)), p); };
    auto rhs_int = [&](double y) {
      return std::pow(y, (1.0 - beta) * p) * std::pow(std::abs(fv(y)), p);
    };
    if (x0 == 0.0) {
      lhs_p += gauss_graded(lhs_int, x[k + 1]);
      rhs_p += gauss_graded(rhs_int, x[k + 1]);
    } else {
      lhs_p += gauss(lhs_int, x0, x[k + 1]);
      rhs_p += gauss(rhs_int, x0, x[k + 1]);
    }
  }
  double tail = 0.0;
  if (from_zero) tail = std::pow(std::abs(total), p) * std::pow(x[n], 1.0 - beta * p) / (beta * p - 1.0);
  const double lhs = std::pow(lhs_p + tail, 1.0 / p);
  const double c = 1.0 / std::abs(beta - 1.0 / p);
  InequalityReport r = make_report("hardy", lhs, c * std::pow(rhs_p, 1.0 / p));
  r.params = {{"p", p}, {"beta", beta}};
  r.terms = {{"lhs_support", lhs_p}, {"lhs_tail", tail}, {"rhs_weighted_f", rhs_p}, {"constant", c}};
  r.grid = std::to_string(n) + " cells on [0," + fmt(x[n]) + "]";
  return r;
}

double interpolation_theta(int r_order, int l, double p, double p1, double p2) {
  constexpr double n = 3.0;
  if (!(r_order >= 0 && r_order < l && l <= 2))
    throw ConfigError("interpolation: need 0 <= r < l <= 2, got r=" + std::to_string(r_order) +
                      ", l=" + std::to_string(l));
  if (!(p >= 1.0 && p1 >= 1.0 && p2 >= 1.0))
    throw ConfigError("interpolation: exponents must be >= 1");
  // n/p - r = (1-theta) n/p1 + theta (n/p2 - l)
  const double den = n / p1 - n / p2 + l;
  const double theta = (n / p1 - n / p + r_order) / den;
  if (!(theta >= static_cast<double>(r_order) / l - 1e-14 && theta <= 1.0 + 1e-14))
    throw ConfigError("interpolation: theta = " + fmt(theta) + " from n/p - r = (1-theta) n/p1 + "
                      "theta (n/p2 - l) must lie in [r/l, 1] = [" +
                      fmt(static_cast<double>(r_order) / l) + ", 1]");
  return theta;
}

InequalityReport verify_sobolev_interp(const ScalarField& f, int r_order, int l, double p,
                                       double p1, double p2) {
  const double theta = interpolation_theta(r_order, l, p, p1, p2);
  const double lhs = family_norm(f, r_order, p);
  double w = 0.0;
  for (int k = 0; k <= l; ++k) w += family_norm(f, k, p2);
  const double base = lp_norm(f, p1);
  const double rhs = std::pow(base, 1.0 - theta) * std::pow(w, theta);
  InequalityReport r = make_report("sobolev_interpolation", lhs, rhs);
  r.params = {{"r", double(r_order)}, {"l", double(l)}, {"p", p}, {"p1", p1}, {"p2", p2},
              {"theta", theta}};
  r.terms = {{"f_p1", base}, {"f_W_l_p2", w}};
  r.grid = f.grid().describe();
  return r;
}

InequalityReport verify_hardy_interp(const ScalarField& f, double p, double s, double q) {
  const double q_max = p * (3.0 - s) / (3.0 - p);
  if (!(p > 1.0 && p < 3.0)) throw ConfigError("Hardy interpolation: need 1 < p < 3, got " + fmt(p));
  if (!(s >= 0.0 && s <= p && s < 2.0))
    throw ConfigError("Hardy interpolation: need 0 <= s <= p and s < 2, got s=" + fmt(s));
  if (!(q >= p && q <= q_max * (1.0 + 1e-14)))
    throw ConfigError("Hardy interpolation: need q in [p, p(3-s)/(3-p)] = [" + fmt(p) + ", " +
                      fmt(q_max) + "], got " + fmt(q));
  const auto& g = f.grid();
  for (int j = 0; j <= g.nz(); ++j)
    if (f(g.nr(), j) != 0.0 || f(g.nr() - 1, j) != 0.0)
      throw ContractError("Hardy interpolation: f must vanish near r = R");
  std::vector<double> v(f.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = std::pow(std::abs(f.values()[k]), q);
  const double lhs = std::pow(integrate_values(g, v, g.radial_power_weights(-s)), 1.0 / q);
  const double alpha = (3.0 - s) / q - 3.0 / p + 1.0;
  const double fp = lp_norm(f, p);
  const double gp = lp_norm(hypot_field(dr(f), dz(f)), p);
  const double rhs = std::pow(fp, alpha) * std::pow(gp, 1.0 - alpha);
  InequalityReport r = make_report("hardy_interpolation", lhs, rhs);
  r.params = {{"p", p}, {"s", s}, {"q", q}};
  r.terms = {{"f_p", fp}, {"grad_f_p", gp}, {"exponent_f", alpha}};
  r.grid = g.describe();
  return r;
}

InequalityReport verify_weighted_psi1(const ScalarField& gamma, double mu,
                                      const EllipticSolveSettings& es) {
  if (!(mu > 0.0 && mu < 1.0)) throw ConfigError("weighted psi1: mu must lie in (0,1), got " + fmt(mu));
  require_gamma(gamma, true, "weighted psi1");
  const ScalarField psi = solve_psi1(gamma, es);
  const ScalarField pzz = dz(dz(psi));
  const double zzz = integrate_weighted(square(dz(pzz)), 2.0 * mu);
  const double rzz = integrate_weighted(square(dr(pzz)), 2.0 * mu);
  const double mid = 2.0 * mu * (1.0 - mu) * integrate_weighted(square(pzz), 2.0 * mu - 2.0);
  const double rhs = integrate_weighted(square(dz(gamma)), 2.0 * mu);
  InequalityReport r = make_report("weighted_psi1", zzz + rzz + mid, rhs);
  r.params = {{"mu", mu}};
  r.terms = {{"psi_zzz_sq_r2mu", zzz}, {"psi_rzz_sq_r2mu", rzz}, {"middle_r2mu_minus_2", mid}};
  r.grid = gamma.grid().describe();
  return r;
}

InequalityReport verify_h2(const ScalarField& gamma, const EllipticSolveSettings& es) {
  require_gamma(gamma, false, "H2 estimate");
  const ScalarField psi = solve_psi1(gamma, es);
  const ScalarField pr = dr(psi), pz = dz(psi);
  const double rr = l2sq(dr(pr)), rz = l2sq(dr(pz)), zz = l2sq(dz(pz)), r_r = l2sq(over_r(pr));
  const double axis = trace_sq(pz, Edge::Axis), wall = trace_sq(pr, Edge::Wall);
  InequalityReport r = make_report("psi1_h2", rr + rz + zz + r_r + axis + wall, l2sq(gamma));
  r.terms = {{"psi_rr", rr},         {"psi_rz", rz},         {"psi_zz", zz},
             {"psi_r_over_r", r_r},  {"axis_trace_psi_z", axis}, {"wall_trace_psi_r", wall}};
  r.grid = gamma.grid().describe();
  return r;
}

std::array<InequalityReport, 3> verify_h3(const ScalarField& gamma, const EllipticSolveSettings& es) {
  require_gamma(gamma, true, "H3 estimates");
  const ScalarField psi = solve_psi1(gamma, es);
  const ScalarField pz = dz(psi), pzz = dz(pz), prz = dr(pz);
  const double zzr = l2sq(dr(pzz)), zzz = l2sq(dz(pzz)), rrz = l2sq(dr(prz));
  const double axis = trace_sq(pzz, Edge::Axis), wall = trace_sq(prz, Edge::Wall);
  const double gz = l2sq(dz(gamma));
  const double rz_r = std::sqrt(l2sq(over_r(prz)));
  const std::string grid = gamma.grid().describe();

  InequalityReport a = make_report("psi1_h3_zz", zzr + zzz + axis, gz);
  a.terms = {{"psi_zzr", zzr}, {"psi_zzz", zzz}, {"axis_trace_psi_zz", axis}};
  InequalityReport b = make_report("psi1_h3_full", rrz + zzr + zzz + axis + wall, gz);
  b.terms = {{"psi_rrz", rrz},
             {"psi_rzz", zzr},
             {"psi_zzz", zzz},
             {"axis_trace_psi_zz", axis},
             {"wall_trace_psi_rz", wall}};
  InequalityReport c = make_report("psi1_rz_over_r", rz_r, std::sqrt(gz));
  for (auto* x : {&a, &b, &c}) x->grid = grid;
  return {a, b, c};
}

std::array<InequalityReport, 2> verify_energy_estimate(const DiagnosticsSeries& s) {
  const auto& a = s.config().analysis;
  const auto D = s.d_constants();
  const double R = s.config().R, dl = a.delta;
  const double vinf = s.vphi_lp_sup(INFINITY);
  const double pV = s.phi_V(), gV = s.gamma_V(), I = s.I();
  const double D2 = D[2], D3 = D[3];

  const double growth =
      D2 > 0.0 ? 1.0 + std::pow(vinf, dl) * std::pow(R, dl) / (dl * std::pow(D2, dl)) : 1.0;
  InequalityReport e = make_report("phi_gamma_energy", sq(D2 * gV) + sq(pV),
                                   sq(D2) * growth * (I + sq(D3)));
  e.params = {{"delta", dl}};
  e.terms = {{"D2", D2}, {"D3", D3}, {"gamma_V", gV}, {"phi_V", pV}, {"I", I}, {"growth", growth}};

  const double eps = a.eps(), theta = a.theta();
  const double vd = s.vphi_lp_sup(a.d);
  const double phi2 = std::sqrt(s.totals().phi_sq);
  const double rhs = std::pow(D2, 1.0 - eps) * std::pow(vd, eps) * std::pow(R, a.eps2) / a.eps2 *
                     std::pow(phi2, theta) * std::pow(pV, 1.0 - theta) * gV;
  InequalityReport i = make_report("interaction_bound", I, rhs);
  i.params = {{"d", a.d}, {"eps1", a.eps1}, {"eps2", a.eps2}, {"theta", theta}};
  i.terms = {{"vphi_d_sup", vd}, {"phi_L2_spacetime", phi2}, {"phi_V", pV}, {"gamma_V", gV}};
  const std::string grid = std::to_string(s.config().nr) + "x" + std::to_string(s.config().nz);
  e.grid = i.grid = grid;
  return {e, i};
}

std::array<InequalityReport, 4> verify_order_reduction(const DiagnosticsSeries& s) {
  const auto& c = s.config();
  const auto& a = c.analysis;
  const auto D = s.d_constants();
  const double X = s.X(), dl = a.delta, R = c.R, nu = c.nu;
  const double vinf = s.vphi_lp_sup(INFINITY);
  const auto& acc = s.totals();
  const std::string grid = std::to_string(c.nr) + "x" + std::to_string(c.nz);

  const double phi2 = std::sqrt(acc.phi_sq);
  InequalityReport e1 = make_report("phi_spacetime_reduction", phi2,
                                    (1.0 + std::pow(vinf, dl)) * std::sqrt(X) + 1.0);
  e1.params = {{"delta", dl}};
  e1.terms = {{"X", X}, {"vphi_inf_sup", vinf}};

  InequalityReport e2 = make_report("vphi_sup_reduction", vinf,
                                    std::pow(D[1], 0.25) / std::sqrt(nu) * std::pow(X, 0.75) + D[10]);
  e2.terms = {{"X", X}, {"D1", D[1]}, {"D10", D[10]}};

  const double vs = s.vphi_lp_sup(a.s);
  const auto c0 = criterion_ratio(s, a.s);
  InequalityReport e3 =
      make_report("vphi_d_reduction", vs, D[11] * std::pow(X, 1.0 / (4.0 - 2.0 * dl)) + D[12]);
  e3.params = {{"delta", dl}, {"s", a.s}, {"c0_floor", a.c0}};
  e3.terms = {{"X", X}, {"D11", D[11]}, {"D12", D[12]}, {"c0_measured", c0.value_or(0.0)}};
  if (!c0 || *c0 < a.c0) e3.status = "assumption unmet";

  const double wrV = acc.omega_r_l2_sup + std::sqrt(acc.grad_omega_r_sq);
  const double wzV = acc.omega_z_l2_sup + std::sqrt(acc.grad_omega_z_sq);
  const double bracket = std::pow(R, 2.0 * dl) / sq(dl) * std::pow(vinf, 2.0 * dl) +
                         std::pow(R, dl) / dl + 1.0;
  const double gsum = std::sqrt(acc.gamma_z_sq) + std::sqrt(acc.gamma_r_sq);
  InequalityReport e4 = make_report("axial_radial_vorticity_reduction",
                                    sq(wrV) + sq(wzV) + acc.phi_sq, bracket * gsum + sq(D[8]));
  e4.params = {{"delta", dl}};
  e4.terms = {{"omega_r_V", wrV}, {"omega_z_V", wzV}, {"omega_r_over_r_sq", acc.phi_sq},
              {"bracket", bracket}, {"gamma_grad_sum", gsum}, {"D8", D[8]}};
  for (auto* x : {&e1, &e2, &e3, &e4}) x->grid = grid;
  return {e1, e2, e3, e4};
}

std::array<InequalityReport, 2> verify_swirl_bounds(const DiagnosticsSeries& s) {
  if (s.rows().empty()) throw ContractError("swirl bounds need a recorded series");
  double uz = 0.0, ur = 0.0;
  for (const auto& row : s.rows()) {
    uz = std::max(uz, row.uz_energy);
    ur = std::max(ur, row.ur_energy);
  }
  const auto D = s.d_constants();
  InequalityReport a = make_report("swirl_uz_energy", uz, sq(D[4]));
  InequalityReport b = make_report("swirl_ur_energy", ur, sq(D[5]));
  a.terms = {{"D4", D[4]}};
  b.terms = {{"D5", D[5]}};
  const std::string grid = std::to_string(s.config().nr) + "x" + std::to_string(s.config().nz);
  a.grid = b.grid = grid;
  return {a, b};
}

const std::vector<std::string>& ensemble_ids() {
  static const std::vector<std::string> ids = {
      "hardy",    "sobolev_interpolation", "hardy_interpolation", "weighted_psi1",
      "psi1_h2",  "psi1_h3_zz",            "psi1_h3_full",        "psi1_rz_over_r"};
  return ids;
}

namespace {

InequalityReport ensemble_sample(const EnsembleRequest& req, int sample, int grid) {
  auto rng = sample_rng(req.seed, static_cast<std::uint64_t>(sample));
  const std::string& id = req.id;
  if (id == "hardy") {
    static constexpr double ps[] = {1.5, 2.0, 3.0};
    const double p = ps[sample % 3];
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double t = u(rng);
    // Alternate sides of the critical exponent 1/p.
    const double beta = sample % 2 == 0 ? 1.0 / p + 0.1 + t * (1.0 - 1.0 / p + 0.3 / p)
                                        : 1.0 / p - 0.1 - t * 0.9;
    return verify_hardy(p, beta, random_profile(rng, 50 * grid));
  }
  const GridPtr g = build_grid(1.0, 1.0, grid, grid);
  if (id == "sobolev_interpolation") {
    auto f = random_field(rng, RandomField::Radial::Wall2, RandomField::Axial::Cosine, 1.0, 1.0);
    return verify_sobolev_interp(f.sample(g));
  }
  if (id == "hardy_interpolation") {
    auto f = random_field(rng, RandomField::Radial::Cutoff, RandomField::Axial::Cosine, 1.0, 1.0);
    const double p = 2.0, s = 1.0;
    const double q = sample % 2 == 0 ? p : p * (3.0 - s) / (3.0 - p);
    return verify_hardy_interp(f.sample(g), p, s, q);
  }
  const ScalarField gamma = random_gamma(rng, 1.0, 1.0).sample(g);
  if (id == "weighted_psi1") {
    auto it = req.params.find("mu");
    return verify_weighted_psi1(gamma, it == req.params.end() ? 0.5 : it->second);
  }
  if (id == "psi1_h2") return verify_h2(gamma);
  const auto h3 = verify_h3(gamma);
  if (id == "psi1_h3_zz") return h3[0];
  if (id == "psi1_h3_full") return h3[1];
  if (id == "psi1_rz_over_r") return h3[2];
  throw ConfigError("unknown inequality id '" + id + "'");
}

}  // namespace

EnsembleResult run_ensemble(const EnsembleRequest& req) {
  if (req.samples < 1) throw ConfigError("sample count must be >= 1, got " + std::to_string(req.samples));
  if (std::find(ensemble_ids().begin(), ensemble_ids().end(), req.id) == ensemble_ids().end())
    throw ConfigError("unknown inequality id '" + req.id + "'");
  if (req.grids.coarse < 8 || req.grids.fine <= req.grids.coarse)
    throw ConfigError("grid pair must satisfy 8 <= coarse < fine");
  const int n = req.samples;
  EnsembleResult res;
  res.coarse.resize(n);
  res.fine.resize(n);
  std::vector<std::exception_ptr> errors(2 * n);
#pragma omp parallel for schedule(dynamic)
  for (int k = 0; k < 2 * n; ++k) {
    const int sample = k / 2;
    const bool fine = k % 2;
    try {
      InequalityReport r = ensemble_sample(req, sample, fine ? req.grids.fine : req.grids.coarse);
      r.sample = "seed " + std::to_string(req.seed) + " sample " + std::to_string(sample);
      (fine ? res.fine : res.coarse)[sample] = std::move(r);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (int k = 0; k < 2 * n; ++k) {
    if (!errors[k]) continue;
    try {
      std::rethrow_exception(errors[k]);
    } catch (const SolverError& e) {
      throw SolverError(req.id + " sample " + std::to_string(k / 2) + ": " + e.what(), e.residual());
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw EvaluationError(req.id + " sample " + std::to_string(k / 2) + ": " + e.what());
    }
  }
  std::string name = req.id;
  if (req.id == "weighted_psi1") {
    auto it = req.params.find("mu");
    name += "[mu=" + fmt(it == req.params.end() ? 0.5 : it->second) + "]";
  }
  res.summary = summarize(name, res.coarse, res.fine);
  return res;
}

SimConfig bench_preset(const std::string& id, int nr) {
  SimConfig c;
  c.nu = 0.05;
  c.nr = nr;
  c.nz = 2 * nr;
  c.t_end = 0.25;
  c.output_every = 50;
  if (id == "bubble-decay") {
    c.initial.id = "swirl-bubble";
  } else if (id == "forced-jet") {
    c.initial.id = "sheared-jet";
    c.forcing.id = "swirl-drive";
    c.forcing.params = {{"swirl", 1.0}, {"meridional", 1.0}};
  } else {
    throw ConfigError("unknown simulation preset '" + id + "' (expected bubble-decay | forced-jet)");
  }
  return c;
}

}  // namespace axicyl
