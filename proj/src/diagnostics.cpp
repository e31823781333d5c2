#include "axicyl/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>

#include "axicyl/errors.hpp"

namespace axicyl {

namespace {

double sq(double x) { return x * x; }

double l2_sq(const ScalarField& f) { return integrate(square(f)); }

// |a|^2 + |b|^2 integrated.
double grad_sq(const ScalarField& f) {
  return l2_sq(derivative(f, Direction::R)) + l2_sq(derivative(f, Direction::Z));
}

void trapezoid(double& acc, double prev, double cur, double dt) { acc += 0.5 * dt * (prev + cur); }

}  // namespace

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = [] {
    std::vector<std::string> c = {"step",     "t",        "dt",           "energy",
                                  "dissipation_cum",      "u_inf",        "vphi_inf",
                                  "vphi_d",   "phi_l2",   "gamma_l2",     "phi_V",
                                  "gamma_V",  "X",        "I_abs",        "ratio_d",
                                  "div_residual",         "energy_residual"};
    for (int k = 1; k <= 12; ++k) c.push_back("D" + std::to_string(k));
    return c;
  }();
  return cols;
}

DiagnosticsSeries::DiagnosticsSeries(const SimConfig& config, const Forcing& forcing)
    : config_(config), forcing_(forcing) {
  for (double p : {config.analysis.d, config.analysis.s, 8.0, 32.0, 128.0, 1024.0})
    if (std::find(exponents_.begin(), exponents_.end(), p) == exponents_.end())
      exponents_.push_back(p);
  acc_.vphi_lp_sup.assign(exponents_.size(), 0.0);
}

std::size_t DiagnosticsSeries::exponent_index(double p) const {
  auto it = std::find(exponents_.begin(), exponents_.end(), p);
  if (it == exponents_.end())
    throw ContractError("exponent " + std::to_string(p) + " is not tracked by this series");
  return static_cast<std::size_t>(it - exponents_.begin());
}

const Instant& DiagnosticsSeries::last() const {
  if (!last_) throw ContractError("diagnostics series is empty");
  return *last_;
}

void DiagnosticsSeries::forcing_terms(Instant& in, const GridPtr& g, double t) const {
  const auto& f = forcing_;
  const ScalarField fr = f.sample(g, f.f_r, Parity::Odd, t, "f_r");
  const ScalarField fphi = f.sample(g, f.f_phi, Parity::Odd, t, "f_phi");
  const ScalarField fz = f.sample(g, f.f_z, Parity::Even, t, "f_z");
  const ScalarField f0 = f.sample(g, f.f0, Parity::Even, t, "f0");
  const ScalarField Fr = f.sample(g, f.F_r, Parity::Odd, t, "F_r");
  const ScalarField Fz = f.sample(g, f.F_z, Parity::Even, t, "F_z");
  const ScalarField Fbr = f.sample(g, f.Fbar_r, Parity::Even, t, "Fbar_r");
  const ScalarField Fbphi = f.sample(g, f.Fbar_phi, Parity::Even, t, "Fbar_phi");
  const auto& a = config_.analysis;

  in.f_sq = l2_sq(fr) + l2_sq(fphi) + l2_sq(fz);
  in.f0_inf = lp_norm(f0, INFINITY);
  in.f0_sq = l2_sq(f0);
  in.fbar_r_65_sq = sq(lp_norm(Fbr, 1.2));
  in.fbar_phi_3_sq = sq(lp_norm(Fbphi, 3.0));
  in.fbar_phi_65_sq = sq(lp_norm(Fbphi, 1.2));
  in.F_r_65_sq = sq(lp_norm(Fr, 1.2));
  in.F_z_65_sq = sq(lp_norm(Fz, 1.2));
  in.fphi_wall_sq = config_.R * boundary_trace_integral(fphi, Edge::Wall, 2);
  in.fphi_s_term = std::pow(lp_norm(fphi, 3.0 * a.s / (2.0 * a.s + 1.0)), a.s);
  const double q = 10.0 / (1.0 + 6.0 * a.delta);
  in.fphi_q_pow = std::pow(lp_norm(fphi, q), q);
  in.fphi_over_r_inf = lp_norm(over_r(fphi), INFINITY);
}

Instant DiagnosticsSeries::measure(const FlowState& s) const {
  Instant in;
  in.t = s.t;
  const ScalarField vr_over_r = over_r(s.v_r);
  in.energy = 0.5 * (l2_sq(s.v_r) + l2_sq(s.v_phi) + l2_sq(s.v_z));
  in.dissipation = grad_sq(s.v_r) + grad_sq(s.v_phi) + grad_sq(s.v_z) + l2_sq(vr_over_r) +
                   l2_sq(s.vphi_over_r);

  const ScalarField gr = derivative(s.gamma, Direction::R);
  const ScalarField gz = derivative(s.gamma, Direction::Z);
  in.gamma_r_sq = l2_sq(gr);
  in.gamma_z_sq = l2_sq(gz);
  in.grad_gamma_sq = in.gamma_r_sq + in.gamma_z_sq;
  in.grad_phi_sq = grad_sq(s.phi);
  in.phi_sq = l2_sq(s.phi);

  const Vorticity w = vorticity(s);
  in.grad_omega_r_sq = grad_sq(w.r);
  in.grad_omega_z_sq = grad_sq(w.z);
  in.interaction = interaction_integral_increment(s);

  const ScalarField ur = derivative(s.u, Direction::R);
  const ScalarField uz = derivative(s.u, Direction::Z);
  const ScalarField uzr = derivative(uz, Direction::R);
  in.grad_uz_sq = l2_sq(uzr) + l2_sq(derivative(uz, Direction::Z));
  in.ur_second_sq = l2_sq(derivative(ur, Direction::R)) + l2_sq(uzr);

  in.v_l2 = std::sqrt(2.0 * in.energy);
  in.u_inf = lp_norm(s.u, INFINITY);
  in.vphi_inf = lp_norm(s.v_phi, INFINITY);
  in.phi_l2 = std::sqrt(in.phi_sq);
  in.gamma_l2 = std::sqrt(l2_sq(s.gamma));
  in.omega_r_l2 = std::sqrt(l2_sq(w.r));
  in.omega_z_l2 = std::sqrt(l2_sq(w.z));
  in.uz_l2 = std::sqrt(l2_sq(uz));
  in.ur_l2 = std::sqrt(l2_sq(ur));
  in.vphi_lp.reserve(exponents_.size());
  for (double p : exponents_) in.vphi_lp.push_back(lp_norm(s.v_phi, p));
  in.div_residual = divergence_residual(s.v_r, s.v_z);

  if (!forcing_.zero) {
    const GridPtr& g = s.grid_ptr();
    forcing_terms(in, g, s.t);
    in.work = integrate(forcing_.sample(g, forcing_.f_r, Parity::Odd, s.t, "f_r") * s.v_r +
                        forcing_.sample(g, forcing_.f_phi, Parity::Odd, s.t, "f_phi") * s.v_phi +
                        forcing_.sample(g, forcing_.f_z, Parity::Even, s.t, "f_z") * s.v_z);
  }
  return in;
}

void DiagnosticsSeries::advance(const FlowState& s, double /*dt*/) {
  if (last_ && s.t < last_->t)
    throw ContractError("diagnostics time regression: " + std::to_string(s.t) + " < " +
                        std::to_string(last_->t));
  Instant cur = measure(s);
  if (!last_) {
    init_.v_l2 = cur.v_l2;
    init_.u_inf = cur.u_inf;
    init_.gamma_l2 = cur.gamma_l2;
    init_.phi_l2 = cur.phi_l2;
    init_.uz_l2 = cur.uz_l2;
    init_.ur_l2 = cur.ur_l2;
    init_.omega_r_l2 = cur.omega_r_l2;
    init_.omega_z_l2 = cur.omega_z_l2;
    init_.vphi_s = cur.vphi_lp[exponent_index(config_.analysis.s)];
    init_.vphi_inf = cur.vphi_inf;
  } else {
    const Instant& p = *last_;
    const double h = s.t - p.t;
    trapezoid(acc_.dissipation, p.dissipation, cur.dissipation, h);
    trapezoid(acc_.work, p.work, cur.work, h);
    trapezoid(acc_.abs_work, std::abs(p.work), std::abs(cur.work), h);
    trapezoid(acc_.grad_phi_sq, p.grad_phi_sq, cur.grad_phi_sq, h);
    trapezoid(acc_.grad_gamma_sq, p.grad_gamma_sq, cur.grad_gamma_sq, h);
    trapezoid(acc_.phi_sq, p.phi_sq, cur.phi_sq, h);
    trapezoid(acc_.gamma_r_sq, p.gamma_r_sq, cur.gamma_r_sq, h);
    trapezoid(acc_.gamma_z_sq, p.gamma_z_sq, cur.gamma_z_sq, h);
    trapezoid(acc_.grad_omega_r_sq, p.grad_omega_r_sq, cur.grad_omega_r_sq, h);
    trapezoid(acc_.grad_omega_z_sq, p.grad_omega_z_sq, cur.grad_omega_z_sq, h);
    trapezoid(acc_.interaction, p.interaction, cur.interaction, h);
    trapezoid(acc_.grad_uz_sq, p.grad_uz_sq, cur.grad_uz_sq, h);
    trapezoid(acc_.ur_second_sq, p.ur_second_sq, cur.ur_second_sq, h);
    trapezoid(acc_.f_sq, p.f_sq, cur.f_sq, h);
    trapezoid(acc_.f0_inf, p.f0_inf, cur.f0_inf, h);
    trapezoid(acc_.f0_sq, p.f0_sq, cur.f0_sq, h);
    trapezoid(acc_.fbar_r_65_sq, p.fbar_r_65_sq, cur.fbar_r_65_sq, h);
    trapezoid(acc_.fbar_phi_3_sq, p.fbar_phi_3_sq, cur.fbar_phi_3_sq, h);
    trapezoid(acc_.fbar_phi_65_sq, p.fbar_phi_65_sq, cur.fbar_phi_65_sq, h);
    trapezoid(acc_.F_r_65_sq, p.F_r_65_sq, cur.F_r_65_sq, h);
    trapezoid(acc_.F_z_65_sq, p.F_z_65_sq, cur.F_z_65_sq, h);
    trapezoid(acc_.fphi_wall_sq, p.fphi_wall_sq, cur.fphi_wall_sq, h);
    trapezoid(acc_.fphi_s_term, p.fphi_s_term, cur.fphi_s_term, h);
    trapezoid(acc_.fphi_q_pow, p.fphi_q_pow, cur.fphi_q_pow, h);
    ++steps_;
  }
  acc_.phi_l2_sup = std::max(acc_.phi_l2_sup, cur.phi_l2);
  acc_.gamma_l2_sup = std::max(acc_.gamma_l2_sup, cur.gamma_l2);
  acc_.vphi_inf_sup = std::max(acc_.vphi_inf_sup, cur.vphi_inf);
  acc_.u_inf_sup = std::max(acc_.u_inf_sup, cur.u_inf);
  acc_.omega_r_l2_sup = std::max(acc_.omega_r_l2_sup, cur.omega_r_l2);
  acc_.omega_z_l2_sup = std::max(acc_.omega_z_l2_sup, cur.omega_z_l2);
  acc_.fphi_over_r_inf_sup = std::max(acc_.fphi_over_r_inf_sup, cur.fphi_over_r_inf);
  for (std::size_t k = 0; k < exponents_.size(); ++k)
    acc_.vphi_lp_sup[k] = std::max(acc_.vphi_lp_sup[k], cur.vphi_lp[k]);
  max_div_ = std::max(max_div_, cur.div_residual);
  last_ = std::move(cur);
}

void DiagnosticsSeries::record(const FlowState& s, double dt) {
  advance(s, dt);
  const Instant& in = *last_;
  const double nu = config_.nu;
  Row row;
  row.step = s.step;
  row.t = s.t;
  row.dt = dt;
  row.energy = in.energy;
  row.dissipation_cum = nu * acc_.dissipation;
  row.u_inf = in.u_inf;
  row.vphi_inf = in.vphi_inf;
  row.vphi_d = in.vphi_lp[exponent_index(config_.analysis.d)];
  row.phi_l2 = in.phi_l2;
  row.gamma_l2 = in.gamma_l2;
  row.phi_V = phi_V();
  row.gamma_V = gamma_V();
  row.X = row.phi_V + row.gamma_V;
  row.I_abs = I();
  row.ratio_d = criterion_ratio(*this, config_.analysis.d);
  row.div_residual = in.div_residual;
  row.energy_residual = energy_residual();
  row.D = d_constants();
  row.uz_energy = sq(in.uz_l2) + nu * acc_.grad_uz_sq;
  row.ur_energy = sq(in.ur_l2) + nu * acc_.ur_second_sq;
  rows_.push_back(std::move(row));
}

double DiagnosticsSeries::phi_V() const {
  last();
  return acc_.phi_l2_sup + std::sqrt(acc_.grad_phi_sq);
}

double DiagnosticsSeries::gamma_V() const {
  last();
  return acc_.gamma_l2_sup + std::sqrt(acc_.grad_gamma_sq);
}

double DiagnosticsSeries::I() const { return std::abs(acc_.interaction); }

double DiagnosticsSeries::energy_residual() const {
  const double E0 = 0.5 * sq(init_.v_l2);
  const double diss = config_.nu * acc_.dissipation;
  const double den = E0 + diss + acc_.abs_work;
  if (den == 0.0) return 0.0;
  return std::abs(last().energy - E0 + diss - acc_.work) / den;
}

double DiagnosticsSeries::vphi_lp_sup(double p) const {
  if (std::isinf(p)) return acc_.vphi_inf_sup;
  return acc_.vphi_lp_sup[exponent_index(p)];
}

DConstants DiagnosticsSeries::d_constants() const {
  const auto& a = config_.analysis;
  if (!(a.c0 > 0.0)) throw ConfigError("c0 must be positive for D11 and D12");
  const double nu = config_.nu, R = config_.R, dl = a.delta, s = a.s;
  const auto& c = acc_;
  const auto& i0 = init_;
  DConstants D;
  D.tracked.fill(true);
  const double D1 = std::sqrt(c.f_sq) + i0.v_l2;
  const double D2 = c.f0_inf + i0.u_inf;
  const double D3 = std::sqrt((c.fbar_r_65_sq + c.fbar_phi_3_sq) / nu + sq(i0.gamma_l2) +
                              sq(i0.phi_l2));
  const double D4 = std::sqrt((sq(D1 * D2) + sq(i0.uz_l2) + c.f0_sq) / nu);
  const double D5 = std::sqrt(sq(D1) * (1.0 + sq(D2) / nu) + sq(i0.ur_l2) + c.f0_sq / nu);
  // D2^2 / min(1, D2^2) = max(1, D2^2); the Phi(0) term is 0/0 only when both vanish.
  double phi_term = 0.0;
  if (i0.phi_l2 != 0.0)
    phi_term = D2 == 0.0 ? INFINITY : sq(i0.phi_l2) / std::min(1.0, sq(D2));
  const double D6 = std::sqrt(std::max(1.0, sq(D2)) / nu *
                                  (c.fbar_phi_65_sq + c.fbar_r_65_sq + sq(i0.gamma_l2)) +
                              phi_term);
  const double D7 = std::sqrt(c.F_r_65_sq + c.F_z_65_sq + sq(i0.omega_r_l2) +
                              sq(i0.omega_z_l2) + sq(D1));
  const double D8 = std::sqrt(sq(D7) + (D4 + D5) * c.fphi_wall_sq);
  const double D9 = c.fphi_s_term + std::pow(i0.vphi_s, s);
  const double D10 = std::sqrt(D2 * c.fphi_over_r_inf_sup + sq(D1) / nu + sq(i0.vphi_inf));
  const double m = 4.0 - 2.0 * dl;
  const double cpow = std::pow(a.c0, s - 4.0 + 2.0 * dl);
  const double D11 =
      std::pow(m / cpow * std::pow(D2, m) / (4.0 * nu) * std::pow(R, 2.0 * dl) / sq(dl) * D1,
               1.0 / m);
  const double q = 10.0 / (1.0 + 6.0 * dl);
  const double fphi_q = std::pow(c.fphi_q_pow, 1.0 / q);
  const double D12 =
      std::pow(m / cpow * fphi_q * std::pow(D1, 3.0 - 2.0 * dl) + std::pow(i0.vphi_s, m),
               1.0 / m);
  D.value = {D1, D2, D3, D4, D5, D6, D7, D8, D9, D10, D11, D12};
  for (int k = 0; k < 12; ++k) D.tracked[k] = std::isfinite(D.value[k]);
  return D;
}

double v_norm(const DiagnosticsSeries& s, const std::string& which) {
  if (which == "phi") return s.phi_V();
  if (which == "gamma") return s.gamma_V();
  throw ContractError("v_norm expects 'phi' or 'gamma', got '" + which + "'");
}

std::optional<double> criterion_ratio(const DiagnosticsSeries& s, double d) {
  const double den = s.vphi_lp_sup(INFINITY);
  if (den == 0.0) return std::nullopt;
  return s.vphi_lp_sup(d) / den;
}

FpropReport fprop_limit_check(const DiagnosticsSeries& s, const std::vector<double>& d_list) {
  FpropReport rep;
  const Instant& in = s.last();
  rep.d = d_list;
  if (in.vphi_inf == 0.0) return rep;
  rep.defined = true;
  const auto& ex = s.exponents();
  for (double d : d_list) {
    auto it = std::find(ex.begin(), ex.end(), d);
    if (it == ex.end())
      throw ContractError("exponent " + std::to_string(d) + " is not tracked by this series");
    rep.ratio.push_back(in.vphi_lp[it - ex.begin()] / in.vphi_inf);
  }
  rep.monotone = true;
  for (std::size_t k = 1; k < rep.ratio.size(); ++k)
    if (rep.ratio[k] < rep.ratio[k - 1] - 1e-10) rep.monotone = false;
  rep.limit_ok = !rep.ratio.empty() && rep.ratio.back() >= 0.9;
  return rep;
}

double interaction_integral_increment(const FlowState& s) {
  return integrate(s.vphi_over_r * s.phi * s.gamma);
}

// Restart state -----------------------------------------------------------

namespace {

using nlohmann::json;

// Non-finite doubles map to null and back to NaN.
json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }
double num(const json& j) { return j.is_null() ? NAN : j.get<double>(); }

}  // namespace

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(Instant, t, energy, dissipation, work, grad_phi_sq,
                                   grad_gamma_sq, phi_sq, gamma_r_sq, gamma_z_sq, grad_omega_r_sq,
                                   grad_omega_z_sq, interaction, grad_uz_sq, ur_second_sq, v_l2,
                                   u_inf, vphi_inf, phi_l2, gamma_l2, omega_r_l2, omega_z_l2, uz_l2,
                                   ur_l2, vphi_lp, div_residual, f_sq, f0_inf, f0_sq, fbar_r_65_sq,
                                   fbar_phi_3_sq, fbar_phi_65_sq, F_r_65_sq, F_z_65_sq,
                                   fphi_wall_sq, fphi_s_term, fphi_q_pow, fphi_over_r_inf)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(InitialData, v_l2, u_inf, gamma_l2, phi_l2, uz_l2, ur_l2,
                                   omega_r_l2, omega_z_l2, vphi_s, vphi_inf)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(Accumulators, dissipation, work, abs_work, grad_phi_sq,
                                   grad_gamma_sq, phi_sq, gamma_r_sq, gamma_z_sq, grad_omega_r_sq,
                                   grad_omega_z_sq, interaction, grad_uz_sq, ur_second_sq, f_sq,
                                   f0_inf, f0_sq, fbar_r_65_sq, fbar_phi_3_sq, fbar_phi_65_sq,
                                   F_r_65_sq, F_z_65_sq, fphi_wall_sq, fphi_s_term, fphi_q_pow,
                                   phi_l2_sup, gamma_l2_sup, vphi_inf_sup, u_inf_sup,
                                   omega_r_l2_sup, omega_z_l2_sup, fphi_over_r_inf_sup,
                                   vphi_lp_sup)

namespace {

json row_json(const Row& r) {
  json d = json::array();
  for (double v : r.D.value) d.push_back(num(v));
  return {{"step", r.step},
          {"t", r.t},
          {"dt", r.dt},
          {"energy", r.energy},
          {"dissipation_cum", r.dissipation_cum},
          {"u_inf", r.u_inf},
          {"vphi_inf", r.vphi_inf},
          {"vphi_d", r.vphi_d},
          {"phi_l2", r.phi_l2},
          {"gamma_l2", r.gamma_l2},
          {"phi_V", r.phi_V},
          {"gamma_V", r.gamma_V},
          {"X", r.X},
          {"I_abs", r.I_abs},
          {"ratio_d", r.ratio_d ? json(*r.ratio_d) : json(nullptr)},
          {"div_residual", r.div_residual},
          {"energy_residual", r.energy_residual},
          {"D", d},
          {"D_tracked", r.D.tracked},
          {"uz_energy", r.uz_energy},
          {"ur_energy", r.ur_energy}};
}

Row row_from(const json& j) {
  Row r;
  r.step = j.at("step").get<long>();
  r.t = j.at("t").get<double>();
  r.dt = j.at("dt").get<double>();
  r.energy = j.at("energy").get<double>();
  r.dissipation_cum = j.at("dissipation_cum").get<double>();
  r.u_inf = j.at("u_inf").get<double>();
  r.vphi_inf = j.at("vphi_inf").get<double>();
  r.vphi_d = j.at("vphi_d").get<double>();
  r.phi_l2 = j.at("phi_l2").get<double>();
  r.gamma_l2 = j.at("gamma_l2").get<double>();
  r.phi_V = j.at("phi_V").get<double>();
  r.gamma_V = j.at("gamma_V").get<double>();
  r.X = j.at("X").get<double>();
  r.I_abs = j.at("I_abs").get<double>();
  if (!j.at("ratio_d").is_null()) r.ratio_d = j.at("ratio_d").get<double>();
  r.div_residual = j.at("div_residual").get<double>();
  r.energy_residual = j.at("energy_residual").get<double>();
  const auto& d = j.at("D");
  for (int k = 0; k < 12; ++k) r.D.value[k] = num(d.at(k));
  r.D.tracked = j.at("D_tracked").get<std::array<bool, 12>>();
  r.uz_energy = j.at("uz_energy").get<double>();
  r.ur_energy = j.at("ur_energy").get<double>();
  return r;
}

}  // namespace

std::string DiagnosticsSeries::to_json() const {
  json rows = json::array();
  for (const auto& r : rows_) rows.push_back(row_json(r));
  json j = {{"exponents", exponents_}, {"initial", init_},  {"totals", acc_},
            {"steps", steps_},         {"max_div", max_div_}, {"rows", rows}};
  j["last"] = last_ ? json(*last_) : json(nullptr);
  return j.dump();
}

void DiagnosticsSeries::load_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    if (j.at("exponents").get<std::vector<double>>() != exponents_)
      throw FormatError("diagnostics state tracks different exponents than the config");
    init_ = j.at("initial").get<InitialData>();
    acc_ = j.at("totals").get<Accumulators>();
    steps_ = j.at("steps").get<long>();
    max_div_ = j.at("max_div").get<double>();
    rows_.clear();
    for (const auto& r : j.at("rows")) rows_.push_back(row_from(r));
    if (j.at("last").is_null())
      last_.reset();
    else
      last_ = j.at("last").get<Instant>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed diagnostics state: ") + e.what());
  }
}

}  // namespace axicyl
