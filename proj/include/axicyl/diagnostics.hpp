#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "axicyl/evolution.hpp"
#include "axicyl/flow_state.hpp"
#include "axicyl/forcing.hpp"

namespace axicyl {

// Spatial integrals at one instant. Time integrals of these are accumulated
// by the trapezoid rule.
struct Instant {
  double t = 0.0;
  // 1/2 |v|_2^2
  double energy = 0.0;
  // |grad v_r|^2 + |grad v_phi|^2 + |grad v_z|^2 + |v_r/r|^2 + |v_phi/r|^2
  double dissipation = 0.0;
  // integral of f . v
  double work = 0.0;
  double grad_phi_sq = 0.0, grad_gamma_sq = 0.0, phi_sq = 0.0;
  double gamma_r_sq = 0.0, gamma_z_sq = 0.0;
  double grad_omega_r_sq = 0.0, grad_omega_z_sq = 0.0;
  // integral of (v_phi/r) Phi Gamma
  double interaction = 0.0;
  // |grad u_z|^2 and |u_rr|^2 + |u_rz|^2
  double grad_uz_sq = 0.0, ur_second_sq = 0.0;

  // Instantaneous norms.
  double v_l2 = 0.0, u_inf = 0.0, vphi_inf = 0.0, phi_l2 = 0.0, gamma_l2 = 0.0;
  double omega_r_l2 = 0.0, omega_z_l2 = 0.0, uz_l2 = 0.0, ur_l2 = 0.0;
  std::vector<double> vphi_lp;  // |v_phi|_p for Tracker::exponents
  double div_residual = 0.0;

  // Forcing integrands.
  double f_sq = 0.0;            // |f|_2^2
  double f0_inf = 0.0;          // |f0|_inf
  double f0_sq = 0.0;           // |f0|_2^2
  double fbar_r_65_sq = 0.0;    // |Fbar_r|_{6/5}^2
  double fbar_phi_3_sq = 0.0;   // |Fbar_phi|_3^2
  double fbar_phi_65_sq = 0.0;  // |Fbar_phi|_{6/5}^2
  double F_r_65_sq = 0.0, F_z_65_sq = 0.0;
  double fphi_wall_sq = 0.0;    // integral of f_phi^2 over r = R (R dz)
  double fphi_s_term = 0.0;     // |f_phi|_{3s/(2s+1)}^s
  double fphi_q_pow = 0.0;      // integral of |f_phi|^q, q = 10/(1+6 delta)
  double fphi_over_r_inf = 0.0;
};

// Values of the initial fields that enter the data constants.
struct InitialData {
  double v_l2 = 0.0, u_inf = 0.0, gamma_l2 = 0.0, phi_l2 = 0.0;
  double uz_l2 = 0.0, ur_l2 = 0.0, omega_r_l2 = 0.0, omega_z_l2 = 0.0;
  double vphi_s = 0.0, vphi_inf = 0.0;
};

struct Accumulators {
  double dissipation = 0.0, work = 0.0, abs_work = 0.0;
  double grad_phi_sq = 0.0, grad_gamma_sq = 0.0, phi_sq = 0.0;
  double gamma_r_sq = 0.0, gamma_z_sq = 0.0;
  double grad_omega_r_sq = 0.0, grad_omega_z_sq = 0.0;
  double interaction = 0.0;
  double grad_uz_sq = 0.0, ur_second_sq = 0.0;
  double f_sq = 0.0, f0_inf = 0.0, f0_sq = 0.0;
  double fbar_r_65_sq = 0.0, fbar_phi_3_sq = 0.0, fbar_phi_65_sq = 0.0;
  double F_r_65_sq = 0.0, F_z_65_sq = 0.0, fphi_wall_sq = 0.0;
  double fphi_s_term = 0.0, fphi_q_pow = 0.0;
  // Running suprema.
  double phi_l2_sup = 0.0, gamma_l2_sup = 0.0, vphi_inf_sup = 0.0, u_inf_sup = 0.0;
  double omega_r_l2_sup = 0.0, omega_z_l2_sup = 0.0, fphi_over_r_inf_sup = 0.0;
  std::vector<double> vphi_lp_sup;
};

struct DConstants {
  std::array<double, 12> value{};
  std::array<bool, 12> tracked{};
  double operator[](int k) const { return value[k - 1]; }  // 1-based, as named
};

// One reported row; the first block is the CSV column contract.
struct Row {
  long step = 0;
  double t = 0.0, dt = 0.0, energy = 0.0, dissipation_cum = 0.0;
  double u_inf = 0.0, vphi_inf = 0.0, vphi_d = 0.0, phi_l2 = 0.0, gamma_l2 = 0.0;
  double phi_V = 0.0, gamma_V = 0.0, X = 0.0, I_abs = 0.0;
  std::optional<double> ratio_d;
  double div_residual = 0.0, energy_residual = 0.0;
  DConstants D;
  // Left-hand sides of the swirl-gradient bounds at this time.
  double uz_energy = 0.0, ur_energy = 0.0;
};

const std::vector<std::string>& csv_columns();

// Streams diagnostics for one run. advance() integrates in time at every
// step, using the time of the state; record() additionally appends a reported
// row carrying dt.
class DiagnosticsSeries {
public:
  DiagnosticsSeries(const SimConfig& config, const Forcing& forcing);

  const SimConfig& config() const { return config_; }
  const std::vector<double>& exponents() const { return exponents_; }

  void advance(const FlowState& s, double dt);
  void record(const FlowState& s, double dt);

  bool empty() const { return !last_.has_value(); }
  const std::vector<Row>& rows() const { return rows_; }
  const Accumulators& totals() const { return acc_; }
  const InitialData& initial() const { return init_; }
  const Instant& last() const;
  double t() const { return last().t; }
  long steps() const { return steps_; }

  double phi_V() const;
  double gamma_V() const;
  double X() const { return phi_V() + gamma_V(); }
  double I() const;
  double energy_residual() const;
  double max_div_residual() const { return max_div_; }
  double vphi_lp_sup(double p) const;
  DConstants d_constants() const;

  // Restart support: the full accumulator state as JSON text.
  std::string to_json() const;
  void load_json(const std::string& text);

private:
  Instant measure(const FlowState& s) const;
  void forcing_terms(Instant& in, const GridPtr& g, double t) const;
  std::size_t exponent_index(double p) const;

  SimConfig config_;
  Forcing forcing_;
  std::vector<double> exponents_;
  InitialData init_;
  Accumulators acc_;
  std::optional<Instant> last_;
  std::vector<Row> rows_;
  long steps_ = 0;
  double max_div_ = 0.0;
};

double v_norm(const DiagnosticsSeries& s, const std::string& which);

// |v_phi|_{d,inf} / |v_phi|_{inf,inf}; empty when the flow has no swirl.
std::optional<double> criterion_ratio(const DiagnosticsSeries& s, double d);

struct FpropReport {
  std::vector<double> d, ratio;
  bool monotone = false;
  bool limit_ok = false;
  bool defined = false;
};

// Ratios |v_phi|_d / |v_phi|_inf of the last recorded state.
FpropReport fprop_limit_check(const DiagnosticsSeries& s,
                              const std::vector<double>& d_list = {8, 32, 128, 1024});

double interaction_integral_increment(const FlowState& s);

}  // namespace axicyl
