#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "axicyl/diagnostics.hpp"
#include "axicyl/elliptic.hpp"
#include "axicyl/random_fields.hpp"

namespace axicyl {

// One measured inequality, constant taken as 1: ratio = lhs / rhs.
struct InequalityReport {
  std::string name;
  std::map<std::string, double> params;
  double lhs = 0.0, rhs = 0.0;
  std::optional<double> ratio;  // empty when degenerate
  // "ok", "degenerate" (rhs = 0) or "assumption unmet".
  std::string status = "ok";
  // Termwise pieces of lhs and rhs.
  std::map<std::string, double> terms;
  std::string grid;
  std::string sample;
};

InequalityReport make_report(std::string name, double lhs, double rhs);

struct GridPair {
  int coarse = 32, fine = 64;
};

struct EnsembleSummary {
  std::string name;
  int count = 0;
  int degenerate = 0;
  double max_ratio = 0.0, median_ratio = 0.0;  // over both grids
  double coarse_max = 0.0, fine_max = 0.0;
  // |fine_max - coarse_max| / fine_max
  double refinement_change() const;
};

EnsembleSummary summarize(const std::string& name, const std::vector<InequalityReport>& coarse,
                          const std::vector<InequalityReport>& fine);

// Hardy inequality on the half-line for a piecewise-linear profile. F is the
// exact primitive from 0 (beta > 1/p) or from infinity (beta < 1/p); both
// sides are integrated with per-cell Gauss rules, graded at the origin, plus
// the closed-form tail beyond the support.
InequalityReport verify_hardy(double p, double beta, const Profile& f);

// Interpolation sum_{|alpha|=r} |D^alpha f|_p <= |f|_{p1}^(1-theta) ||f||_{W^l_p2}^theta
// for axisymmetric f in three dimensions; theta from the dimension balance.
// Derivative families use the meridional components: {f_r, f_z} for order 1,
// {f_rr, f_rz, f_zz, f_r/r} for order 2.
InequalityReport verify_sobolev_interp(const ScalarField& f, int r_order = 1, int l = 2,
                                       double p = 2.0, double p1 = 2.0, double p2 = 2.0);
double interpolation_theta(int r_order, int l, double p, double p1, double p2);

// (integral |f|^q r^-s)^(1/q) <= |f|_p^(alpha) |grad f|_p^(1-alpha) with
// alpha = (3-s)/q - 3/p + 1, for f vanishing near r = R.
InequalityReport verify_hardy_interp(const ScalarField& f, double p, double s, double q);

// Weighted z-derivative estimate of psi1: the middle term carries
// r^(2 mu - 2) against the measure r dr dz.
InequalityReport verify_weighted_psi1(const ScalarField& gamma, double mu,
                                      const EllipticSolveSettings& es = {});

// H2 estimate for psi1 including the axis and wall traces; rhs = |Gamma|_2^2.
InequalityReport verify_h2(const ScalarField& gamma, const EllipticSolveSettings& es = {});

// H3 estimates: [0] psi_zzr, psi_zzz and the axis trace of psi_zz;
// [1] psi_rrz, psi_rzz, psi_zzz plus the axis and wall traces;
// [2] |psi_rz / r|_2 against |Gamma_z|_2.
std::array<InequalityReport, 3> verify_h3(const ScalarField& gamma,
                                          const EllipticSolveSettings& es = {});

// Run-based estimates, evaluated on a completed series.
std::array<InequalityReport, 2> verify_energy_estimate(const DiagnosticsSeries& s);
std::array<InequalityReport, 4> verify_order_reduction(const DiagnosticsSeries& s);
std::array<InequalityReport, 2> verify_swirl_bounds(const DiagnosticsSeries& s);

// Ids accepted by run_ensemble.
const std::vector<std::string>& ensemble_ids();

struct EnsembleRequest {
  std::string id;
  int samples = 10;
  std::uint64_t seed = 0;
  GridPair grids;
  std::map<std::string, double> params;  // e.g. mu for weighted_psi1
};

struct EnsembleResult {
  EnsembleSummary summary;
  std::vector<InequalityReport> coarse, fine;
};

// Samples run concurrently; results are ordered by sample id.
EnsembleResult run_ensemble(const EnsembleRequest& req);

// Simulation presets used by the run-based suites: "bubble-decay" (swirl
// bubble, no forcing) and "forced-jet" (sheared jet with the swirl drive).
// The grid is nr x 2 nr on the unit cylinder.
SimConfig bench_preset(const std::string& id, int nr);

}  // namespace axicyl
