// Acceptance checks, one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria (0 when all pass).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <unistd.h>

#include "axicyl/bench.hpp"
#include "axicyl/commands.hpp"
#include "axicyl/config.hpp"
#include "axicyl/errors.hpp"
#include "axicyl/io.hpp"

using namespace axicyl;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Simulations shared by several criteria, run once.
struct Runs {
  std::map<std::string, RunResult> by_key;
  const RunResult& get(const std::string& preset, int nr, double t_end = 0.25) {
    const std::string key = preset + "/" + std::to_string(nr) + "/" + format_double(t_end);
    auto it = by_key.find(key);
    if (it != by_key.end()) return it->second;
    SimConfig c = bench_preset(preset, nr);
    c.t_end = t_end;
    return by_key.emplace(key, run(c)).first->second;
  }
  double max_div() const {
    double m = 0.0;
    for (const auto& [k, r] : by_key) m = std::max(m, r.series->max_div_residual());
    return m;
  }
};

Runs runs;
const fs::path work = fs::temp_directory_path() / ("axicyl_acceptance_" + std::to_string(::getpid()));

double psi1_error(int n) {
  const auto g = build_grid(1.0, 1.0, n, n);
  const auto gamma = ScalarField::sample(
      g,
      [](double r, double z) { return (8.0 + M_PI * M_PI / 4.0 * (1 - r * r)) * std::cos(M_PI * z / 2); },
      Parity::Even);
  const auto psi = solve_psi1(gamma);
  double e = 0.0;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j)
      e = std::max(e, std::abs(psi(i, j) - (1 - g->r(i) * g->r(i)) * std::cos(M_PI * g->z(j) / 2)));
  return e;
}

Outcome elliptic_convergence() {
  const double e64 = psi1_error(64), e128 = psi1_error(128);
  const double ratio = e64 / e128;
  return {e64 <= 5e-3 && ratio >= 3.4 && ratio <= 4.6,
          fmt("L_inf error %.3e at 64^2, %.3e at 128^2, ratio %.3f", e64, e128, ratio)};
}

Outcome discrete_continuity() {
  const auto g = build_grid(1.0, 1.0, 64, 64);
  double poly = 0.0;
  const std::vector<std::function<double(double, double)>> shapes = {
      [](double r, double z) { return (1 - r * r) * (1 - z * z); },
      [](double r, double z) { return r * r * r * r * z * z * z - 3 * r * r * z + 1; },
      [](double r, double z) { return (1 - r * r) * (1 + z) * (2 - z * z * z * z); }};
  for (const auto& f : shapes) {
    const auto v = velocity_from_psi1(ScalarField::sample(g, f, Parity::Even));
    poly = std::max(poly, divergence_residual(v.r, v.z));
  }
  runs.get("bubble-decay", 64);
  runs.get("forced-jet", 64);
  const double along = runs.max_div();
  return {poly <= 1e-10 && along <= 1e-9,
          fmt("polynomial psi1 residual %.2e, max over %zu runs %.2e", poly, runs.by_key.size(),
              along)};
}

Outcome maximum_principle() {
  const auto& r = runs.get("bubble-decay", 64);
  const double u0 = r.series->initial().u_inf, sup = r.series->totals().u_inf_sup;
  const long steps = r.state.step;
  return {steps >= 1000 && sup <= u0 * (1.0 + 1e-10),
          fmt("%ld steps at 64x128, max_t |u|_inf / |u(0)|_inf - 1 = %.2e", steps, sup / u0 - 1.0)};
}

Outcome energy_identity() {
  std::string detail;
  bool pass = true;
  for (const char* preset : {"bubble-decay", "forced-jet"}) {
    const double coarse = runs.get(preset, 64).series->energy_residual();
    const double fine = runs.get(preset, 128).series->energy_residual();
    pass = pass && coarse <= 1e-3 && fine < coarse;
    detail += fmt("%s%s t=0.25: %.2e at 64x128, %.2e at 128x256", detail.empty() ? "" : "; ",
                  preset, coarse, fine);
  }
  return {pass, detail};
}

Outcome hardy() {
  EnsembleRequest req;
  req.id = "hardy";
  req.samples = 100;
  req.seed = 2024;
  const auto res = run_ensemble(req);
  double mx = 0.0;
  int n = 0;
  bool finite = true;
  for (const auto* v : {&res.coarse, &res.fine})
    for (const auto& r : *v) {
      if (!r.ratio) {
        finite = false;
        continue;
      }
      mx = std::max(mx, *r.ratio);
      ++n;
    }
  return {finite && mx <= 1.0 + 1e-3, fmt("%d evaluations, max ratio %.4f", n, mx)};
}

Outcome elliptic_ensembles() {
  std::string detail;
  bool pass = true;
  auto check = [&](const std::string& id, std::map<std::string, double> params) {
    EnsembleRequest req;
    req.id = id;
    req.samples = 50;
    req.seed = 11;
    req.grids = {64, 128};
    req.params = std::move(params);
    const auto res = run_ensemble(req);
    bool finite = res.summary.degenerate == 0;
    for (const auto* v : {&res.coarse, &res.fine})
      for (const auto& r : *v) finite = finite && r.ratio && std::isfinite(*r.ratio);
    const double change = res.summary.refinement_change();
    pass = pass && finite && change < 0.15;
    detail += fmt("%s %.1f%%", res.summary.name.c_str(), 100.0 * change) + (finite ? "" : " (non-finite)") + ", ";
  };
  check("psi1_h2", {});
  check("psi1_h3_zz", {});
  check("psi1_h3_full", {});
  check("psi1_rz_over_r", {});
  for (double mu : {0.1, 0.5, 0.9}) check("weighted_psi1", {{"mu", mu}});

  BenchOptions o;
  o.suite = "all";
  o.samples = 50;
  o.seed = 0;
  o.out_dir = (work / "bench_all").string();
  const auto t0 = std::chrono::steady_clock::now();
  command_bench(o);
  const double secs = seconds_since(t0);
  pass = pass && secs < 600.0;
  detail += fmt("bench all (50 samples, 32/64) %.1f s", secs);
  return {pass, detail};
}

Outcome order_reduction_monitors() {
  std::string detail;
  bool pass = true;
  double worst = 0.0;
  std::string worst_name;
  for (const char* preset : {"bubble-decay", "forced-jet"}) {
    const auto& lo = *runs.get(preset, 32).series;
    const auto& hi = *runs.get(preset, 64).series;
    std::vector<InequalityReport> a, b;
    for (const auto& r : verify_energy_estimate(lo)) a.push_back(r);
    for (const auto& r : verify_order_reduction(lo)) a.push_back(r);
    for (const auto& r : verify_energy_estimate(hi)) b.push_back(r);
    for (const auto& r : verify_order_reduction(hi)) b.push_back(r);
    for (std::size_t k = 0; k < a.size(); ++k) {
      const bool finite = a[k].ratio && b[k].ratio && std::isfinite(*a[k].ratio) &&
                          std::isfinite(*b[k].ratio);
      if (!finite) {
        pass = false;
        detail += fmt("%s[%s] non-finite; ", a[k].name.c_str(), preset);
        continue;
      }
      const double change = std::abs(*b[k].ratio - *a[k].ratio) / *b[k].ratio;
      if (change >= 0.2) pass = false;
      if (change >= worst) {
        worst = change;
        worst_name = a[k].name + "[" + preset + "]";
      }
    }
    const auto cr = criterion_ratio(hi, 8.0);
    if (!cr || !(*cr > 0.0)) pass = false;
    detail += fmt("%s ratio_8 %.4f; ", preset, cr.value_or(0.0));
  }
  detail += fmt("largest change %.2f%% (%s)", 100.0 * worst, worst_name.c_str());
  return {pass, detail};
}

Outcome fprop() {
  std::string detail;
  bool pass = true;
  for (const char* preset : {"bubble-decay", "forced-jet"}) {
    const auto rep = fprop_limit_check(*runs.get(preset, 64).series);
    pass = pass && rep.defined && rep.monotone && rep.limit_ok;
    detail += std::string(detail.empty() ? "" : "; ") + preset + ":";
    for (double x : rep.ratio) detail += fmt(" %.4f", x);
  }
  return {pass, detail};
}

std::map<std::string, std::string> digests(const std::vector<Artifact>& files) {
  std::map<std::string, std::string> m;
  for (const auto& a : files) m[a.path] = a.sha256;
  return m;
}

const std::string kConfigs = AXICYL_CONFIG_DIR;

Outcome determinism() {
  const std::string cfg = kConfigs + "/forced_jet.cfg";
  const auto a = command_simulate(cfg, (work / "sim_a").string());
  const auto b = command_simulate(cfg, (work / "sim_b").string());
  BenchOptions o;
  o.suite = "all";
  o.samples = 8;
  o.seed = 3;
  o.grids = {16, 24};
  o.out_dir = (work / "bench_a").string();
  const auto c = command_bench(o);
  o.out_dir = (work / "bench_b").string();
  const auto d = command_bench(o);
  const bool sim_same = digests(a.files) == digests(b.files);
  const bool bench_same = digests(c.files) == digests(d.files);
  return {sim_same && bench_same,
          fmt("simulate: %zu artifacts %s; bench: %zu artifacts %s", a.files.size(),
              sim_same ? "identical" : "DIFFER", c.files.size(), bench_same ? "identical" : "DIFFER")};
}

std::vector<std::vector<double>> csv_numbers(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      char* end = nullptr;
      const double x = std::strtod(cell.c_str(), &end);
      row.push_back(end != cell.c_str() ? x : NAN);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Outcome checkpoint_restart() {
  // Round trip of a mid-run state.
  const std::string base = (work / "sim_a").string();
  std::vector<std::string> ckpts;
  for (const auto& e : fs::directory_iterator(base + "/checkpoints"))
    if (e.path().extension() == ".ckpt") ckpts.push_back(e.path().string());
  std::sort(ckpts.begin(), ckpts.end());
  if (ckpts.size() < 3) return {false, "fewer than three checkpoints written"};
  const std::string mid = ckpts[ckpts.size() / 2];
  const FlowState s = read_checkpoint(mid);
  const std::string again = (work / "again.ckpt").string();
  write_checkpoint(s, again);
  const bool bitwise = read_file(again) == read_file(mid);

  // Restart and compare every diagnostic at matching times.
  command_simulate(kConfigs + "/forced_jet.cfg", (work / "sim_restart").string(), mid);
  const auto full = csv_numbers(read_file(base + "/diagnostics.csv"));
  const auto cont = csv_numbers(read_file((work / "sim_restart").string() + "/diagnostics.csv"));
  double worst = 0.0;
  bool aligned = full.size() == cont.size();
  for (std::size_t i = 0; aligned && i < full.size(); ++i) {
    aligned = full[i].size() == cont[i].size();
    for (std::size_t k = 0; aligned && k < full[i].size(); ++k) {
      const double x = full[i][k], y = cont[i][k];
      if (std::isnan(x) && std::isnan(y)) continue;
      const double rel = std::abs(x - y) / std::max(std::abs(x), 1e-300);
      worst = std::max(worst, x == y ? 0.0 : rel);
    }
  }
  return {bitwise && aligned && worst <= 1e-10,
          fmt("rewrite of %s %s; restart rows %zu/%zu, max relative difference %.2e",
              fs::path(mid).filename().c_str(), bitwise ? "bitwise identical" : "DIFFERS",
              cont.size(), full.size(), worst)};
}

}  // namespace

int main() {
  fs::remove_all(work);
  fs::create_directories(work);
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria = {
      {"elliptic convergence", elliptic_convergence},
      {"discrete continuity", discrete_continuity},
      {"maximum principle", maximum_principle},
      {"energy identity", energy_identity},
      {"Hardy ensemble", hardy},
      {"elliptic estimate ensembles", elliptic_ensembles},
      {"order-reduction monitors", order_reduction_monitors},
      {"criterion ratio limit in d", fprop},
      {"determinism", determinism},
      {"checkpoint round trip and restart", checkpoint_restart},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %2zu %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first,
                o.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
  }
  fs::remove_all(work);
  return failed;
}
