#include "axicyl/commands.hpp"

#include <filesystem>
#include <iomanip>
#include <json.hpp>
#include <set>
#include <sstream>

#include "axicyl/config.hpp"
#include "axicyl/errors.hpp"
#include "axicyl/plots.hpp"

namespace axicyl {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

// Integrals over the cylinder omit the angular factor 2 pi.
constexpr const char* kMeasure = "r dr dz (2pi-free)";

json report_json(const InequalityReport& r) {
  json params = json::object(), terms = json::object();
  for (const auto& [k, v] : r.params) params[k] = num(v);
  for (const auto& [k, v] : r.terms) terms[k] = num(v);
  return {{"name", r.name},
          {"status", r.status},
          {"lhs", num(r.lhs)},
          {"rhs", num(r.rhs)},
          {"ratio", r.ratio ? num(*r.ratio) : json(nullptr)},
          {"params", params},
          {"terms", terms},
          {"grid", r.grid},
          {"sample", r.sample}};
}

json summary_json(const EnsembleSummary& s) {
  return {{"name", s.name},
          {"count", s.count},
          {"degenerate", s.degenerate},
          {"max_ratio", num(s.max_ratio)},
          {"median_ratio", num(s.median_ratio)},
          {"coarse_max", num(s.coarse_max)},
          {"fine_max", num(s.fine_max)},
          {"refinement_change", num(s.refinement_change())}};
}

std::string step_name(long step) {
  std::ostringstream o;
  o << "step_" << std::setw(7) << std::setfill('0') << step;
  return o.str();
}

void write_run_plots(const std::string& dir, const std::vector<Row>& rows, const json& fprop) {
  Series2D X{"X(t)", {}, {}}, phi{"|Phi|_V", {}, {}}, gam{"|Gamma|_V", {}, {}};
  for (const auto& r : rows) {
    for (auto* s : {&X, &phi, &gam}) s->x.push_back(r.t);
    X.y.push_back(r.X);
    phi.y.push_back(r.phi_V);
    gam.y.push_back(r.gamma_V);
  }
  write_file(dir + "/plots/x_of_t.svg", svg_line_chart("X(t) = |Phi|_V + |Gamma|_V", "t", "norm", {X, phi, gam}));
  Series2D cr{"final state", {}, {}};
  if (fprop.contains("d") && fprop.contains("ratio")) {
    cr.x = fprop["d"].get<std::vector<double>>();
    for (const auto& v : fprop["ratio"]) cr.y.push_back(v.is_null() ? NAN : v.get<double>());
  }
  cr.y.resize(cr.x.size(), NAN);
  write_file(dir + "/plots/criterion_ratio.svg",
             svg_line_chart("|v_phi|_d / |v_phi|_inf", "d", "ratio", {cr}, true));
}

void write_bench_plot(const std::string& dir, const json& summaries) {
  std::vector<Bar> bars;
  for (const auto& s : summaries) {
    auto get = [&](const char* k) { return s[k].is_null() ? NAN : s[k].get<double>(); };
    bars.push_back({s["name"].get<std::string>(), {get("coarse_max"), get("fine_max")}});
  }
  write_file(dir + "/plots/ratios.svg",
             svg_bar_chart("max measured ratio (constant 1)", {"coarse grid", "fine grid"}, bars, 1.0));
}

json simulate_summary(const SimConfig& c, const FlowState& s, const DiagnosticsSeries& ser) {
  const auto D = ser.d_constants();
  json dj = json::object();
  for (int k = 1; k <= 12; ++k)
    dj["D" + std::to_string(k)] = D.tracked[k - 1] ? num(D[k]) : json("untracked");
  const auto fp = fprop_limit_check(ser);
  json fprop = {{"d", fp.d}, {"defined", fp.defined}, {"monotone", fp.monotone}, {"limit_ok", fp.limit_ok}};
  fprop["ratio"] = json::array();
  for (double v : fp.ratio) fprop["ratio"].push_back(num(v));

  const auto& in = ser.initial();
  const auto& acc = ser.totals();
  json flags = json::object();
  const Forcing f = forcing_for(c);
  if (f.zero)
    flags["max_principle"] = acc.u_inf_sup <= in.u_inf * (1.0 + 1e-10);
  else
    flags["max_principle"] = nullptr;  // only asserted without swirl forcing
  flags["u_inf_initial"] = num(in.u_inf);
  flags["u_inf_sup"] = num(acc.u_inf_sup);
  flags["energy_residual"] = num(ser.energy_residual());
  flags["energy_ok"] = ser.energy_residual() <= 1e-3;
  flags["max_div_residual"] = num(ser.max_div_residual());
  flags["continuity_ok"] = ser.max_div_residual() <= 1e-9;

  json est = json::array();
  for (const auto& r : verify_energy_estimate(ser)) est.push_back(report_json(r));
  for (const auto& r : verify_order_reduction(ser)) est.push_back(report_json(r));
  for (const auto& r : verify_swirl_bounds(ser)) est.push_back(report_json(r));

  const auto cr = criterion_ratio(ser, c.analysis.d);
  return {{"grid", s.grid().describe()},
          {"measure", kMeasure},
          {"t", num(s.t)},
          {"steps", s.step},
          {"D", dj},
          {"X", num(ser.X())},
          {"phi_V", num(ser.phi_V())},
          {"gamma_V", num(ser.gamma_V())},
          {"I", num(ser.I())},
          {"criterion_ratio", {{"d", c.analysis.d}, {"value", cr ? num(*cr) : json("undefined")}}},
          {"fprop", fprop},
          {"flags", flags},
          {"estimates", est}};
}

// The columns needed for the X(t) plot, read back from diagnostics.csv.
std::vector<Row> rows_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  std::vector<std::string> head;
  {
    std::istringstream h(line);
    for (std::string c; std::getline(h, c, ',');) head.push_back(c);
  }
  if (head != csv_columns()) throw FormatError("diagnostics.csv header does not match the column contract");
  auto col = [&](const char* name) {
    return static_cast<std::size_t>(std::find(head.begin(), head.end(), name) - head.begin());
  };
  const std::size_t ct = col("t"), cx = col("X"), cp = col("phi_V"), cg = col("gamma_V");
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::istringstream l(line);
    for (std::string c; std::getline(l, c, ',');) f.push_back(c);
    if (f.size() != head.size()) throw FormatError("diagnostics.csv row has the wrong field count");
    Row r;
    r.t = std::stod(f[ct]);
    r.X = std::stod(f[cx]);
    r.phi_V = std::stod(f[cp]);
    r.gamma_V = std::stod(f[cg]);
    rows.push_back(r);
  }
  return rows;
}

std::string sidecar_path(const std::string& ckpt) {
  fs::path p(ckpt);
  p.replace_extension(".diag.json");
  return p.string();
}

}  // namespace

RunArtifacts command_simulate(const std::string& config_path, const std::string& out_dir,
                              const std::optional<std::string>& restart) {
  const SimConfig c = parse_config(config_path);
  fs::create_directories(out_dir);
  write_file(out_dir + "/config.echo.txt", echo_config(c));
  const Forcing f = forcing_for(c);

  FlowState state;
  auto series = std::make_shared<DiagnosticsSeries>(c, f);
  auto checkpoint = [&](const FlowState& s, const DiagnosticsSeries& ser) {
    const std::string base = out_dir + "/checkpoints/" + step_name(s.step);
    write_checkpoint(s, base + ".ckpt");
    write_file(base + ".diag.json", ser.to_json());
  };

  if (restart) {
    state = read_checkpoint(*restart, c.elliptic);
    const auto& g = state.grid();
    if (g.nr() != c.nr || g.nz() != c.nz || g.R() != c.R || g.a() != c.a)
      throw ConfigError("checkpoint grid " + g.describe() + " does not match the config");
    series->load_json(read_file(sidecar_path(*restart)));
    if (series->empty() || series->t() != state.t)
      throw FormatError("diagnostics sidecar does not match checkpoint time");
  } else {
    state = initial_state(c, grid_for(c));
    series->record(state, 0.0);
  }
  checkpoint(state, *series);

  RunHooks hooks;
  hooks.on_record = checkpoint;
  try {
    RunResult res = run_from(c, state, series, hooks);
    state = std::move(res.state);
  } catch (const Error& e) {
    write_file(out_dir + "/diagnostics.csv", diagnostics_csv(series->rows()));
    json fail = {{"error", e.what()},
                 {"exit_code", exit_code_for(e)},
                 {"recorded_rows", series->rows().size()},
                 {"last_recorded_t", series->rows().empty() ? json(nullptr) : num(series->rows().back().t)}};
    write_file(out_dir + "/failure.json", fail.dump(2) + "\n");
    write_manifest(out_dir);
    throw;
  }

  write_file(out_dir + "/diagnostics.csv", diagnostics_csv(series->rows()));
  const json summary = simulate_summary(c, state, *series);
  write_file(out_dir + "/summary.json", summary.dump(2) + "\n");
  write_run_plots(out_dir, series->rows(), summary["fprop"]);
  return {out_dir, write_manifest(out_dir)};
}

const std::vector<std::string>& bench_suites() {
  static const std::vector<std::string> s = {"hardy", "interp", "hardy-interp", "weighted",        "h2",
                                             "h3",    "energy", "swirl",        "order-reduction", "all"};
  return s;
}

RunArtifacts command_bench(const BenchOptions& o) {
  const auto& suites = bench_suites();
  if (std::find(suites.begin(), suites.end(), o.suite) == suites.end())
    throw ConfigError("unknown suite '" + o.suite + "'");
  if (o.samples < 1) throw ConfigError("samples must be >= 1, got " + std::to_string(o.samples));
  if (o.grids.coarse < 8 || o.grids.fine <= o.grids.coarse)
    throw ConfigError("grids must satisfy 8 <= coarse < fine");
  const bool all = o.suite == "all";
  auto want = [&](const char* s) { return all || o.suite == s; };

  std::vector<EnsembleRequest> reqs;
  auto add = [&](const std::string& id, std::map<std::string, double> params = {}) {
    reqs.push_back({id, o.samples, o.seed, o.grids, std::move(params)});
  };
  if (want("hardy")) add("hardy");
  if (want("interp")) add("sobolev_interpolation");
  if (want("hardy-interp")) add("hardy_interpolation");
  if (want("weighted"))
    for (double mu : {0.1, 0.5, 0.9}) add("weighted_psi1", {{"mu", mu}});
  if (want("h2")) add("psi1_h2");
  if (want("h3"))
    for (const char* id : {"psi1_h3_zz", "psi1_h3_full", "psi1_rz_over_r"}) add(id);

  json ensembles = json::array(), summaries = json::array();
  std::vector<EnsembleSummary> table;
  for (const auto& r : reqs) {
    const EnsembleResult res = run_ensemble(r);
    json coarse = json::array(), fine = json::array();
    for (const auto& x : res.coarse) coarse.push_back(report_json(x));
    for (const auto& x : res.fine) fine.push_back(report_json(x));
    ensembles.push_back({{"summary", summary_json(res.summary)}, {"coarse", coarse}, {"fine", fine}});
    summaries.push_back(summary_json(res.summary));
    table.push_back(res.summary);
  }

  json runs = json::array();
  const bool sims = want("energy") || want("swirl") || want("order-reduction");
  if (sims) {
    const std::vector<std::string> presets = {"bubble-decay", "forced-jet"};
    std::vector<std::shared_ptr<DiagnosticsSeries>> out(4);
    std::vector<std::exception_ptr> err(4);
#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k < 4; ++k) {
      try {
        out[k] = run(bench_preset(presets[k / 2], k % 2 ? o.grids.fine : o.grids.coarse)).series;
      } catch (...) {
        err[k] = std::current_exception();
      }
    }
    for (auto& e : err)
      if (e) std::rethrow_exception(e);
    for (int p = 0; p < 2; ++p) {
      std::vector<InequalityReport> coarse, fine;
      for (int g = 0; g < 2; ++g) {
        auto& v = g ? fine : coarse;
        const auto& s = *out[2 * p + g];
        if (want("energy"))
          for (auto& r : verify_energy_estimate(s)) v.push_back(r);
        if (want("order-reduction"))
          for (auto& r : verify_order_reduction(s)) v.push_back(r);
        if (want("swirl"))
          for (auto& r : verify_swirl_bounds(s)) v.push_back(r);
      }
      json rc = json::array(), rf = json::array();
      for (std::size_t k = 0; k < coarse.size(); ++k) {
        rc.push_back(report_json(coarse[k]));
        rf.push_back(report_json(fine[k]));
        const auto sum = summarize(coarse[k].name + "[" + presets[p] + "]", {coarse[k]}, {fine[k]});
        summaries.push_back(summary_json(sum));
        table.push_back(sum);
      }
      runs.push_back({{"preset", presets[p]}, {"coarse", rc}, {"fine", rf}});
    }
  }

  fs::create_directories(o.out_dir);
  const json doc = {{"suite", o.suite},
                    {"seed", o.seed},
                    {"samples", o.samples},
                    {"grids", {o.grids.coarse, o.grids.fine}},
                    {"measure", kMeasure},
                    {"summaries", summaries},
                    {"ensembles", ensembles},
                    {"runs", runs}};
  write_file(o.out_dir + "/reports.json", doc.dump(2) + "\n");
  std::string csv = "name,count,degenerate,max_ratio,median_ratio,coarse_max,fine_max,refinement_change\n";
  for (const auto& s : table) {
    csv += s.name + "," + std::to_string(s.count) + "," + std::to_string(s.degenerate);
    for (double v : {s.max_ratio, s.median_ratio, s.coarse_max, s.fine_max, s.refinement_change()})
      csv += "," + format_double(v);
    csv += "\n";
  }
  write_file(o.out_dir + "/summary.csv", csv);
  write_bench_plot(o.out_dir, summaries);
  return {o.out_dir, write_manifest(o.out_dir)};
}

void command_report(const std::string& in_dir, const std::string& format, std::ostream& out) {
  if (format != "csv" && format != "json" && format != "svg")
    throw ConfigError("unknown report format '" + format + "' (expected csv | json | svg)");
  const bool is_run = fs::exists(in_dir + "/summary.json");
  const bool is_bench = fs::exists(in_dir + "/reports.json");
  if (!is_run && !is_bench)
    throw FormatError("'" + in_dir + "' holds neither a simulate nor a bench result");
  try {
    if (is_run) {
      const json summary = json::parse(read_file(in_dir + "/summary.json"));
      if (format == "csv") {
        out << read_file(in_dir + "/diagnostics.csv");
      } else if (format == "json") {
        out << summary.dump(2) << "\n";
      } else {
        const std::vector<Row> rows = rows_from_csv(read_file(in_dir + "/diagnostics.csv"));
        write_run_plots(in_dir, rows, summary.at("fprop"));
        write_manifest(in_dir);
        out << in_dir << "/plots/x_of_t.svg\n" << in_dir << "/plots/criterion_ratio.svg\n";
      }
    } else {
      const json doc = json::parse(read_file(in_dir + "/reports.json"));
      if (format == "csv") {
        out << read_file(in_dir + "/summary.csv");
      } else if (format == "json") {
        out << doc.at("summaries").dump(2) << "\n";
      } else {
        write_bench_plot(in_dir, doc.at("summaries"));
        write_manifest(in_dir);
        out << in_dir << "/plots/ratios.svg\n";
      }
    }
  } catch (const json::exception& e) {
    throw FormatError("malformed report input in '" + in_dir + "': " + e.what());
  }
}

}  // namespace axicyl
