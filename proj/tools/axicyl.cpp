// Command-line front end: simulate, bench, report.

#include <CLI11.hpp>
#include <iostream>

#include "axicyl/commands.hpp"
#include "axicyl/errors.hpp"
#include "axicyl/kernels.hpp"

namespace {

axicyl::GridPair parse_grids(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw axicyl::ConfigError("--grids expects <coarse>,<fine>");
  try {
    return {std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1))};
  } catch (const std::exception&) {
    throw axicyl::ConfigError("--grids expects two integers, got '" + s + "'");
  }
}

void print_artifacts(const axicyl::RunArtifacts& a) {
  for (const auto& f : a.files) std::cout << f.sha256 << "  " << a.out_dir << "/" << f.path << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Axisymmetric Navier-Stokes solver and regularity-functional bench"};
  app.require_subcommand(1);

  std::string config, out, restart;
  auto* sim = app.add_subcommand("simulate", "integrate a configured run and record diagnostics");
  sim->add_option("--config", config, "configuration file")->required();
  sim->add_option("--out", out, "output directory")->required();
  sim->add_option("--restart", restart, "continue from this checkpoint");

  axicyl::BenchOptions bo;
  std::string grids = "32,64";
  auto* bench = app.add_subcommand("bench", "measure inequality ratios over random ensembles and runs");
  bench->add_option("--suite", bo.suite, "suite id")->required();
  bench->add_option("--seed", bo.seed, "ensemble seed")->required();
  bench->add_option("--samples", bo.samples, "samples per ensemble")->required();
  bench->add_option("--grids", grids, "coarse,fine grid sizes")->required();
  bench->add_option("--out", bo.out_dir, "output directory")->required();

  std::string in, format;
  auto* report = app.add_subcommand("report", "re-emit a result directory");
  report->add_option("--in", in, "simulate or bench output directory")->required();
  report->add_option("--format", format, "csv | json | svg")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    axicyl::kernels::apply_thread_cap();
    if (*sim) {
      print_artifacts(axicyl::command_simulate(
          config, out, restart.empty() ? std::nullopt : std::optional<std::string>(restart)));
    } else if (*bench) {
      bo.grids = parse_grids(grids);
      print_artifacts(axicyl::command_bench(bo));
    } else if (*report) {
      axicyl::command_report(in, format, std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "axicyl: " << e.what() << "\n";
    return axicyl::exit_code_for(e);
  }
  return 0;
}
