#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "axicyl/bench.hpp"
#include "axicyl/io.hpp"

namespace axicyl {

struct RunArtifacts {
  std::string out_dir;
  std::vector<Artifact> files;  // every emitted file with its digest
};

// Runs the configured simulation into out_dir: config echo, diagnostics.csv,
// summary.json, checkpoints (with diagnostics sidecars) every output_every
// steps, plots and manifest.json. With restart, continues from the given
// checkpoint. On failure a failure.json and the partial outputs are kept and
// the error is rethrown.
RunArtifacts command_simulate(const std::string& config_path, const std::string& out_dir,
                              const std::optional<std::string>& restart = std::nullopt);

struct BenchOptions {
  std::string suite = "all";
  std::uint64_t seed = 0;
  int samples = 50;
  GridPair grids;
  std::string out_dir;
};

const std::vector<std::string>& bench_suites();

RunArtifacts command_bench(const BenchOptions& o);

// Re-emits a run or bench directory as csv, json or svg (plots are written
// into the directory and the manifest refreshed). Output goes to `out`.
void command_report(const std::string& in_dir, const std::string& format, std::ostream& out);

}  // namespace axicyl
