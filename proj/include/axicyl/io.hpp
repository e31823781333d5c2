#pragma once

#include <string>
#include <vector>

#include "axicyl/diagnostics.hpp"
#include "axicyl/flow_state.hpp"

namespace axicyl {

inline constexpr const char* kCheckpointMagic = "AXICYL1";

// Text header (magic, grid, R, a, t, step, field list, "end") followed by the
// row-major little-endian float64 arrays of u and Gamma.
void write_checkpoint(const FlowState& s, const std::string& path);

// Derived fields are rebuilt with the elliptic solve; the rebuilt state must
// satisfy the discrete continuity check. Throws FormatError on any header,
// size or truncation problem.
FlowState read_checkpoint(const std::string& path, const EllipticSolveSettings& settings = {});

// Diagnostics CSV in the fixed column order of csv_columns().
std::string diagnostics_csv(const std::vector<Row>& rows);

std::string sha256_hex(const std::string& bytes);
std::string read_file(const std::string& path);
// Writes atomically (temporary file, then rename).
void write_file(const std::string& path, const std::string& bytes);

struct Artifact {
  std::string path;  // relative to the output directory
  std::string sha256;
};

// Lists every regular file under dir except the manifest itself, sorted by
// path, and writes manifest.json.
std::vector<Artifact> write_manifest(const std::string& dir);

}  // namespace axicyl
