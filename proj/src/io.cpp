#include "axicyl/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "axicyl/config.hpp"
#include "axicyl/errors.hpp"

namespace axicyl {

namespace fs = std::filesystem;

namespace {

void append_le(std::string& out, const std::vector<double>& v) {
  const std::size_t off = out.size();
  out.resize(off + 8 * v.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    std::uint64_t bits = std::bit_cast<std::uint64_t>(v[k]);
    for (int b = 0; b < 8; ++b) out[off + 8 * k + b] = static_cast<char>((bits >> (8 * b)) & 0xffu);
  }
}

void read_le(const std::string& in, std::size_t off, std::vector<double>& v) {
  for (std::size_t k = 0; k < v.size(); ++k) {
    std::uint64_t bits = 0;
    for (int b = 0; b < 8; ++b)
      bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[off + 8 * k + b])) << (8 * b);
    v[k] = std::bit_cast<double>(bits);
  }
}

template <class T>
T header_value(const std::string& path, const std::string& line, const std::string& key) {
  const std::string prefix = key + " ";
  if (line.rfind(prefix, 0) != 0)
    throw FormatError(path + ": expected header entry '" + key + "', got '" + line + "'");
  const std::string v = line.substr(prefix.size());
  T x{};
  auto res = std::from_chars(v.data(), v.data() + v.size(), x);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size())
    throw FormatError(path + ": malformed value for '" + key + "': '" + v + "'");
  return x;
}

}  // namespace

void write_checkpoint(const FlowState& s, const std::string& path) {
  const auto& g = s.grid();
  std::ostringstream h;
  h << kCheckpointMagic << "\n"
    << "nr " << g.nr() << "\n"
    << "nz " << g.nz() << "\n"
    << "R " << format_double(g.R()) << "\n"
    << "a " << format_double(g.a()) << "\n"
    << "t " << format_double(s.t) << "\n"
    << "step " << s.step << "\n"
    << "fields u gamma\n"
    << "end\n";
  std::string out = h.str();
  append_le(out, s.u.values());
  append_le(out, s.gamma.values());
  write_file(path, out);
}

FlowState read_checkpoint(const std::string& path, const EllipticSolveSettings& settings) {
  const std::string in = read_file(path);
  std::size_t pos = 0;
  auto next_line = [&]() {
    const auto e = in.find('\n', pos);
    if (e == std::string::npos || e - pos > 256) throw FormatError(path + ": truncated header");
    std::string l = in.substr(pos, e - pos);
    pos = e + 1;
    return l;
  };
  if (next_line() != kCheckpointMagic) throw FormatError(path + ": bad magic (expected AXICYL1)");
  const int nr = header_value<int>(path, next_line(), "nr");
  const int nz = header_value<int>(path, next_line(), "nz");
  const double R = header_value<double>(path, next_line(), "R");
  const double a = header_value<double>(path, next_line(), "a");
  const double t = header_value<double>(path, next_line(), "t");
  const long step = header_value<long>(path, next_line(), "step");
  if (next_line() != "fields u gamma") throw FormatError(path + ": unexpected field list");
  if (next_line() != "end") throw FormatError(path + ": missing header terminator");
  if (nr < 8 || nz < 8 || nr > 1 << 14 || nz > 1 << 14 || !(R > 0.0) || !(a > 0.0))
    throw FormatError(path + ": implausible grid in header");
  const GridPtr g = build_grid(R, a, nr, nz);
  const std::size_t n = g->size();
  if (in.size() != pos + 16 * n)
    throw FormatError(path + ": payload has " + std::to_string(in.size() - pos) + " bytes, expected " +
                      std::to_string(16 * n));
  ScalarField u = make_swirl_field(g), gamma = make_gamma_field(g);
  read_le(in, pos, u.values());
  read_le(in, pos + 8 * n, gamma.values());
  for (double x : u.values())
    if (!std::isfinite(x)) throw FormatError(path + ": non-finite swirl value");
  for (double x : gamma.values())
    if (!std::isfinite(x)) throw FormatError(path + ": non-finite Gamma value");
  FlowState s;
  s.t = t;
  s.step = step;
  s.u = std::move(u);
  s.gamma = std::move(gamma);
  refresh(s, settings);
  const double div = divergence_residual(s.v_r, s.v_z);
  if (!(div <= 1e-9)) throw FormatError(path + ": rebuilt velocity fails the continuity check");
  return s;
}

std::string diagnostics_csv(const std::vector<Row>& rows) {
  std::string out;
  const auto& cols = csv_columns();
  for (std::size_t k = 0; k < cols.size(); ++k) out += (k ? "," : "") + cols[k];
  out += "\n";
  auto num = [&](double x) {
    out += ',';
    out += std::isfinite(x) ? format_double(x) : std::string("nan");
  };
  for (const auto& r : rows) {
    out += std::to_string(r.step);
    for (double x : {r.t, r.dt, r.energy, r.dissipation_cum, r.u_inf, r.vphi_inf, r.vphi_d,
                     r.phi_l2, r.gamma_l2, r.phi_V, r.gamma_V, r.X, r.I_abs})
      num(x);
    if (r.ratio_d)
      num(*r.ratio_d);
    else
      out += ",undefined";
    num(r.div_residual);
    num(r.energy_residual);
    for (int k = 0; k < 12; ++k) {
      if (r.D.tracked[k])
        num(r.D.value[k]);
      else
        out += ",untracked";
    }
    out += "\n";
  }
  return out;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw EvaluationError("SHA-256 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string s;
  for (unsigned i = 0; i < len; ++i) {
    s += hex[md[i] >> 4];
    s += hex[md[i] & 15];
  }
  return s;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw FormatError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  const fs::path tmp = p.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw FormatError("cannot write '" + tmp.string() + "'");
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw FormatError("write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, p);
}

std::vector<Artifact> write_manifest(const std::string& dir) {
  std::vector<Artifact> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    const std::string rel = fs::relative(e.path(), dir).generic_string();
    if (rel == "manifest.json") continue;
    files.push_back({rel, sha256_hex(read_file(e.path().string()))});
  }
  std::sort(files.begin(), files.end(), [](const Artifact& x, const Artifact& y) { return x.path < y.path; });
  nlohmann::json j = nlohmann::json::array();
  for (const auto& f : files) j.push_back({{"path", f.path}, {"sha256", f.sha256}});
  write_file((fs::path(dir) / "manifest.json").string(), nlohmann::json{{"files", j}}.dump(2) + "\n");
  return files;
}

}  // namespace axicyl
