#include "axicyl/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "axicyl/errors.hpp"

namespace axicyl {

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

BootstrapCheck bootstrap_check(const AnalysisParams& a) {
  BootstrapCheck b;
  b.theta = a.theta();
  b.half_eps = 0.5 * a.eps();
  b.eps2_bound = a.eps1 * (a.d - 6.0) / (a.d + 6.0);
  b.theta_exceeds_half_eps = b.theta > b.half_eps;
  b.eps2_below_bound = a.eps2 < b.eps2_bound;
  return b;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  double x = 0.0;
  auto res = std::from_chars(v.data(), v.data() + v.size(), x);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size())
    throw ConfigError("key '" + key + "': expected a number, got '" + v + "'");
  return x;
}

long to_long(const std::string& key, const std::string& v) {
  long x = 0;
  auto res = std::from_chars(v.data(), v.data() + v.size(), x);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size())
    throw ConfigError("key '" + key + "': expected an integer, got '" + v + "'");
  return x;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw ConfigError("key '" + key + "': expected true or false, got '" + v + "'");
}

using Setter = std::function<void(SimConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  auto num = [](double SimConfig::*m) {
    return [m](SimConfig& c, const std::string& k, const std::string& v) { c.*m = to_double(k, v); };
  };
  auto ana = [](double AnalysisParams::*m) {
    return [m](SimConfig& c, const std::string& k, const std::string& v) {
      c.analysis.*m = to_double(k, v);
    };
  };
  auto ini = [](double InitialSpec::*m) {
    return [m](SimConfig& c, const std::string& k, const std::string& v) {
      c.initial.*m = to_double(k, v);
    };
  };
  auto force = [](const char* name) {
    return [name](SimConfig& c, const std::string& k, const std::string& v) {
      c.forcing.params[name] = to_double(k, v);
    };
  };
  static const std::map<std::string, Setter> m = {
      {"nu", num(&SimConfig::nu)},
      {"R", num(&SimConfig::R)},
      {"a", num(&SimConfig::a)},
      {"nr", [](SimConfig& c, const std::string& k, const std::string& v) { c.nr = int(to_long(k, v)); }},
      {"nz", [](SimConfig& c, const std::string& k, const std::string& v) { c.nz = int(to_long(k, v)); }},
      {"cfl_advective", num(&SimConfig::cfl_advective)},
      {"cfl_diffusive", num(&SimConfig::cfl_diffusive)},
      {"t_end", num(&SimConfig::t_end)},
      {"output_every",
       [](SimConfig& c, const std::string& k, const std::string& v) { c.output_every = to_long(k, v); }},
      {"seed",
       [](SimConfig& c, const std::string& k, const std::string& v) {
         const long s = to_long(k, v);
         if (s < 0) throw ConfigError("key 'seed': must be non-negative");
         c.seed = static_cast<std::uint64_t>(s);
       }},
      {"initial.id", [](SimConfig& c, const std::string&, const std::string& v) { c.initial.id = v; }},
      {"initial.swirl_amplitude", ini(&InitialSpec::swirl_amplitude)},
      {"initial.gamma_amplitude", ini(&InitialSpec::gamma_amplitude)},
      {"initial.perturbation", ini(&InitialSpec::perturbation)},
      {"forcing.id", [](SimConfig& c, const std::string&, const std::string& v) { c.forcing.id = v; }},
      {"forcing.swirl", force("swirl")},
      {"forcing.meridional", force("meridional")},
      {"analysis.delta", ana(&AnalysisParams::delta)},
      {"analysis.d", ana(&AnalysisParams::d)},
      {"analysis.s", ana(&AnalysisParams::s)},
      {"analysis.eps1", ana(&AnalysisParams::eps1)},
      {"analysis.eps2", ana(&AnalysisParams::eps2)},
      {"analysis.mu", ana(&AnalysisParams::mu)},
      {"analysis.c0", ana(&AnalysisParams::c0)},
      {"analysis.check_interaction_exponents",
       [](SimConfig& c, const std::string& k, const std::string& v) {
         c.analysis.check_interaction_exponents = to_bool(k, v);
       }},
      {"elliptic.tolerance",
       [](SimConfig& c, const std::string& k, const std::string& v) { c.elliptic.tolerance = to_double(k, v); }},
      {"elliptic.max_iterations",
       [](SimConfig& c, const std::string& k, const std::string& v) {
         c.elliptic.max_iterations = int(to_long(k, v));
       }},
      {"elliptic.preconditioner",
       [](SimConfig& c, const std::string&, const std::string& v) {
         c.elliptic.preconditioner = parse_preconditioner(v);
       }},
  };
  return m;
}

std::string preconditioner_name(Preconditioner p) {
  switch (p) {
    case Preconditioner::None: return "none";
    case Preconditioner::Diagonal: return "diagonal";
    case Preconditioner::Separable: return "separable";
  }
  return "separable";
}

}  // namespace

SimConfig parse_config_text(const std::string& text, const std::string& origin) {
  SimConfig c;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = origin + ":" + std::to_string(lineno) + ": ";
    if (eq == std::string::npos) throw ConfigError(where + "expected key = value");
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (value.empty()) throw ConfigError(where + "key '" + key + "' has no value");
    if (!seen.insert(key).second) throw ConfigError(where + "key '" + key + "' repeated");
    try {
      if (key == "schema_version") {
        const long v = to_long(key, value);
        if (v != kSchemaVersion)
          throw ConfigError("schema_version " + value + " is not supported (expected " +
                            std::to_string(kSchemaVersion) + ")");
        continue;
      }
      auto it = setters().find(key);
      if (it == setters().end()) throw ConfigError("unknown key '" + key + "'");
      it->second(c, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
  }
  for (const char* k : {"schema_version", "nu", "t_end"})
    if (!seen.count(k)) throw ConfigError(origin + ": missing required key '" + k + "'");
  c.validate();
  return c;
}

SimConfig parse_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str(), path);
}

std::string echo_config(const SimConfig& c) {
  std::ostringstream o;
  auto kv = [&](const std::string& k, const std::string& v) { o << k << " = " << v << "\n"; };
  auto d = [&](const std::string& k, double v) { kv(k, format_double(v)); };
  kv("schema_version", std::to_string(kSchemaVersion));
  d("nu", c.nu);
  d("R", c.R);
  d("a", c.a);
  kv("nr", std::to_string(c.nr));
  kv("nz", std::to_string(c.nz));
  d("cfl_advective", c.cfl_advective);
  d("cfl_diffusive", c.cfl_diffusive);
  d("t_end", c.t_end);
  kv("output_every", std::to_string(c.output_every));
  kv("seed", std::to_string(c.seed));
  kv("initial.id", c.initial.id);
  d("initial.swirl_amplitude", c.initial.swirl_amplitude);
  d("initial.gamma_amplitude", c.initial.gamma_amplitude);
  d("initial.perturbation", c.initial.perturbation);
  kv("forcing.id", c.forcing.id);
  for (const auto& [k, v] : c.forcing.params) d("forcing." + k, v);
  d("analysis.delta", c.analysis.delta);
  d("analysis.d", c.analysis.d);
  d("analysis.s", c.analysis.s);
  d("analysis.eps1", c.analysis.eps1);
  d("analysis.eps2", c.analysis.eps2);
  d("analysis.mu", c.analysis.mu);
  d("analysis.c0", c.analysis.c0);
  kv("analysis.check_interaction_exponents", c.analysis.check_interaction_exponents ? "true" : "false");
  d("elliptic.tolerance", c.elliptic.tolerance);
  kv("elliptic.max_iterations", std::to_string(c.elliptic.max_iterations));
  kv("elliptic.preconditioner", preconditioner_name(c.elliptic.preconditioner));
  const auto b = bootstrap_check(c.analysis);
  o << "# theta = " << format_double(b.theta) << ", eps/2 = " << format_double(b.half_eps)
    << ", eps1 (d-6)/(d+6) = " << format_double(b.eps2_bound) << "\n";
  return o.str();
}

}  // namespace axicyl
