#include "axicyl/forcing.hpp"

#include <cmath>
#include <numbers>

#include "axicyl/errors.hpp"

namespace axicyl {

ScalarField Forcing::sample(const GridPtr& g, const Sampler& s, Parity p, double t,
                            const std::string& label) const {
  if (zero || !s) return ScalarField(g, p, EdgeRule::None, label);
  return ScalarField::sample(
      g, [&](double r, double z) { return s(r, z, t); }, p, EdgeRule::None, label);
}

Forcing no_forcing() {
  Forcing f;
  auto zero = [](double, double, double) { return 0.0; };
  f.f_r = f.f_phi = f.f_z = f.F_r = f.F_phi = f.F_z = f.Fbar_r = f.Fbar_phi = f.f0 = zero;
  return f;
}

Forcing swirl_drive_forcing(double R, double a, double B, double C) {
  using std::numbers::pi;
  Forcing f;
  f.id = "swirl-drive";
  f.zero = B == 0.0 && C == 0.0;
  auto w = [R](double r) { return 1.0 - (r / R) * (r / R); };
  auto c2 = [a](double z) {
    const double c = std::cos(pi * z / (2.0 * a));
    return c * c;
  };
  auto s1 = [a](double z) { return std::sin(pi * z / a); };
  f.f_phi = [=](double r, double z, double) { return B * r * w(r) * c2(z); };
  f.f_r = [=](double r, double z, double) {
    return -C * (a / pi) * r * w(r) * w(r) * std::cos(pi * z / a);
  };
  f.f_z = [](double, double, double) { return 0.0; };
  f.F_r = [=](double r, double z, double) { return B * r * w(r) * (pi / (2.0 * a)) * s1(z); };
  f.Fbar_r = [=](double r, double z, double) { return B * w(r) * (pi / (2.0 * a)) * s1(z); };
  f.F_z = [=](double r, double z, double) {
    return B * (2.0 - 4.0 * (r / R) * (r / R)) * c2(z);
  };
  f.F_phi = [=](double r, double z, double) { return C * r * w(r) * w(r) * s1(z); };
  f.Fbar_phi = [=](double r, double z, double) { return C * w(r) * w(r) * s1(z); };
  f.f0 = [=](double r, double z, double) { return B * r * r * w(r) * c2(z); };
  return f;
}

Forcing make_forcing(const std::string& id, const std::map<std::string, double>& params,
                     double R, double a) {
  auto get = [&](const char* k, double d) {
    auto it = params.find(k);
    return it == params.end() ? d : it->second;
  };
  if (id == "none") return no_forcing();
  if (id == "swirl-drive") return swirl_drive_forcing(R, a, get("swirl", 1.0), get("meridional", 1.0));
  throw ConfigError("unknown forcing preset '" + id + "' (expected none | swirl-drive)");
}

}  // namespace axicyl
