#pragma once

#include <functional>
#include <map>
#include <string>

#include "axicyl/field.hpp"

namespace axicyl {

using Sampler = std::function<double(double r, double z, double t)>;

// Body force f = (f_r, f_phi, f_z) with closed-form derived quantities:
// F = curl f, Fbar = F/r and the swirl source f0 = r f_phi.
struct Forcing {
  std::string id = "none";
  bool zero = true;
  Sampler f_r, f_phi, f_z;
  Sampler F_r, F_phi, F_z;
  Sampler Fbar_r, Fbar_phi;
  Sampler f0;

  ScalarField sample(const GridPtr& g, const Sampler& s, Parity p, double t,
                     const std::string& label) const;
};

Forcing no_forcing();

// f_phi = B r (1-(r/R)^2) cos^2(pi z/2a), f_r = -C (a/pi) r (1-(r/R)^2)^2 cos(pi z/a),
// f_z = 0. f_phi vanishes at r = R and Fbar_phi vanishes on the whole boundary.
Forcing swirl_drive_forcing(double R, double a, double B, double C);

Forcing make_forcing(const std::string& id, const std::map<std::string, double>& params,
                     double R, double a);

}  // namespace axicyl
