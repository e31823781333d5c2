#include "axicyl/calculus.hpp"

#include <algorithm>
#include <cmath>

#include "axicyl/errors.hpp"

namespace axicyl {

ScalarField derivative(const ScalarField& f, Direction d) {
  const auto& g = f.grid();
  if (d == Direction::R) {
    ScalarField out(f.grid_ptr(), flip(f.parity()), f.edge());
    kernels::derivative_r(g.rows(), g.cols(), g.hr(), f.parity(), f.data(), out.data());
    return out;
  }
  ScalarField out(f.grid_ptr(), f.parity(), flip(f.edge()));
  kernels::derivative_z(g.rows(), g.cols(), g.hz(), f.edge(), f.data(), out.data());
  return out;
}

ScalarField over_r(const ScalarField& f) {
  if (f.parity() != Parity::Odd)
    throw ContractError("division by r needs an odd field, got '" + f.label() + "'");
  const auto& g = f.grid();
  ScalarField out(f.grid_ptr(), Parity::Even, f.edge());
  for (int j = 0; j <= g.nz(); ++j) out(0, j) = f(1, j) / g.hr();
  for (int i = 1; i <= g.nr(); ++i)
    for (int j = 0; j <= g.nz(); ++j) out(i, j) = f(i, j) / g.r(i);
  return out;
}

void require_zero_on_axis(const ScalarField& u, const char* what) {
  const double tol = 1e-12 * std::max(u.max_abs(), 1e-300);
  for (int j = 0; j <= u.grid().nz(); ++j)
    if (std::abs(u(0, j)) > tol)
      throw ContractError(std::string(what) + ": field '" + u.label() +
                          "' must vanish on the axis, found " + std::to_string(u(0, j)) +
                          " at z=" + std::to_string(u.grid().z(j)));
}

ScalarField over_r2(const ScalarField& u) {
  require_zero_on_axis(u, "over_r2");
  const auto& g = u.grid();
  const double h2 = g.hr() * g.hr();
  ScalarField out(u.grid_ptr(), Parity::Even, u.edge());
  for (int j = 0; j <= g.nz(); ++j) out(0, j) = (16.0 * u(1, j) - u(2, j)) / (12.0 * h2);
  for (int i = 1; i <= g.nr(); ++i) {
    const double r2 = g.r(i) * g.r(i);
    for (int j = 0; j <= g.nz(); ++j) out(i, j) = u(i, j) / r2;
  }
  return out;
}

ScalarField swirl_velocity(const ScalarField& u) {
  require_zero_on_axis(u, "swirl_velocity");
  const auto& g = u.grid();
  ScalarField out(u.grid_ptr(), Parity::Odd, u.edge(), "v_phi");
  for (int i = 1; i <= g.nr(); ++i)
    for (int j = 0; j <= g.nz(); ++j) out(i, j) = u(i, j) / g.r(i);
  return out;
}

ScalarField phi_from_swirl(const ScalarField& u) {
  ScalarField phi = -derivative(over_r2(u), Direction::Z);
  phi.set_label("Phi");
  return phi;
}

ScalarField gamma_from_omega(const ScalarField& omega_phi) {
  if (omega_phi.parity() != Parity::Odd)
    throw ContractError("gamma_from_omega needs odd omega_phi");
  require_zero_on_axis(omega_phi, "gamma_from_omega");
  ScalarField gamma = over_r(omega_phi);
  gamma.set_label("Gamma");
  return gamma;
}

Vorticity curl_axisym(const ScalarField& v_r, const ScalarField& v_phi, const ScalarField& v_z) {
  if (v_r.parity() != Parity::Odd || v_phi.parity() != Parity::Odd ||
      v_z.parity() != Parity::Even)
    throw ContractError("curl_axisym expects parities (odd, odd, even)");
  Vorticity w;
  w.r = -derivative(v_phi, Direction::Z);
  w.phi = derivative(v_r, Direction::Z) - derivative(v_z, Direction::R);
  w.z = derivative(v_phi, Direction::R) + over_r(v_phi);
  w.r.set_label("omega_r");
  w.phi.set_label("omega_phi");
  w.z.set_label("omega_z");
  return w;
}

double divergence_residual(const ScalarField& v_r, const ScalarField& v_z) {
  const ScalarField div =
      derivative(times_r(v_r), Direction::R) + derivative(times_r(v_z), Direction::Z);
  const auto& g = v_r.grid();
  double m = 0.0;
  for (int i = 1; i <= g.nr(); ++i)
    for (int j = 0; j <= g.nz(); ++j) m = std::max(m, std::abs(div(i, j)) / g.r(i));
  return m;
}

}  // namespace axicyl
