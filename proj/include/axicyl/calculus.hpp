#pragma once

#include "axicyl/field.hpp"

namespace axicyl {

enum class Direction { R, Z };

// Second-order centred differences; one-sided second order at r = R; at the
// axis the parity ghost f(-h) = +-f(h); at z = +-a the field's edge rule.
// Parity flips for R, edge rule flips for Z.
ScalarField derivative(const ScalarField& f, Direction d);

struct Vorticity {
  ScalarField r, phi, z;
};

Vorticity curl_axisym(const ScalarField& v_r, const ScalarField& v_phi, const ScalarField& v_z);

// f/r for an odd field; the axis value is the limit d f/dr at r = 0.
ScalarField over_r(const ScalarField& f);

// u/r^2 for a swirl-like field u ~ b1(z) r^2 near the axis; the axis value
// b1 comes from fitting b1 r^2 + b2 r^4 through the first two off-axis nodes.
ScalarField over_r2(const ScalarField& u);

// v_phi = u/r, odd, zero on the axis.
ScalarField swirl_velocity(const ScalarField& u);

// Phi = -(d u/dz)/r^2, even.
ScalarField phi_from_swirl(const ScalarField& u);

// Gamma = omega_phi/r, even.
ScalarField gamma_from_omega(const ScalarField& omega_phi);

// max over off-axis nodes of |d_r(r v_r) + d_z(r v_z)| / r.
double divergence_residual(const ScalarField& v_r, const ScalarField& v_z);

// Throws ContractError if u is not zero on the axis (relative 1e-12).
void require_zero_on_axis(const ScalarField& u, const char* what);

}  // namespace axicyl
