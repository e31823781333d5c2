#pragma once

#include "axicyl/calculus.hpp"
#include "axicyl/elliptic.hpp"

namespace axicyl {

// One time slice. The unknowns are the swirl u = r v_phi and Gamma; psi1 and
// every other member are derived by refresh().
//
// u is stored as an even field pinned to zero on the axis (u ~ b1(z) r^2), with
// the even edge rule at z = +-a, which makes the discrete u_z vanish there.
struct FlowState {
  double t = 0.0;
  long step = 0;
  ScalarField u, gamma;
  ScalarField psi1, v_r, v_phi, v_z, vphi_over_r, phi;
  SolveInfo solve;

  const CylinderGrid& grid() const { return u.grid(); }
  const GridPtr& grid_ptr() const { return u.grid_ptr(); }
};

ScalarField make_swirl_field(const GridPtr& g);
ScalarField make_gamma_field(const GridPtr& g);

// u = 0 at r = 0 and r = R; Gamma = 0 on r = R and z = +-a.
void enforce_boundary_conditions(ScalarField& u, ScalarField& gamma);

// Re-solve psi1 from Gamma and rebuild velocities and Phi.
void refresh(FlowState& s, const EllipticSolveSettings& settings);

FlowState make_state(ScalarField u, ScalarField gamma, double t,
                     const EllipticSolveSettings& settings);

Vorticity vorticity(const FlowState& s);

}  // namespace axicyl
