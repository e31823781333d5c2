#include "axicyl/flow_state.hpp"

#include "axicyl/errors.hpp"

namespace axicyl {

ScalarField make_swirl_field(const GridPtr& g) {
  return ScalarField(g, Parity::Even, EdgeRule::Even, "u");
}

ScalarField make_gamma_field(const GridPtr& g) {
  return ScalarField(g, Parity::Even, EdgeRule::None, "Gamma");
}

void enforce_boundary_conditions(ScalarField& u, ScalarField& gamma) {
  const auto& g = u.grid();
  const int N = g.nr(), M = g.nz();
  for (int j = 0; j <= M; ++j) {
    u(0, j) = 0.0;
    u(N, j) = 0.0;
    gamma(N, j) = 0.0;
  }
  for (int i = 0; i <= N; ++i) gamma(i, 0) = gamma(i, M) = 0.0;
}

void refresh(FlowState& s, const EllipticSolveSettings& settings) {
  s.psi1 = solve_psi1(s.gamma, settings, &s.solve);
  auto v = velocity_from_psi1(s.psi1);
  s.v_r = std::move(v.r);
  s.v_z = std::move(v.z);
  s.v_phi = swirl_velocity(s.u);
  s.vphi_over_r = over_r2(s.u);
  s.vphi_over_r.set_label("v_phi/r");
  s.phi = -derivative(s.vphi_over_r, Direction::Z);
  s.phi.set_label("Phi");
}

FlowState make_state(ScalarField u, ScalarField gamma, double t,
                     const EllipticSolveSettings& settings) {
  if (u.parity() != Parity::Even || gamma.parity() != Parity::Even)
    throw ContractError("make_state expects u and Gamma stored as even fields");
  FlowState s;
  s.t = t;
  s.u = std::move(u);
  s.gamma = std::move(gamma);
  s.u.set_label("u").set_edge(EdgeRule::Even);
  s.gamma.set_label("Gamma").set_edge(EdgeRule::None);
  enforce_boundary_conditions(s.u, s.gamma);
  refresh(s, settings);
  return s;
}

Vorticity vorticity(const FlowState& s) { return curl_axisym(s.v_r, s.v_phi, s.v_z); }

}  // namespace axicyl
