#pragma once

#include <memory>
#include <string>
#include <vector>

#include "axicyl/field.hpp"
#include "axicyl/kernels.hpp"

namespace axicyl {

enum class Preconditioner { None, Diagonal, Separable };

Preconditioner parse_preconditioner(const std::string& s);

struct EllipticSolveSettings {
  double tolerance = 1e-10;
  int max_iterations = 0;  // 0 selects 20*(N_r + N_z)
  // Separable: exact fast solve (sine transform in z, tridiagonal in r) of the
  // same discrete operator, so CG converges in one or two iterations.
  Preconditioner preconditioner = Preconditioner::Separable;

  void validate() const;
  int iterations_for(const CylinderGrid& g) const;
};

struct SolveInfo {
  int iterations = 0;
  double residual = 0.0;  // final relative residual ||Wb - Kx|| / ||Wb||
};

enum class OperatorKind {
  // -(1/r^3)(r^3 f_r)_r - f_zz, Neumann at the axis, Dirichlet on S.
  Psi1,
  // -(1/r)(r f_r)_r + f/r^2 - f_zz, Dirichlet at the axis and on S.
  Psi,
};

// Finite-volume discretisation of the two stream-function operators. Rows
// [i0, i1] x columns [1, N_z - 1] are unknowns; every other node is fixed at
// zero. With control volumes V_i = integral of r^k dr over the node's radial
// cell, K = diag(V_i h_z) A is symmetric positive definite.
class EllipticSystem {
public:
  EllipticSystem(GridPtr grid, OperatorKind kind);
  ~EllipticSystem();
  EllipticSystem(const EllipticSystem&) = delete;
  EllipticSystem& operator=(const EllipticSystem&) = delete;

  const CylinderGrid& grid() const { return *grid_; }
  OperatorKind kind() const { return kind_; }
  // Radial part of -A as a three-point stencil (the evolution module reuses it
  // for diffusion).
  const kernels::RadialStencil& stencil() const { return stencil_; }
  const std::vector<double>& volumes() const { return vol_; }
  int first_row() const { return stencil_.i0; }
  int last_row() const { return stencil_.i1; }
  bool is_unknown(int i, int j) const;

  // y = A x on unknown nodes, 0 elsewhere.
  void apply(const double* x, double* y) const;
  // y = K x = diag(V h_z) A x.
  void apply_spd(const double* x, double* y) const;
  double spd_weight(int i) const { return vol_[i] * grid_->hz(); }
  // z = K^{-1} r (exact up to rounding).
  void separable_solve(const double* r, double* z) const;

  std::vector<double> solve(const std::vector<double>& rhs, const EllipticSolveSettings& s,
                            SolveInfo* info) const;

private:
  GridPtr grid_;
  OperatorKind kind_;
  kernels::RadialStencil stencil_;
  std::vector<double> vol_;
  std::vector<double> mu_;       // eigenvalues of the z second difference
  std::vector<double> cprime_;   // Thomas factors per mode, [k][row]
  std::vector<double> dinv_;
  void* plan_ = nullptr;
  int n_ = 0, howmany_ = 0;
};

// Shared system for a grid shape; thread-safe.
std::shared_ptr<const EllipticSystem> elliptic_system(const GridPtr& grid, OperatorKind kind);

ScalarField solve_psi1(const ScalarField& gamma, const EllipticSolveSettings& settings = {},
                       SolveInfo* info = nullptr);
ScalarField solve_psi(const ScalarField& omega_phi, const EllipticSolveSettings& settings = {},
                      SolveInfo* info = nullptr);

// Discrete operator applied to a field (values on fixed nodes ignored).
ScalarField apply_psi1_operator(const ScalarField& psi1);
ScalarField apply_psi_operator(const ScalarField& psi);

struct MeridionalVelocity {
  ScalarField r, z;
};

// v_r = -r d_z psi1, v_z = (1/r) d_r(r^2 psi1) (= r d_r psi1 + 2 psi1), with the
// axis value v_z = 2 psi1. Both are built from the shared stencils so the
// discrete continuity residual vanishes to rounding.
MeridionalVelocity velocity_from_psi1(const ScalarField& psi1);

}  // namespace axicyl
