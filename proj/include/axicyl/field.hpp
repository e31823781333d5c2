#pragma once

#include <functional>
#include <string>
#include <vector>

#include "axicyl/geometry.hpp"
#include "axicyl/kernels.hpp"

namespace axicyl {

using Parity = kernels::AxisParity;
using EdgeRule = kernels::EdgeRule;

Parity flip(Parity p);
Parity product_parity(Parity a, Parity b);
EdgeRule flip(EdgeRule e);
EdgeRule product_edge(EdgeRule a, EdgeRule b);
EdgeRule sum_edge(EdgeRule a, EdgeRule b);

// Grid-sampled axisymmetric scalar. Parity describes behaviour under r -> -r
// at the axis; the edge rule describes reflection at z = +-a and selects the
// derivative stencil there. Odd fields are exactly zero on the axis, odd-edge
// fields exactly zero on z = +-a.
class ScalarField {
public:
  ScalarField() = default;
  ScalarField(GridPtr grid, Parity parity, EdgeRule edge = EdgeRule::None,
              std::string label = {});

  static ScalarField sample(GridPtr grid, const std::function<double(double, double)>& f,
                            Parity parity, EdgeRule edge = EdgeRule::None,
                            std::string label = {});

  const CylinderGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  Parity parity() const { return parity_; }
  EdgeRule edge() const { return edge_; }
  const std::string& label() const { return label_; }
  ScalarField& set_label(std::string l) {
    label_ = std::move(l);
    return *this;
  }
  ScalarField& set_edge(EdgeRule e) {
    edge_ = e;
    return *this;
  }

  std::vector<double>& values() { return v_; }
  const std::vector<double>& values() const { return v_; }
  double& operator()(int i, int j) { return v_[grid_->index(i, j)]; }
  double operator()(int i, int j) const { return v_[grid_->index(i, j)]; }
  double* data() { return v_.data(); }
  const double* data() const { return v_.data(); }
  std::size_t size() const { return v_.size(); }

  // Zero the axis row for odd fields and the z-edge rows for odd-edge fields.
  void enforce_symmetry();
  void require_finite() const;
  double max_abs() const;
  bool is_zero() const;

private:
  GridPtr grid_;
  std::vector<double> v_;
  Parity parity_ = Parity::Even;
  EdgeRule edge_ = EdgeRule::None;
  std::string label_;
};

ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a);
ScalarField operator*(double s, const ScalarField& a);
ScalarField operator*(const ScalarField& a, const ScalarField& b);
// a + s*b without a temporary.
void axpy(ScalarField& a, double s, const ScalarField& b);
// Pointwise square.
ScalarField square(const ScalarField& a);
ScalarField times_r(const ScalarField& a);

double integrate(const ScalarField& f);
double integrate_weighted(const ScalarField& f, double radial_power);
double lp_norm(const ScalarField& f, double p);
double boundary_trace_integral(const ScalarField& f, Edge segment, int power);

}  // namespace axicyl
