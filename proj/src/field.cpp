#include "axicyl/field.hpp"

#include <algorithm>
#include <cmath>

#include "axicyl/errors.hpp"

namespace axicyl {

Parity flip(Parity p) { return p == Parity::Even ? Parity::Odd : Parity::Even; }

Parity product_parity(Parity a, Parity b) { return a == b ? Parity::Even : Parity::Odd; }

EdgeRule flip(EdgeRule e) {
  if (e == EdgeRule::Even) return EdgeRule::Odd;
  if (e == EdgeRule::Odd) return EdgeRule::Even;
  return EdgeRule::None;
}

EdgeRule product_edge(EdgeRule a, EdgeRule b) {
  if (a == EdgeRule::None || b == EdgeRule::None) return EdgeRule::None;
  return a == b ? EdgeRule::Even : EdgeRule::Odd;
}

EdgeRule sum_edge(EdgeRule a, EdgeRule b) { return a == b ? a : EdgeRule::None; }

ScalarField::ScalarField(GridPtr grid, Parity parity, EdgeRule edge, std::string label)
    : grid_(std::move(grid)), parity_(parity), edge_(edge), label_(std::move(label)) {
  if (!grid_) throw ContractError("field needs a grid");
  v_.assign(grid_->size(), 0.0);
}

ScalarField ScalarField::sample(GridPtr grid, const std::function<double(double, double)>& f,
                                Parity parity, EdgeRule edge, std::string label) {
  ScalarField out(grid, parity, edge, std::move(label));
  const auto& g = *grid;
  for (int i = 0; i <= g.nr(); ++i)
    for (int j = 0; j <= g.nz(); ++j) out(i, j) = f(g.r(i), g.z(j));
  out.enforce_symmetry();
  return out;
}

void ScalarField::enforce_symmetry() {
  const auto& g = *grid_;
  if (parity_ == Parity::Odd)
    for (int j = 0; j <= g.nz(); ++j) (*this)(0, j) = 0.0;
  if (edge_ == EdgeRule::Odd)
    for (int i = 0; i <= g.nr(); ++i) (*this)(i, 0) = (*this)(i, g.nz()) = 0.0;
}

void ScalarField::require_finite() const {
  for (std::size_t k = 0; k < v_.size(); ++k)
    if (!std::isfinite(v_[k]))
      throw EvaluationError("non-finite value in field '" + label_ + "' at node (" +
                            std::to_string(k / grid_->cols()) + ", " +
                            std::to_string(k % grid_->cols()) + ")");
}

double ScalarField::max_abs() const {
  double m = 0.0;
  for (double x : v_) m = std::max(m, std::abs(x));
  return m;
}

bool ScalarField::is_zero() const {
  return std::all_of(v_.begin(), v_.end(), [](double x) { return x == 0.0; });
}

namespace {

void require_same_grid(const ScalarField& a, const ScalarField& b) {
  if (a.grid_ptr() != b.grid_ptr() && !a.grid().same_shape(b.grid()))
    throw ContractError("fields live on different grids");
}

void require_same_parity(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a, b);
  if (a.parity() != b.parity())
    throw ContractError("parity mismatch adding '" + a.label() + "' and '" + b.label() + "'");
}

}  // namespace

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  require_same_parity(a, b);
  ScalarField out(a.grid_ptr(), a.parity(), sum_edge(a.edge(), b.edge()));
  for (std::size_t k = 0; k < a.size(); ++k) out.values()[k] = a.values()[k] + b.values()[k];
  return out;
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  require_same_parity(a, b);
  ScalarField out(a.grid_ptr(), a.parity(), sum_edge(a.edge(), b.edge()));
  for (std::size_t k = 0; k < a.size(); ++k) out.values()[k] = a.values()[k] - b.values()[k];
  return out;
}

ScalarField operator-(const ScalarField& a) { return -1.0 * a; }

ScalarField operator*(double s, const ScalarField& a) {
  ScalarField out(a.grid_ptr(), a.parity(), a.edge());
  for (std::size_t k = 0; k < a.size(); ++k) out.values()[k] = s * a.values()[k];
  return out;
}

ScalarField operator*(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a, b);
  ScalarField out(a.grid_ptr(), product_parity(a.parity(), b.parity()),
                  product_edge(a.edge(), b.edge()));
  for (std::size_t k = 0; k < a.size(); ++k) out.values()[k] = a.values()[k] * b.values()[k];
  return out;
}

void axpy(ScalarField& a, double s, const ScalarField& b) {
  require_same_parity(a, b);
  a.set_edge(sum_edge(a.edge(), b.edge()));
  for (std::size_t k = 0; k < a.size(); ++k) a.values()[k] += s * b.values()[k];
}

ScalarField square(const ScalarField& a) { return a * a; }

ScalarField times_r(const ScalarField& a) {
  const auto& g = a.grid();
  ScalarField out(a.grid_ptr(), flip(a.parity()), a.edge());
  for (int i = 0; i <= g.nr(); ++i)
    for (int j = 0; j <= g.nz(); ++j) out(i, j) = g.r(i) * a(i, j);
  return out;
}

double integrate(const ScalarField& f) { return integrate_values(f.grid(), f.values()); }

double integrate_weighted(const ScalarField& f, double radial_power) {
  return integrate_values(f.grid(), f.values(), f.grid().radial_power_weights(radial_power));
}

double lp_norm(const ScalarField& f, double p) { return lp_norm_values(f.grid(), f.values(), p); }

double boundary_trace_integral(const ScalarField& f, Edge segment, int power) {
  return trace_integral_values(f.grid(), f.values(), segment, power);
}

}  // namespace axicyl
