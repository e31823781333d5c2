#include "axicyl/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "axicyl/errors.hpp"
#include "axicyl/kernels.hpp"

namespace axicyl {

Edge parse_edge(const std::string& name) {
  if (name == "r=0" || name == "axis") return Edge::Axis;
  if (name == "r=R" || name == "wall") return Edge::Wall;
  if (name == "z=-a" || name == "bottom") return Edge::Bottom;
  if (name == "z=+a" || name == "z=a" || name == "top") return Edge::Top;
  throw ConfigError("unknown boundary segment '" + name + "'");
}

std::string edge_name(Edge e) {
  switch (e) {
    case Edge::Axis: return "r=0";
    case Edge::Wall: return "r=R";
    case Edge::Bottom: return "z=-a";
    case Edge::Top: return "z=+a";
  }
  return "?";
}

CylinderGrid::CylinderGrid(double R, double a, int nr, int nz)
    : R_(R), a_(a), nr_(nr), nz_(nz) {
  if (!(R > 0.0) || !(a > 0.0) || !std::isfinite(R) || !std::isfinite(a))
    throw ConfigError("grid dimensions must be positive: R=" + std::to_string(R) +
                      ", a=" + std::to_string(a));
  if (nr < 8 || nz < 8)
    throw ConfigError("grid needs at least 8 cells per direction: N_r=" + std::to_string(nr) +
                      ", N_z=" + std::to_string(nz));
  hr_ = R / nr;
  hz_ = 2.0 * a / nz;
  r_.resize(nr + 1);
  z_.resize(nz + 1);
  for (int i = 0; i <= nr; ++i) r_[i] = i * hr_;
  for (int j = 0; j <= nz; ++j) z_[j] = -a + j * hz_;
  r_[nr] = R;
  z_[nz] = a;

  rw_.resize(nr + 1);
  rw_[0] = hr_ * hr_ / 6.0;
  for (int i = 1; i < nr; ++i) rw_[i] = r_[i] * hr_;
  rw_[nr] = R * hr_ / 2.0 - hr_ * hr_ / 6.0;

  zw_.assign(nz + 1, hz_);
  zw_[0] = zw_[nz] = hz_ / 2.0;
}

std::vector<double> CylinderGrid::radial_power_weights(double k) const {
  if (k == 0.0) return rw_;
  if (!(k > -2.0)) throw ConfigError("radial weight exponent must exceed -2");
  const double m = 1.0 + k;
  auto P = [m](double x) { return x > 0 ? std::pow(x, m + 1) / (m + 1) : 0.0; };
  auto Q = [m](double x) { return x > 0 ? std::pow(x, m + 2) / (m + 2) : 0.0; };
  std::vector<double> w(nr_ + 1, 0.0);
  for (int i = 0; i <= nr_; ++i) {
    if (i > 0) {
      const double l = r_[i - 1], c = r_[i];
      w[i] += (Q(c) - Q(l) - l * (P(c) - P(l))) / hr_;
    }
    if (i < nr_) {
      const double c = r_[i], u = r_[i + 1];
      w[i] += (u * (P(u) - P(c)) - (Q(u) - Q(c))) / hr_;
    }
  }
  return w;
}

std::string CylinderGrid::describe() const {
  return std::to_string(nr_) + "x" + std::to_string(nz_);
}

bool CylinderGrid::same_shape(const CylinderGrid& o) const {
  return nr_ == o.nr_ && nz_ == o.nz_ && R_ == o.R_ && a_ == o.a_;
}

GridPtr build_grid(double R, double a, int nr, int nz) {
  return std::make_shared<const CylinderGrid>(R, a, nr, nz);
}

namespace {

void check_finite(const CylinderGrid& g, std::span<const double> v) {
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!std::isfinite(v[k])) {
      const int i = static_cast<int>(k / g.cols()), j = static_cast<int>(k % g.cols());
      throw EvaluationError("non-finite sample at node (" + std::to_string(i) + ", " +
                            std::to_string(j) + "), r=" + std::to_string(g.r(i)) +
                            " z=" + std::to_string(g.z(j)));
    }
  }
}

}  // namespace

double integrate_values(const CylinderGrid& g, std::span<const double> v) {
  return integrate_values(g, v, g.radial_weights());
}

double integrate_values(const CylinderGrid& g, std::span<const double> v,
                        const std::vector<double>& radial_weights) {
  if (v.size() != g.size()) throw ContractError("field size does not match grid");
  check_finite(g, v);
  return kernels::weighted_sum(g.rows(), g.cols(), radial_weights.data(),
                               g.axial_weights().data(), v.data());
}

double lp_norm_values(const CylinderGrid& g, std::span<const double> v, double p) {
  if (!(p >= 1.0)) throw ConfigError("Lebesgue exponent must be >= 1, got " + std::to_string(p));
  if (v.size() != g.size()) throw ContractError("field size does not match grid");
  check_finite(g, v);
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  if (std::isinf(p) || m == 0.0) return m;
  return m * std::pow(kernels::weighted_power_sum(g.rows(), g.cols(), g.radial_weights().data(),
                                                  g.axial_weights().data(), v.data(), p, m),
                      1.0 / p);
}

double trace_integral_values(const CylinderGrid& g, std::span<const double> v, Edge e,
                             int power) {
  if (power < 1) throw ConfigError("trace power must be a positive integer");
  if (v.size() != g.size()) throw ContractError("field size does not match grid");
  check_finite(g, v);
  double s = 0.0;
  switch (e) {
    case Edge::Axis:
    case Edge::Wall: {
      const int i = e == Edge::Axis ? 0 : g.nr();
      for (int j = 0; j <= g.nz(); ++j)
        s += g.axial_weights()[j] * std::pow(v[g.index(i, j)], power);
      break;
    }
    case Edge::Bottom:
    case Edge::Top: {
      const int j = e == Edge::Bottom ? 0 : g.nz();
      for (int i = 0; i <= g.nr(); ++i)
        s += g.radial_weights()[i] * std::pow(v[g.index(i, j)], power);
      break;
    }
  }
  return s;
}

}  // namespace axicyl
