#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace axicyl {

// The four edges of the meridian rectangle (0,R) x (-a,a).
enum class Edge { Axis, Wall, Bottom, Top };

Edge parse_edge(const std::string& name);
std::string edge_name(Edge e);

// Node-centred uniform grid on the meridian section, axis and boundary nodes
// included. Node (i, j) sits at r = i*h_r, z = -a + j*h_z and is stored at
// index i*(N_z+1) + j. Integrals carry the measure r dr dz; the angular factor
// 2*pi is omitted everywhere.
class CylinderGrid {
public:
  CylinderGrid(double R, double a, int nr, int nz);

  double R() const { return R_; }
  double a() const { return a_; }
  int nr() const { return nr_; }
  int nz() const { return nz_; }
  double hr() const { return hr_; }
  double hz() const { return hz_; }
  int rows() const { return nr_ + 1; }
  int cols() const { return nz_ + 1; }
  std::size_t size() const { return static_cast<std::size_t>(rows()) * cols(); }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * cols() + j; }

  double r(int i) const { return r_[i]; }
  double z(int j) const { return z_[j]; }
  const std::vector<double>& r_nodes() const { return r_; }
  const std::vector<double>& z_nodes() const { return z_; }

  // Radial weights integrate the piecewise-linear interpolant against r dr
  // exactly; axial weights are the trapezoid rule.
  const std::vector<double>& radial_weights() const { return rw_; }
  const std::vector<double>& axial_weights() const { return zw_; }
  double weight(int i, int j) const { return rw_[i] * zw_[j]; }

  // Weights for the measure r^(1+k) dr, exact for the piecewise-linear
  // interpolant; k > -2 so the axis hat stays integrable.
  std::vector<double> radial_power_weights(double k) const;

  std::string describe() const;
  bool same_shape(const CylinderGrid& o) const;

private:
  double R_, a_;
  int nr_, nz_;
  double hr_, hz_;
  std::vector<double> r_, z_, rw_, zw_;
};

using GridPtr = std::shared_ptr<const CylinderGrid>;

GridPtr build_grid(double R, double a, int nr, int nz);

// Array-level quadrature; ScalarField wrappers live in field.hpp.
double integrate_values(const CylinderGrid& g, std::span<const double> v);
double integrate_values(const CylinderGrid& g, std::span<const double> v,
                        const std::vector<double>& radial_weights);
double lp_norm_values(const CylinderGrid& g, std::span<const double> v, double p);
double trace_integral_values(const CylinderGrid& g, std::span<const double> v, Edge e,
                             int power);

}  // namespace axicyl
