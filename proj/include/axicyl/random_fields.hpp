#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "axicyl/field.hpp"

namespace axicyl {

// Seeded generator for one ensemble sample; samples are independent of the
// order in which they are drawn.
std::mt19937_64 sample_rng(std::uint64_t seed, std::uint64_t sample);

// Smooth axisymmetric field w(rho) P(rho^2) Z(z) with rho = r/R, a random
// quadratic P and a random trigonometric Z of at most four wavenumbers. The
// closed form is kept so derivatives can be checked analytically.
struct RandomField {
  // (1-rho^2), (1-rho^2)^2, or (1-(rho/0.8)^2)^3 cut off at 0.8 R.
  enum class Radial { Wall, Wall2, Cutoff };
  // Constant plus cos(k pi (z+a)/2a) (even reflection at z = +-a), or
  // sin(k pi (z+a)/2a) (odd reflection).
  enum class Axial { Cosine, Sine };
  Radial radial = Radial::Wall2;
  Axial axial = Axial::Cosine;
  double R = 1.0, a = 1.0;
  std::array<double, 3> b{};  // P = b0 + b1 rho^2 + b2 rho^4
  std::array<double, 5> c{};  // c[0] constant (cosine only), c[k] mode k

  double operator()(double r, double z) const;
  ScalarField sample(const GridPtr& g) const;
};

RandomField random_field(std::mt19937_64& rng, RandomField::Radial radial,
                         RandomField::Axial axial, double R, double a);

// Gamma-type input for the psi1 estimates: (1-rho^2) P(rho^2) times sine
// modes, so it is even in r and vanishes on the whole boundary.
RandomField random_gamma(std::mt19937_64& rng, double R, double a);

// Piecewise-linear profile on [0, L], zero at both ends, for the Hardy check.
struct Profile {
  std::vector<double> x, f;
};

Profile random_profile(std::mt19937_64& rng, int cells = 2000);

}  // namespace axicyl
