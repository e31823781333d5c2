#include "axicyl/random_fields.hpp"

#include <cmath>
#include <numbers>

namespace axicyl {

std::mt19937_64 sample_rng(std::uint64_t seed, std::uint64_t sample) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(sample), static_cast<std::uint32_t>(sample >> 32)};
  return std::mt19937_64(seq);
}

double RandomField::operator()(double r, double z) const {
  using std::numbers::pi;
  const double rho2 = (r / R) * (r / R);
  double w;
  if (radial == Radial::Wall) {
    w = 1.0 - rho2;
  } else if (radial == Radial::Wall2) {
    w = (1.0 - rho2) * (1.0 - rho2);
  } else {
    const double t = 1.0 - rho2 / 0.64;
    w = t > 0.0 ? t * t * t : 0.0;
  }
  const double P = b[0] + b[1] * rho2 + b[2] * rho2 * rho2;
  double Z = axial == Axial::Cosine ? c[0] : 0.0;
  const double s = pi * (z + a) / (2.0 * a);
  for (int k = 1; k < 5; ++k)
    Z += c[k] * (axial == Axial::Cosine ? std::cos(k * s) : std::sin(k * s));
  return w * P * Z;
}

ScalarField RandomField::sample(const GridPtr& g) const {
  const EdgeRule e = axial == Axial::Sine ? EdgeRule::Odd : EdgeRule::Even;
  return ScalarField::sample(g, *this, Parity::Even, e, "random");
}

RandomField random_field(std::mt19937_64& rng, RandomField::Radial radial,
                         RandomField::Axial axial, double R, double a) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  RandomField f;
  f.radial = radial;
  f.axial = axial;
  f.R = R;
  f.a = a;
  // Keep P bounded away from zero so the sample is non-degenerate.
  f.b = {1.0 + 0.5 * u(rng), 0.5 * u(rng), 0.5 * u(rng)};
  for (int k = 0; k < 5; ++k) f.c[k] = u(rng) / (1.0 + k);
  if (axial == RandomField::Axial::Sine) f.c[0] = 0.0;
  f.c[1] += f.c[1] >= 0.0 ? 0.5 : -0.5;
  return f;
}

RandomField random_gamma(std::mt19937_64& rng, double R, double a) {
  return random_field(rng, RandomField::Radial::Wall, RandomField::Axial::Sine, R, a);
}

Profile random_profile(std::mt19937_64& rng, int cells) {
  using std::numbers::pi;
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double L = 1.25 + 0.75 * u(rng);
  std::array<double, 3> c{1.0 + 0.5 * u(rng), 0.5 * u(rng), 0.3 * u(rng)};
  Profile p;
  p.x.resize(cells + 1);
  p.f.resize(cells + 1);
  for (int k = 0; k <= cells; ++k) {
    const double x = L * k / cells;
    p.x[k] = x;
    double v = 0.0;
    for (int m = 0; m < 3; ++m) v += c[m] * std::sin((m + 1) * pi * x / L);
    p.f[k] = k == cells ? 0.0 : v;
  }
  return p;
}

}  // namespace axicyl
