#include <omp.h>

#include <cmath>
#include <vector>

#include "axicyl/kernels.hpp"

namespace axicyl::kernels::omp {

namespace {
// Below this many nodes the fork/join overhead dominates.
constexpr long kParallelThreshold = 4096;
}

void derivative_r(int rows, int cols, double h, AxisParity p, const double* in, double* out) {
  const int n = rows - 1;
  const double c = 0.5 / h;
#pragma omp parallel for schedule(static) if (static_cast<long>(rows) * cols > kParallelThreshold)
  for (int i = 0; i <= n; ++i) {
    const double* f = in + static_cast<long>(i) * cols;
    double* d = out + static_cast<long>(i) * cols;
    if (i == 0) {
      for (int j = 0; j < cols; ++j) d[j] = p == AxisParity::Even ? 0.0 : f[cols + j] / h;
    } else if (i == n) {
      for (int j = 0; j < cols; ++j) d[j] = c * (3.0 * f[j] - 4.0 * f[j - cols] + f[j - 2 * cols]);
    } else {
      for (int j = 0; j < cols; ++j) d[j] = c * (f[j + cols] - f[j - cols]);
    }
  }
}

void derivative_z(int rows, int cols, double h, EdgeRule e, const double* in, double* out) {
  const int m = cols - 1;
  const double c = 0.5 / h;
#pragma omp parallel for schedule(static) if (static_cast<long>(rows) * cols > kParallelThreshold)
  for (int i = 0; i < rows; ++i) {
    const double* f = in + static_cast<long>(i) * cols;
    double* d = out + static_cast<long>(i) * cols;
    for (int j = 1; j < m; ++j) d[j] = c * (f[j + 1] - f[j - 1]);
    switch (e) {
      case EdgeRule::None:
        d[0] = c * (-3.0 * f[0] + 4.0 * f[1] - f[2]);
        d[m] = c * (3.0 * f[m] - 4.0 * f[m - 1] + f[m - 2]);
        break;
      case EdgeRule::Even:
        d[0] = 0.0;
        d[m] = 0.0;
        break;
      case EdgeRule::Odd:
        d[0] = (f[1] - f[0]) / h;
        d[m] = (f[m] - f[m - 1]) / h;
        break;
    }
  }
}

void apply_stencil(int rows, int cols, const RadialStencil& s, double hz, ZClosure zc,
                   const double* in, double* out) {
  const int m = cols - 1;
  const double iz = 1.0 / (hz * hz);
#pragma omp parallel for schedule(static) if (static_cast<long>(rows) * cols > kParallelThreshold)
  for (int i = 0; i < rows; ++i) {
    const double* f = in + static_cast<long>(i) * cols;
    double* d = out + static_cast<long>(i) * cols;
    if (i < s.i0 || i > s.i1) {
      for (int j = 0; j < cols; ++j) d[j] = 0.0;
      continue;
    }
    const double lo = s.lo[i], di = s.di[i], up = s.up[i];
    const bool has_lo = i > 0, has_up = i < rows - 1;
    for (int j = 1; j < m; ++j) {
      double v = di * f[j] + iz * (f[j - 1] - 2.0 * f[j] + f[j + 1]);
      if (has_lo) v += lo * f[j - cols];
      if (has_up) v += up * f[j + cols];
      d[j] = v;
    }
    if (zc == ZClosure::Dirichlet) {
      d[0] = 0.0;
      d[m] = 0.0;
    } else {
      for (int j : {0, m}) {
        const int nb = j == 0 ? 1 : m - 1;
        double v = di * f[j] + 2.0 * iz * (f[nb] - f[j]);
        if (has_lo) v += lo * f[j - cols];
        if (has_up) v += up * f[j + cols];
        d[j] = v;
      }
    }
  }
}

double weighted_sum(int rows, int cols, const double* rw, const double* zw, const double* v) {
  std::vector<double> part(rows);
#pragma omp parallel for schedule(static) if (static_cast<long>(rows) * cols > kParallelThreshold)
  for (int i = 0; i < rows; ++i) {
    const double* f = v + static_cast<long>(i) * cols;
    double row = 0.0;
    for (int j = 0; j < cols; ++j) row += zw[j] * f[j];
    part[i] = row;
  }
  double s = 0.0;
  for (int i = 0; i < rows; ++i) s += rw[i] * part[i];
  return s;
}

double weighted_power_sum(int rows, int cols, const double* rw, const double* zw,
                          const double* v, double p, double scale) {
  std::vector<double> part(rows);
#pragma omp parallel for schedule(static) if (static_cast<long>(rows) * cols > kParallelThreshold)
  for (int i = 0; i < rows; ++i) {
    const double* f = v + static_cast<long>(i) * cols;
    double row = 0.0;
    for (int j = 0; j < cols; ++j) row += zw[j] * abs_pow(f[j] / scale, p);
    part[i] = row;
  }
  double s = 0.0;
  for (int i = 0; i < rows; ++i) s += rw[i] * part[i];
  return s;
}

double dot(int n, const double* x, const double* y) {
  constexpr int block = 4096;
  const int nb = (n + block - 1) / block;
  std::vector<double> part(nb);
#pragma omp parallel for schedule(static) if (n > kParallelThreshold)
  for (int b = 0; b < nb; ++b) {
    const int s = b * block, e = s + block < n ? s + block : n;
    double acc = 0.0;
    for (int k = s; k < e; ++k) acc += x[k] * y[k];
    part[b] = acc;
  }
  double s = 0.0;
  for (int b = 0; b < nb; ++b) s += part[b];
  return s;
}

}  // namespace axicyl::kernels::omp
