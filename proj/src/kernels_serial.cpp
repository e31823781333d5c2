#include <cmath>

#include "axicyl/kernels.hpp"

namespace axicyl::kernels::serial {

void derivative_r(int rows, int cols, double h, AxisParity p, const double* in, double* out) {
  const int n = rows - 1;
  const double c = 0.5 / h;
  for (int i = 0; i <= n; ++i) {
    const double* f = in + static_cast<long>(i) * cols;
    double* d = out + static_cast<long>(i) * cols;
    for (int j = 0; j < cols; ++j) {
      if (i == 0) {
        d[j] = p == AxisParity::Even ? 0.0 : f[cols + j] / h;
      } else if (i == n) {
        d[j] = c * (3.0 * f[j] - 4.0 * f[j - cols] + f[j - 2 * cols]);
      } else {
        d[j] = c * (f[j + cols] - f[j - cols]);
      }
    }
  }
}

void derivative_z(int rows, int cols, double h, EdgeRule e, const double* in, double* out) {
  const int m = cols - 1;
  const double c = 0.5 / h;
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
  for (int i = 0; i < rows; ++i) {
    const double* f = in + static_cast<long>(i) * cols;
    double* d = out + static_cast<long>(i) * cols;
    if (i < s.i0 || i > s.i1) {
      for (int j = 0; j < cols; ++j) d[j] = 0.0;
      continue;
    }
    const double lo = s.lo[i], di = s.di[i], up = s.up[i];
    for (int j = 1; j < m; ++j) {
      double v = di * f[j] + iz * (f[j - 1] - 2.0 * f[j] + f[j + 1]);
      if (i > 0) v += lo * f[j - cols];
      if (i < rows - 1) v += up * f[j + cols];
      d[j] = v;
    }
    if (zc == ZClosure::Dirichlet) {
      d[0] = 0.0;
      d[m] = 0.0;
    } else {
      for (int j : {0, m}) {
        const int nb = j == 0 ? 1 : m - 1;
        double v = di * f[j] + 2.0 * iz * (f[nb] - f[j]);
        if (i > 0) v += lo * f[j - cols];
        if (i < rows - 1) v += up * f[j + cols];
        d[j] = v;
      }
    }
  }
}

double weighted_sum(int rows, int cols, const double* rw, const double* zw, const double* v) {
  double s = 0.0;
  for (int i = 0; i < rows; ++i) {
    const double* f = v + static_cast<long>(i) * cols;
    double row = 0.0;
    for (int j = 0; j < cols; ++j) row += zw[j] * f[j];
    s += rw[i] * row;
  }
  return s;
}

double weighted_power_sum(int rows, int cols, const double* rw, const double* zw,
                          const double* v, double p, double scale) {
  double s = 0.0;
  for (int i = 0; i < rows; ++i) {
    const double* f = v + static_cast<long>(i) * cols;
    double row = 0.0;
    for (int j = 0; j < cols; ++j) row += zw[j] * abs_pow(f[j] / scale, p);
    s += rw[i] * row;
  }
  return s;
}

double dot(int n, const double* x, const double* y) {
  constexpr int block = 4096;
  double s = 0.0;
  for (int b = 0; b < n; b += block) {
    const int e = b + block < n ? b + block : n;
    double part = 0.0;
    for (int k = b; k < e; ++k) part += x[k] * y[k];
    s += part;
  }
  return s;
}

}  // namespace axicyl::kernels::serial
