#pragma once

#include <cmath>
#include <vector>

// Grid kernels with two implementations: a plain serial reference and an
// OpenMP version parallel over radial rows. Reductions in the OpenMP version
// sum per-row partials in row order, so results do not depend on the thread
// count. The dispatching functions at the bottom use the active backend.
namespace axicyl::kernels {

enum class AxisParity { Even, Odd };
// Reflection rule at z = -a and z = +a. None means one-sided stencils.
enum class EdgeRule { None, Even, Odd };

// Three-point radial stencil (lo, di, up) on rows [i0, i1] combined with the
// three-point second difference in z. Rows outside [i0, i1] produce 0.
struct RadialStencil {
  std::vector<double> lo, di, up;
  int i0 = 0, i1 = 0;
};

// Dirichlet: z-edge nodes are fixed (output 0 there). Mirror: z-edge nodes use
// the even ghost f(-a - h) = f(-a + h).
enum class ZClosure { Dirichlet, Mirror };

enum class Backend { Serial, OpenMP };

// |x|^p, by repeated squaring when p is a small positive integer (the common
// Lebesgue exponents), std::pow otherwise. Shared by both backends.
inline double abs_pow(double x, double p) {
  x = x < 0.0 ? -x : x;
  if (p >= 1.0 && p <= 4096.0 && p == static_cast<double>(static_cast<int>(p))) {
    unsigned n = static_cast<unsigned>(p);
    double r = 1.0;
    while (true) {
      if (n & 1u) r *= x;
      n >>= 1u;
      if (n == 0u) break;
      x *= x;
    }
    return r;
  }
  return std::pow(x, p);
}

void set_backend(Backend b);
Backend backend();
// Worker cap from AXICYL_THREADS (0 or unset: OpenMP default).
int thread_cap();
void apply_thread_cap();

namespace serial {
void derivative_r(int rows, int cols, double h, AxisParity p, const double* in, double* out);
void derivative_z(int rows, int cols, double h, EdgeRule e, const double* in, double* out);
void apply_stencil(int rows, int cols, const RadialStencil& s, double hz, ZClosure zc,
                   const double* in, double* out);
double weighted_sum(int rows, int cols, const double* rw, const double* zw, const double* v);
double weighted_power_sum(int rows, int cols, const double* rw, const double* zw,
                          const double* v, double p, double scale);
double dot(int n, const double* x, const double* y);
}  // namespace serial

namespace omp {
void derivative_r(int rows, int cols, double h, AxisParity p, const double* in, double* out);
void derivative_z(int rows, int cols, double h, EdgeRule e, const double* in, double* out);
void apply_stencil(int rows, int cols, const RadialStencil& s, double hz, ZClosure zc,
                   const double* in, double* out);
double weighted_sum(int rows, int cols, const double* rw, const double* zw, const double* v);
double weighted_power_sum(int rows, int cols, const double* rw, const double* zw,
                          const double* v, double p, double scale);
double dot(int n, const double* x, const double* y);
}  // namespace omp

void derivative_r(int rows, int cols, double h, AxisParity p, const double* in, double* out);
void derivative_z(int rows, int cols, double h, EdgeRule e, const double* in, double* out);
void apply_stencil(int rows, int cols, const RadialStencil& s, double hz, ZClosure zc,
                   const double* in, double* out);
double weighted_sum(int rows, int cols, const double* rw, const double* zw, const double* v);
double weighted_power_sum(int rows, int cols, const double* rw, const double* zw,
                          const double* v, double p, double scale);
double dot(int n, const double* x, const double* y);

}  // namespace axicyl::kernels
