#include "axicyl/kernels.hpp"

#include <omp.h>

#include <atomic>
#include <cstdlib>
#include <string>

namespace axicyl::kernels {

namespace {
std::atomic<Backend> g_backend{Backend::OpenMP};
}

void set_backend(Backend b) { g_backend.store(b); }
Backend backend() { return g_backend.load(); }

int thread_cap() {
  const char* env = std::getenv("AXICYL_THREADS");
  if (!env || !*env) return 0;
  try {
    const int n = std::stoi(env);
    return n > 0 ? n : 0;
  } catch (...) {
    return 0;
  }
}

void apply_thread_cap() {
  const int cap = thread_cap();
  if (cap > 0) omp_set_num_threads(cap);
}

#define AXICYL_DISPATCH(name, ...)                                   \
  return backend() == Backend::Serial ? serial::name(__VA_ARGS__) \
                                      : omp::name(__VA_ARGS__)

void derivative_r(int rows, int cols, double h, AxisParity p, const double* in, double* out) {
  AXICYL_DISPATCH(derivative_r, rows, cols, h, p, in, out);
}
void derivative_z(int rows, int cols, double h, EdgeRule e, const double* in, double* out) {
  AXICYL_DISPATCH(derivative_z, rows, cols, h, e, in, out);
}
void apply_stencil(int rows, int cols, const RadialStencil& s, double hz, ZClosure zc,
                   const double* in, double* out) {
  AXICYL_DISPATCH(apply_stencil, rows, cols, s, hz, zc, in, out);
}
double weighted_sum(int rows, int cols, const double* rw, const double* zw, const double* v) {
  AXICYL_DISPATCH(weighted_sum, rows, cols, rw, zw, v);
}
double weighted_power_sum(int rows, int cols, const double* rw, const double* zw,
                          const double* v, double p, double scale) {
  AXICYL_DISPATCH(weighted_power_sum, rows, cols, rw, zw, v, p, scale);
}
double dot(int n, const double* x, const double* y) { AXICYL_DISPATCH(dot, n, x, y); }

#undef AXICYL_DISPATCH

}  // namespace axicyl::kernels
