// Serial reference against OpenMP kernels on the grid sizes the runs use.

#include <benchmark/benchmark.h>

#include <cmath>

#include "axicyl/elliptic.hpp"
#include "axicyl/kernels.hpp"

namespace {

using namespace axicyl;

struct Data {
  int rows, cols;
  std::vector<double> in, out, rw, zw;
  kernels::RadialStencil stencil;
  Data(int nr, int nz) : rows(nr + 1), cols(nz + 1) {
    in.resize(std::size_t(rows) * cols);
    out.resize(in.size());
    for (std::size_t k = 0; k < in.size(); ++k) in[k] = std::sin(0.001 * double(k));
    const GridPtr g = build_grid(1.0, 1.0, nr, nz);
    rw = g->radial_weights();
    zw = g->axial_weights();
    stencil = elliptic_system(g, OperatorKind::Psi1)->stencil();
  }
};

template <bool Omp>
void BM_derivative_r(benchmark::State& st) {
  Data d(int(st.range(0)), 2 * int(st.range(0)));
  for (auto _ : st) {
    if constexpr (Omp)
      kernels::omp::derivative_r(d.rows, d.cols, 0.01, kernels::AxisParity::Even, d.in.data(), d.out.data());
    else
      kernels::serial::derivative_r(d.rows, d.cols, 0.01, kernels::AxisParity::Even, d.in.data(), d.out.data());
    benchmark::DoNotOptimize(d.out.data());
  }
}

template <bool Omp>
void BM_apply_stencil(benchmark::State& st) {
  Data d(int(st.range(0)), 2 * int(st.range(0)));
  for (auto _ : st) {
    if constexpr (Omp)
      kernels::omp::apply_stencil(d.rows, d.cols, d.stencil, 0.01, kernels::ZClosure::Dirichlet, d.in.data(),
                                  d.out.data());
    else
      kernels::serial::apply_stencil(d.rows, d.cols, d.stencil, 0.01, kernels::ZClosure::Dirichlet,
                                     d.in.data(), d.out.data());
    benchmark::DoNotOptimize(d.out.data());
  }
}

template <bool Omp>
void BM_power_sum(benchmark::State& st) {
  Data d(int(st.range(0)), 2 * int(st.range(0)));
  for (auto _ : st) {
    double s = Omp ? kernels::omp::weighted_power_sum(d.rows, d.cols, d.rw.data(), d.zw.data(), d.in.data(), 8.0, 1.0)
                   : kernels::serial::weighted_power_sum(d.rows, d.cols, d.rw.data(), d.zw.data(), d.in.data(), 8.0, 1.0);
    benchmark::DoNotOptimize(s);
  }
}

}  // namespace

BENCHMARK(BM_derivative_r<false>)->Arg(64)->Arg(128)->Arg(256);
BENCHMARK(BM_derivative_r<true>)->Arg(64)->Arg(128)->Arg(256);
BENCHMARK(BM_apply_stencil<false>)->Arg(64)->Arg(128)->Arg(256);
BENCHMARK(BM_apply_stencil<true>)->Arg(64)->Arg(128)->Arg(256);
BENCHMARK(BM_power_sum<false>)->Arg(64)->Arg(128)->Arg(256);
BENCHMARK(BM_power_sum<true>)->Arg(64)->Arg(128)->Arg(256);

BENCHMARK_MAIN();
