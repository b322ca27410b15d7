// Serial reference vs OpenMP kernels. Run with OMP_NUM_THREADS set to the
// core count of interest.

#include <cmath>
#include <vector>

#include <benchmark/benchmark.h>

#include "romclose/grid.hpp"
#include "romclose/kernels.hpp"

using romclose::Grid1D;
using romclose::Tensor3;
using romclose::kernels::Exec;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(1) ? Exec::Parallel : Exec::Serial; }

void BM_BurgersRhs(benchmark::State& state) {
  const int n = int(state.range(0));
  const Grid1D grid = Grid1D::periodic(n, 2.0 * M_PI);
  std::vector<double> u(n), out(n);
  for (int k = 0; k < n; ++k) u[k] = 1.0 + 0.5 * std::sin(grid.x(k));
  for (auto _ : state) {
    romclose::kernels::burgers_rhs(grid, 0.01, true, u, out, exec_of(state));
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_BurgersRhs)->ArgsProduct({{512, 1 << 14, 1 << 18}, {0, 1}});

void BM_AssembleConvection(benchmark::State& state) {
  const int r = int(state.range(0));
  const int n = 512;
  const Grid1D grid = Grid1D::periodic(n, 2.0 * M_PI);
  Eigen::MatrixXd modes(n, r);
  for (int j = 0; j < r; ++j)
    for (int k = 0; k < n; ++k) modes(k, j) = std::sin((j + 1) * grid.x(k) + 0.3 * j);
  const Eigen::MatrixXd dmodes = grid.derivative_columns(modes);
  for (auto _ : state) {
    Tensor3 B = romclose::kernels::assemble_convection(grid.quad_weights(), modes, dmodes, exec_of(state));
    benchmark::DoNotOptimize(B.data());
  }
}
BENCHMARK(BM_AssembleConvection)->ArgsProduct({{4, 20, 40}, {0, 1}});

void BM_QuadraticForm(benchmark::State& state) {
  const int r = int(state.range(0));
  const Eigen::MatrixXd A = Eigen::MatrixXd::Random(r, r);
  Tensor3 B(r);
  for (size_t k = 0; k < B.size(); ++k) B.data()[k] = std::cos(double(k));
  std::vector<double> a(r, 0.1), out(r);
  for (auto _ : state) {
    romclose::kernels::quadratic_form(A, B, a, out, exec_of(state));
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_QuadraticForm)->ArgsProduct({{4, 20, 80}, {0, 1}});

}  // namespace

BENCHMARK_MAIN();
