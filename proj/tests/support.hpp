#pragma once

// Shared fixtures and brute-force oracles. Oracles here deliberately avoid the
// library's kernels so they stay independent of the code they check.

#include <cmath>
#include <filesystem>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "romclose/fom.hpp"
#include "romclose/grid.hpp"
#include "romclose/tensor.hpp"

namespace romclose::testing {

inline FomConfig benchmark_fom_config(int n_steps = 20000, int stride = 20) {
  FomConfig cfg;
  cfg.viscosity = 0.01;
  cfg.dt = 1e-3;
  cfg.n_steps = n_steps;
  cfg.snapshot_stride = stride;
  cfg.initial_condition.kind = InitialCondition::Kind::SinBump;
  cfg.initial_condition.offset = 1.0;
  cfg.initial_condition.amplitude = 0.5;
  return cfg;
}

inline Grid1D benchmark_grid() { return Grid1D::periodic(512, 2.0 * M_PI); }

// Burgers benchmark used by the acceptance suite (T = 20, M = 1001).
inline const SnapshotSet& benchmark_snapshots() {
  static const SnapshotSet s = solve_burgers(benchmark_fom_config(), benchmark_grid());
  return s;
}

// Short smooth run on a coarse grid for cheap structural tests.
inline SnapshotSet small_burgers(Boundary b = Boundary::Periodic, int n = 128) {
  const Grid1D grid = b == Boundary::Periodic ? Grid1D::periodic(n, 2.0 * M_PI)
                                              : Grid1D::dirichlet(n, M_PI);
  FomConfig cfg;
  cfg.viscosity = 0.05;
  cfg.dt = 2e-3;
  cfg.n_steps = 1000;
  cfg.snapshot_stride = 10;
  // Fine grids: halve the step (same horizon and snapshot times) to stay
  // inside the diffusive stability limit.
  while (cfg.dt * cfg.viscosity / (grid.spacing() * grid.spacing()) > 0.5) {
    cfg.dt *= 0.5;
    cfg.n_steps *= 2;
    cfg.snapshot_stride *= 2;
  }
  return solve_burgers(cfg, grid);
}

// Central difference written out independently of Grid1D::derivative.
inline Eigen::VectorXd oracle_derivative(const Grid1D& g, const Eigen::VectorXd& f) {
  const int n = g.n_points();
  const double h = g.spacing();
  Eigen::VectorXd d(n);
  for (int k = 0; k < n; ++k) {
    if (g.boundary() == Boundary::Periodic) {
      d[k] = (f[(k + 1) % n] - f[(k + n - 1) % n]) / (2.0 * h);
    } else if (k == 0) {
      d[k] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
    } else if (k == n - 1) {
      d[k] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
    } else {
      d[k] = (f[k + 1] - f[k - 1]) / (2.0 * h);
    }
  }
  return d;
}

inline double oracle_inner(const Grid1D& g, const Eigen::VectorXd& f, const Eigen::VectorXd& h) {
  double s = 0.0;
  for (int k = 0; k < g.n_points(); ++k) s += g.quad_weights()[k] * f[k] * h[k];
  return s;
}

// A_im = -nu (phi_m', phi_i')_W
inline double oracle_A(const Grid1D& g, const Eigen::MatrixXd& phi, double nu, int i, int m) {
  return -nu * oracle_inner(g, oracle_derivative(g, phi.col(m)), oracle_derivative(g, phi.col(i)));
}

// B_imn = -(phi_m phi_n', phi_i)_W
inline double oracle_B(const Grid1D& g, const Eigen::MatrixXd& phi, int i, int m, int n) {
  const Eigen::VectorXd dn = oracle_derivative(g, phi.col(n));
  double s = 0.0;
  for (int k = 0; k < g.n_points(); ++k) s += g.quad_weights()[k] * phi(k, m) * dn[k] * phi(k, i);
  return -s;
}

// Naive triple loop for A a + a^T B a.
inline Eigen::VectorXd oracle_quadratic(const Eigen::MatrixXd& A, const Tensor3& B,
                                        const Eigen::VectorXd& a) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(B.rows());
  for (int i = 0; i < B.rows(); ++i) {
    for (int m = 0; m < B.dim(); ++m) {
      out[i] += A(i, m) * a[m];
      for (int n = 0; n < B.dim(); ++n) out[i] += B(i, m, n) * a[m] * a[n];
    }
  }
  return out;
}

inline Tensor3 random_tensor(int r, std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Tensor3 t(r);
  for (size_t k = 0; k < t.size(); ++k) t.data()[k] = u(rng);
  return t;
}

inline Eigen::MatrixXd random_matrix(int rows, int cols, std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Eigen::MatrixXd m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = u(rng);
  return m;
}

inline double max_abs_diff(const Tensor3& a, const Tensor3& b) {
  double d = 0.0;
  for (size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a.data()[k] - b.data()[k]));
  return d;
}

// Per-test scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("romclose_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace romclose::testing
