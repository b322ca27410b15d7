#pragma once

#include <Eigen/Dense>

#include "romclose/fom.hpp"
#include "romclose/grid.hpp"

namespace romclose {

// Modes orthonormal in the grid's weighted inner product, ordered by energy.
struct PodBasis {
  Grid1D grid;
  Eigen::MatrixXd modes;            // n_points x R
  Eigen::VectorXd singular_values;  // R, non-increasing
  // Full spectrum of the weighted snapshot matrix (min(n, M) values), kept
  // so the discarded energy of any truncation can be read off.
  Eigen::VectorXd spectrum;
  bool centered = false;
  Eigen::VectorXd mean_field;  // zeros when not centered

  int rank() const { return int(modes.cols()); }
};

struct CoefficientSeries {
  Eigen::VectorXd times;
  Eigen::MatrixXd coeffs;  // M x r, row j = a(t_j)
};

// Trailing singular values below this fraction of sigma_1 are dropped.
inline constexpr double kRankDeflation = 1e-12;

PodBasis compute_pod(const SnapshotSet& snapshots, int rank, bool centering);

Eigen::VectorXd project(const PodBasis& basis, const Eigen::Ref<const Eigen::VectorXd>& field,
                        int r);
Eigen::VectorXd reconstruct(const PodBasis& basis, const Eigen::Ref<const Eigen::VectorXd>& coeffs);

CoefficientSeries project_series(const PodBasis& basis, const SnapshotSet& snapshots, int r);

// RMS over snapshots of the weighted L2 norm of the rank-r projection residual.
double projection_error(const PodBasis& basis, const SnapshotSet& snapshots, int r);

// Per-snapshot weighted L2 norm of the rank-r projection residual.
Eigen::VectorXd projection_residuals(const PodBasis& basis, const SnapshotSet& snapshots, int r);

}  // namespace romclose
