#include "romclose/pod.hpp"

#include <algorithm>
#include <string>

#include <spdlog/spdlog.h>

#include "romclose/error.hpp"

namespace romclose {
namespace {

void check_rank(const PodBasis& basis, Eigen::Index r) {
  require(r >= 0 && r <= basis.rank(), ErrorKind::DimensionMismatch,
          "rank " + std::to_string(r) + " exceeds basis rank " + std::to_string(basis.rank()));
}

void check_field(const PodBasis& basis, Eigen::Index len) {
  require(len == basis.grid.n_points(), ErrorKind::DimensionMismatch,
          "field length " + std::to_string(len) + " does not match grid");
}

}  // namespace

PodBasis compute_pod(const SnapshotSet& snapshots, int rank, bool centering) {
  snapshots.validate();
  const Grid1D& grid = snapshots.grid;
  const int n = grid.n_points();
  const int M = snapshots.count();
  require(rank >= 1 && rank <= std::min(n, M), ErrorKind::RankTooLarge,
          "requested rank " + std::to_string(rank) + " exceeds min(n_points, M) = " +
              std::to_string(std::min(n, M)));

  PodBasis basis{grid, {}, {}, {}, centering, Eigen::VectorXd::Zero(n)};
  Eigen::MatrixXd S = snapshots.fields;
  if (centering) {
    basis.mean_field = S.rowwise().mean();
    S.colwise() -= basis.mean_field;
  }
  require(S.cwiseAbs().maxCoeff() > 0.0, ErrorKind::DegenerateSnapshots,
          centering ? "centered snapshot matrix is zero" : "snapshot matrix is zero");

  const Eigen::VectorXd sqrt_w = grid.quad_weights().cwiseSqrt();
  const Eigen::MatrixXd Y = sqrt_w.asDiagonal() * S;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(Y, Eigen::ComputeThinU);
  basis.spectrum = svd.singularValues();

  const double sigma1 = basis.spectrum[0];
  int kept = 0;
  while (kept < rank && basis.spectrum[kept] >= kRankDeflation * sigma1) ++kept;
  if (kept < rank)
    spdlog::warn("pod: rank deflated from {} to {} (sigma below {:.1e} sigma_1)", rank, kept,
                 kRankDeflation);

  basis.singular_values = basis.spectrum.head(kept);
  basis.modes = sqrt_w.cwiseInverse().asDiagonal() * svd.matrixU().leftCols(kept);
  // Fix the sign ambiguity: the largest-magnitude entry of each mode is positive.
  for (int j = 0; j < kept; ++j) {
    Eigen::Index imax;
    basis.modes.col(j).cwiseAbs().maxCoeff(&imax);
    if (basis.modes(imax, j) < 0.0) basis.modes.col(j) *= -1.0;
  }
  return basis;
}

Eigen::VectorXd project(const PodBasis& basis, const Eigen::Ref<const Eigen::VectorXd>& field,
                        int r) {
  check_rank(basis, r);
  check_field(basis, field.size());
  const Eigen::VectorXd weighted =
      basis.grid.quad_weights().cwiseProduct(field - basis.mean_field);
  return basis.modes.leftCols(r).transpose() * weighted;
}

Eigen::VectorXd reconstruct(const PodBasis& basis, const Eigen::Ref<const Eigen::VectorXd>& coeffs) {
  check_rank(basis, coeffs.size());
  return basis.mean_field + basis.modes.leftCols(coeffs.size()) * coeffs;
}

CoefficientSeries project_series(const PodBasis& basis, const SnapshotSet& snapshots, int r) {
  check_rank(basis, r);
  check_field(basis, snapshots.fields.rows());
  Eigen::MatrixXd centered = snapshots.fields;
  centered.colwise() -= basis.mean_field;
  const Eigen::MatrixXd weighted = basis.grid.quad_weights().asDiagonal() * centered;
  return {snapshots.times, weighted.transpose() * basis.modes.leftCols(r)};
}

Eigen::VectorXd projection_residuals(const PodBasis& basis, const SnapshotSet& snapshots, int r) {
  const CoefficientSeries series = project_series(basis, snapshots, r);
  Eigen::VectorXd out(snapshots.count());
  for (int j = 0; j < snapshots.count(); ++j) {
    const Eigen::VectorXd diff =
        snapshots.fields.col(j) - reconstruct(basis, series.coeffs.row(j).transpose());
    out[j] = basis.grid.norm(diff);
  }
  return out;
}

double projection_error(const PodBasis& basis, const SnapshotSet& snapshots, int r) {
  const Eigen::VectorXd res = projection_residuals(basis, snapshots, r);
  return std::sqrt(res.squaredNorm() / double(res.size()));
}

}  // namespace romclose
