#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "romclose/fom.hpp"
#include "romclose/pod.hpp"
#include "romclose/trajectory.hpp"

namespace romclose {

// Weighted L2 error of the reconstructed ROM field against each snapshot.
// The trajectory is interpolated linearly to the snapshot times. With
// against_projection the reference is the rank-r projection of the snapshot
// instead of the raw snapshot, which removes the projection-error floor.
Eigen::VectorXd field_error_series(const PodBasis& basis, const RomTrajectory& traj,
                                   const SnapshotSet& snapshots, bool against_projection = false);

// Euclidean error of trajectory coefficients against reference coefficients
// sampled at `times` (the trajectory is interpolated, the reference is not).
Eigen::VectorXd coefficient_error_series(const RomTrajectory& traj, const Eigen::VectorXd& times,
                                         const Eigen::MatrixXd& reference);

struct ErrorSeries {
  std::string label;
  Eigen::VectorXd times;
  Eigen::VectorXd errors;
};

struct VariantErrors {
  std::string label;
  Eigen::VectorXd errors;
  double time_average = 0.0;
  double terminal = 0.0;
};

struct ErrorReport {
  Eigen::VectorXd times;
  std::vector<VariantErrors> variants;  // sorted by label
  std::map<std::string, double> metadata;
  std::map<std::string, double> ratios;  // "<a>/<b>" of time averages

  const VariantErrors* find(const std::string& label) const;
};

ErrorReport compare(std::vector<ErrorSeries> series, std::map<std::string, double> metadata = {});

enum class ReportFormat { CSV, JSON };

void emit(const ErrorReport& report, ReportFormat format, const std::filesystem::path& path);
ErrorReport read_report_json(const std::filesystem::path& path);

ReportFormat report_format_from_string(const std::string& s);

}  // namespace romclose
