#include "romclose/diagnostics.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

#include "romclose/error.hpp"

namespace romclose {

Eigen::VectorXd field_error_series(const PodBasis& basis, const RomTrajectory& traj,
                                   const SnapshotSet& snapshots, bool against_projection) {
  snapshots.validate();
  require(traj.rank() <= basis.rank(), ErrorKind::DimensionMismatch,
          "trajectory rank exceeds basis rank");
  require(snapshots.grid.n_points() == basis.grid.n_points(), ErrorKind::DimensionMismatch,
          "snapshots and basis live on different grids");
  const int r = traj.rank();
  Eigen::VectorXd err(snapshots.count());
  for (int j = 0; j < snapshots.count(); ++j) {
    const Eigen::VectorXd rom = reconstruct(basis, traj.at(snapshots.times[j]));
    const Eigen::VectorXd ref = against_projection
                                    ? reconstruct(basis, project(basis, snapshots.fields.col(j), r))
                                    : Eigen::VectorXd(snapshots.fields.col(j));
    err[j] = basis.grid.norm(ref - rom);
  }
  return err;
}

Eigen::VectorXd coefficient_error_series(const RomTrajectory& traj, const Eigen::VectorXd& times,
                                         const Eigen::MatrixXd& reference) {
  require(reference.rows() == times.size() && reference.cols() == traj.rank(),
          ErrorKind::DimensionMismatch, "reference coefficients do not match trajectory");
  Eigen::VectorXd err(times.size());
  for (Eigen::Index j = 0; j < times.size(); ++j)
    err[j] = (traj.at(times[j]) - reference.row(j).transpose()).norm();
  return err;
}

const VariantErrors* ErrorReport::find(const std::string& label) const {
  for (const auto& v : variants)
    if (v.label == label) return &v;
  return nullptr;
}

ErrorReport compare(std::vector<ErrorSeries> series, std::map<std::string, double> metadata) {
  ErrorReport report;
  report.metadata = std::move(metadata);
  if (series.empty()) return report;

  std::sort(series.begin(), series.end(),
            [](const ErrorSeries& a, const ErrorSeries& b) { return a.label < b.label; });
  report.times = series.front().times;
  for (const auto& s : series) {
    require(s.times.size() == report.times.size() && s.times == report.times,
            ErrorKind::MisalignedTimes, "series '" + s.label + "' uses a different time axis");
    require(s.errors.size() == s.times.size(), ErrorKind::DimensionMismatch,
            "series '" + s.label + "' has mismatched error length");
    require((s.errors.array() >= 0.0).all(), ErrorKind::InvalidArgument,
            "series '" + s.label + "' has negative errors");
    VariantErrors v{s.label, s.errors, s.errors.size() ? s.errors.mean() : 0.0,
                    s.errors.size() ? s.errors[s.errors.size() - 1] : 0.0};
    report.variants.push_back(std::move(v));
  }
  for (const auto& num : report.variants)
    for (const auto& den : report.variants)
      if (num.label != den.label && den.time_average > 0.0)
        report.ratios[num.label + "/" + den.label] = num.time_average / den.time_average;
  return report;
}

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

nlohmann::json vec_json(const Eigen::VectorXd& v) {
  return nlohmann::json(std::vector<double>(v.data(), v.data() + v.size()));
}

Eigen::VectorXd json_vec(const nlohmann::json& j) {
  const auto v = j.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(v.data(), Eigen::Index(v.size()));
}

}  // namespace

void emit(const ErrorReport& report, ReportFormat format, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(bool(out), ErrorKind::IoFailure, "cannot open '" + path.string() + "' for writing");
  if (format == ReportFormat::CSV) {
    out << "time,variant,l2_error\n";
    for (const auto& v : report.variants)
      for (Eigen::Index j = 0; j < report.times.size(); ++j)
        out << g17(report.times[j]) << ',' << v.label << ',' << g17(v.errors[j]) << '\n';
  } else {
    nlohmann::json j;
    j["schema"] = "romclose-report-v1";
    j["metadata"] = report.metadata;
    j["times"] = vec_json(report.times);
    j["ratios"] = report.ratios;
    j["variants"] = nlohmann::json::array();
    for (const auto& v : report.variants)
      j["variants"].push_back({{"label", v.label},
                               {"l2_error", vec_json(v.errors)},
                               {"time_average", v.time_average},
                               {"terminal", v.terminal}});
    out << j.dump(2) << '\n';
  }
  out.flush();
  require(bool(out), ErrorKind::IoFailure, "write to '" + path.string() + "' failed");
}

ErrorReport read_report_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(bool(in), ErrorKind::IoFailure, "cannot open '" + path.string() + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::IoFailure, std::string("malformed report: ") + e.what());
  }
  require(j.value("schema", "") == "romclose-report-v1", ErrorKind::VersionMismatch,
          "unexpected report schema");
  ErrorReport report;
  report.metadata = j.at("metadata").get<std::map<std::string, double>>();
  report.ratios = j.at("ratios").get<std::map<std::string, double>>();
  report.times = json_vec(j.at("times"));
  for (const auto& v : j.at("variants"))
    report.variants.push_back({v.at("label").get<std::string>(), json_vec(v.at("l2_error")),
                               v.at("time_average").get<double>(), v.at("terminal").get<double>()});
  return report;
}

ReportFormat report_format_from_string(const std::string& s) {
  if (s == "csv") return ReportFormat::CSV;
  if (s == "json") return ReportFormat::JSON;
  throw Error(ErrorKind::InvalidArgument, "unknown report format '" + s + "'");
}

}  // namespace romclose
