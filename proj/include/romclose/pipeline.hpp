#pragma once

// Config-driven offline/online stages behind the `romclose` subcommands.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "romclose/diagnostics.hpp"
#include "romclose/error.hpp"
#include "romclose/fom.hpp"
#include "romclose/grid.hpp"
#include "romclose/trajectory.hpp"

namespace romclose {

struct GridConfig {
  int n_points = 512;
  double domain_length = 2.0 * 3.14159265358979323846;
  Boundary boundary = Boundary::Periodic;

  Grid1D make() const;
};

struct ToyConfig {
  ToySystem system = default_toy();
  double dt = 1e-3;
  int n_steps = 20000;
  int keep = 2;
};

struct PipelineConfig {
  GridConfig grid;
  FomConfig fom;
  int pod_rank = 20;
  bool centering = true;
  int rom_r = 4;
  double rom_dt = 1e-3;
  int rom_n_steps = 20000;
  std::optional<double> ridge_lambda;  // nullopt: automatic policy
  std::filesystem::path out_dir = "out";
  std::vector<ReportFormat> formats = {ReportFormat::CSV, ReportFormat::JSON};
  bool against_projection = false;
  ToyConfig toy;

  // Effective config document (defaults merged, overrides applied).
  nlohmann::json document;

  // FNV-1a of the effective document without the output section.
  std::string hash() const;
};

// Parses a config document. `overrides` are "dotted.key=value" strings; the
// value is read as JSON when it parses, as a string otherwise. Throws
// ConfigInvalid naming the offending field path.
PipelineConfig parse_config(const nlohmann::json& doc, const std::vector<std::string>& overrides = {});
PipelineConfig load_config(const std::filesystem::path& path,
                           const std::vector<std::string>& overrides = {});

// Shipped default configuration (the Burgers benchmark).
nlohmann::json default_config_document();

namespace artifacts {
inline constexpr const char* kSnapshots = "snapshots";
inline constexpr const char* kBasis = "basis";
inline constexpr const char* kOpsFull = "operators_full";
inline constexpr const char* kOpsResolved = "operators_resolved";
inline constexpr const char* kSamples = "closure_samples";
inline constexpr const char* kClosure = "closure";
inline constexpr const char* kReport = "report";
inline constexpr const char* kToyReport = "toy_report";
std::string trajectory(Variant v);
}  // namespace artifacts

void cmd_fom(const PipelineConfig& cfg);
void cmd_pod(const PipelineConfig& cfg);
void cmd_train(const PipelineConfig& cfg);
void cmd_simulate(const PipelineConfig& cfg, Variant variant);
ErrorReport cmd_report(const PipelineConfig& cfg);
ErrorReport cmd_toy(const PipelineConfig& cfg);

// Toy pipeline without side effects: 2D truncated G-ROM, 2D + fitted closure
// and 2D ideal ROM, each compared against (a_1, a_2) of the 3D reference.
ErrorReport run_toy(const ToyConfig& toy, std::optional<double> ridge_lambda);

// Maps ErrorKind to the CLI exit code.
int exit_code(ErrorKind kind);

void init_logging();

}  // namespace romclose
