#include "romclose/pipeline.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "romclose/artifact_io.hpp"
#include "romclose/closure.hpp"
#include "romclose/error.hpp"
#include "romclose/galerkin.hpp"
#include "romclose/pod.hpp"

namespace romclose {
namespace fs = std::filesystem;
using nlohmann::json;

Grid1D GridConfig::make() const {
  return boundary == Boundary::Periodic ? Grid1D::periodic(n_points, domain_length)
                                        : Grid1D::dirichlet(n_points, domain_length);
}

json default_config_document() {
  const ToySystem toy = default_toy();
  json A3 = json::array(), B3 = json::array();
  for (int i = 0; i < 3; ++i) {
    A3.push_back({toy.A3(i, 0), toy.A3(i, 1), toy.A3(i, 2)});
    json slab = json::array();
    for (int m = 0; m < 3; ++m) slab.push_back({toy.B3(i, m, 0), toy.B3(i, m, 1), toy.B3(i, m, 2)});
    B3.push_back(slab);
  }
  return {
      {"fom",
       {{"grid", {{"n_points", 512}, {"domain_length", "2pi"}, {"boundary", "periodic"}}},
        {"viscosity", 0.01},
        {"dt", 1e-3},
        {"n_steps", 20000},
        {"snapshot_stride", 20},
        {"advection", true},
        {"initial_condition",
         {{"kind", "sin_bump"}, {"offset", 1.0}, {"amplitude", 0.5}, {"samples", json::array()}}}}},
      {"pod", {{"rank", 20}, {"centering", true}}},
      {"rom", {{"r", 4}, {"dt", 1e-3}, {"n_steps", 20000}}},
      {"closure", {{"lambda", "auto"}}},
      {"report", {{"against_projection", false}}},
      {"output", {{"directory", "out"}, {"formats", {"csv", "json"}}}},
      {"toy",
       {{"dt", 1e-3},
        {"n_steps", 20000},
        {"keep", 2},
        {"A3", A3},
        {"B3", B3},
        {"a0", {toy.a0[0], toy.a0[1], toy.a0[2]}}}},
  };
}

namespace {

[[noreturn]] void invalid(const std::string& path, const std::string& msg) {
  throw Error(ErrorKind::ConfigInvalid, path + ": " + msg);
}

// Every key of `user` must exist in `schema`; objects are checked recursively.
void check_keys(const json& user, const json& schema, const std::string& path) {
  if (!user.is_object()) invalid(path.empty() ? "/" : path, "expected an object");
  for (const auto& [key, value] : user.items()) {
    const std::string child = path + "/" + key;
    if (!schema.contains(key)) invalid(child, "unknown field");
    if (schema.at(key).is_object()) check_keys(value, schema.at(key), child);
  }
}

double parse_length(const json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s.size() >= 2 && s.substr(s.size() - 2) == "pi") {
      const std::string factor = s.substr(0, s.size() - 2);
      try {
        return (factor.empty() ? 1.0 : std::stod(factor)) * std::numbers::pi;
      } catch (const std::exception&) {
      }
    }
  }
  invalid(path, "expected a number or '<k>pi'");
}

template <class T>
T field(const json& doc, const std::string& pointer) {
  const json::json_pointer ptr(pointer);
  if (!doc.contains(ptr)) invalid(pointer, "missing field");
  const json& j = doc.at(ptr);
  try {
    if constexpr (std::is_same_v<T, int>) {
      if (!j.is_number_integer()) invalid(pointer, "expected an integer");
    } else if constexpr (std::is_same_v<T, double>) {
      if (!j.is_number()) invalid(pointer, "expected a number");
    } else if constexpr (std::is_same_v<T, bool>) {
      if (!j.is_boolean()) invalid(pointer, "expected a boolean");
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!j.is_string()) invalid(pointer, "expected a string");
    }
    return j.get<T>();
  } catch (const json::exception& e) {
    invalid(pointer, e.what());
  }
}

void apply_override(json& doc, const json& schema, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) invalid(assignment, "override must be KEY=VALUE");
  const std::string key = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);
  std::string pointer;
  size_t start = 0;
  while (true) {
    const size_t dot = key.find('.', start);
    pointer += "/" + key.substr(start, dot - start);
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  const json::json_pointer ptr(pointer);
  if (!schema.contains(ptr)) invalid(pointer, "unknown field in --set");
  json value;
  try {
    value = json::parse(raw);
  } catch (const json::exception&) {
    value = raw;
  }
  doc[ptr] = value;
}

std::string fnv1a_hex(const std::string& text) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

std::string PipelineConfig::hash() const {
  json copy = document;
  copy.erase("output");
  return fnv1a_hex(copy.dump());
}

PipelineConfig parse_config(const json& user, const std::vector<std::string>& overrides) {
  const json schema = default_config_document();
  check_keys(user, schema, "");
  json doc = schema;
  doc.merge_patch(user);
  for (const auto& o : overrides) apply_override(doc, schema, o);

  PipelineConfig cfg;
  cfg.document = doc;

  cfg.grid.n_points = field<int>(doc, "/fom/grid/n_points");
  cfg.grid.domain_length = parse_length(doc.at(json::json_pointer("/fom/grid/domain_length")),
                                        "/fom/grid/domain_length");
  try {
    cfg.grid.boundary = boundary_from_string(field<std::string>(doc, "/fom/grid/boundary"));
  } catch (const Error& e) {
    invalid("/fom/grid/boundary", e.what());
  }
  if (cfg.grid.n_points < 3) invalid("/fom/grid/n_points", "must be at least 3");
  if (!(cfg.grid.domain_length > 0.0)) invalid("/fom/grid/domain_length", "must be positive");

  cfg.fom.viscosity = field<double>(doc, "/fom/viscosity");
  cfg.fom.dt = field<double>(doc, "/fom/dt");
  cfg.fom.n_steps = field<int>(doc, "/fom/n_steps");
  cfg.fom.snapshot_stride = field<int>(doc, "/fom/snapshot_stride");
  cfg.fom.advection = field<bool>(doc, "/fom/advection");
  const std::string kind = field<std::string>(doc, "/fom/initial_condition/kind");
  auto& ic = cfg.fom.initial_condition;
  if (kind == "sin_bump") ic.kind = InitialCondition::Kind::SinBump;
  else if (kind == "step_profile") ic.kind = InitialCondition::Kind::StepProfile;
  else if (kind == "custom") ic.kind = InitialCondition::Kind::Custom;
  else invalid("/fom/initial_condition/kind", "expected sin_bump, step_profile or custom");
  ic.offset = field<double>(doc, "/fom/initial_condition/offset");
  ic.amplitude = field<double>(doc, "/fom/initial_condition/amplitude");
  ic.samples = field<std::vector<double>>(doc, "/fom/initial_condition/samples");
  if (ic.kind == InitialCondition::Kind::Custom && int(ic.samples.size()) != cfg.grid.n_points)
    invalid("/fom/initial_condition/samples", "custom profile needs one sample per grid point");
  try {
    cfg.fom.validate();
  } catch (const Error& e) {
    invalid("/fom", e.what());
  }

  cfg.pod_rank = field<int>(doc, "/pod/rank");
  cfg.centering = field<bool>(doc, "/pod/centering");
  if (cfg.pod_rank < 1 || cfg.pod_rank > std::min(cfg.grid.n_points, cfg.fom.snapshot_count()))
    invalid("/pod/rank", "must lie in [1, min(n_points, snapshot count)]");

  cfg.rom_r = field<int>(doc, "/rom/r");
  cfg.rom_dt = field<double>(doc, "/rom/dt");
  cfg.rom_n_steps = field<int>(doc, "/rom/n_steps");
  if (cfg.rom_r < 1 || cfg.rom_r > cfg.pod_rank) invalid("/rom/r", "must lie in [1, pod.rank]");
  if (!(cfg.rom_dt > 0.0)) invalid("/rom/dt", "must be positive");
  if (cfg.rom_n_steps < 1) invalid("/rom/n_steps", "must be positive");

  const json& lam = doc.at(json::json_pointer("/closure/lambda"));
  if (lam.is_string() && lam.get<std::string>() == "auto") {
    cfg.ridge_lambda.reset();
  } else if (lam.is_number() && lam.get<double>() >= 0.0) {
    cfg.ridge_lambda = lam.get<double>();
  } else {
    invalid("/closure/lambda", "expected \"auto\" or a non-negative number");
  }

  cfg.against_projection = field<bool>(doc, "/report/against_projection");
  cfg.out_dir = field<std::string>(doc, "/output/directory");
  cfg.formats.clear();
  for (const auto& f : field<std::vector<std::string>>(doc, "/output/formats")) {
    if (f == "csv") cfg.formats.push_back(ReportFormat::CSV);
    else if (f == "json") cfg.formats.push_back(ReportFormat::JSON);
    else invalid("/output/formats", "unknown format '" + f + "'");
  }

  auto& toy = cfg.toy;
  toy.dt = field<double>(doc, "/toy/dt");
  toy.n_steps = field<int>(doc, "/toy/n_steps");
  toy.keep = field<int>(doc, "/toy/keep");
  if (!(toy.dt > 0.0)) invalid("/toy/dt", "must be positive");
  if (toy.n_steps < 1) invalid("/toy/n_steps", "must be positive");
  if (toy.keep < 1 || toy.keep > 2) invalid("/toy/keep", "must be 1 or 2");
  const auto A3 = field<std::vector<std::vector<double>>>(doc, "/toy/A3");
  const auto B3 = field<std::vector<std::vector<std::vector<double>>>>(doc, "/toy/B3");
  const auto a0 = field<std::vector<double>>(doc, "/toy/a0");
  if (A3.size() != 3) invalid("/toy/A3", "expected 3x3");
  if (B3.size() != 3) invalid("/toy/B3", "expected 3x3x3");
  if (a0.size() != 3) invalid("/toy/a0", "expected 3 entries");
  for (int i = 0; i < 3; ++i) {
    if (A3[i].size() != 3) invalid("/toy/A3", "expected 3x3");
    if (B3[i].size() != 3) invalid("/toy/B3", "expected 3x3x3");
    toy.system.a0[i] = a0[i];
    for (int m = 0; m < 3; ++m) {
      toy.system.A3(i, m) = A3[i][m];
      if (B3[i][m].size() != 3) invalid("/toy/B3", "expected 3x3x3");
      for (int n = 0; n < 3; ++n) toy.system.B3(i, m, n) = B3[i][m][n];
    }
  }
  try {
    toy.system.validate();
  } catch (const Error& e) {
    invalid("/toy", e.what());
  }
  return cfg;
}

PipelineConfig load_config(const fs::path& path, const std::vector<std::string>& overrides) {
  if (!fs::exists(path)) throw Error(ErrorKind::ConfigInvalid, "config file '" + path.string() + "' not found");
  std::ifstream in(path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ConfigInvalid, path.string() + ": " + e.what());
  }
  return parse_config(doc, overrides);
}

std::string artifacts::trajectory(Variant v) { return std::string("trajectory_") + to_string(v); }

namespace {

fs::path stem(const PipelineConfig& cfg, const std::string& name) { return cfg.out_dir / name; }

void need(const PipelineConfig& cfg, const std::string& name) {
  const fs::path s = stem(cfg, name);
  if (!io::artifact_exists(s))
    throw Error(ErrorKind::UpstreamMissing,
                "required artifact '" + s.string() + ".{json,bin}' is missing");
}

io::Provenance provenance(const PipelineConfig& cfg) { return {cfg.hash()}; }

double resolve_lambda(const PipelineConfig& cfg, const ClosureSamples& samples) {
  return cfg.ridge_lambda ? *cfg.ridge_lambda : auto_ridge_lambda(samples);
}

void write_report(const ErrorReport& report, const PipelineConfig& cfg, const std::string& name) {
  fs::create_directories(cfg.out_dir);
  for (ReportFormat f : cfg.formats)
    emit(report, f, stem(cfg, name + (f == ReportFormat::CSV ? ".csv" : ".json")));
}

}  // namespace

void cmd_fom(const PipelineConfig& cfg) {
  const Grid1D grid = cfg.grid.make();
  const SnapshotSet snaps = solve_burgers(cfg.fom, grid);
  io::save_snapshots(snaps, stem(cfg, artifacts::kSnapshots), provenance(cfg));
  spdlog::info("fom: wrote {} snapshots on {} points", snaps.count(), grid.n_points());
}

void cmd_pod(const PipelineConfig& cfg) {
  need(cfg, artifacts::kSnapshots);
  const SnapshotSet snaps = io::load_snapshots(stem(cfg, artifacts::kSnapshots));
  const PodBasis basis = compute_pod(snaps, cfg.pod_rank, cfg.centering);
  io::save_basis(basis, stem(cfg, artifacts::kBasis), provenance(cfg));
  spdlog::info("pod: rank {} (sigma_R/sigma_1 = {:.3e})", basis.rank(),
               basis.singular_values[basis.rank() - 1] / basis.singular_values[0]);
}

void cmd_train(const PipelineConfig& cfg) {
  need(cfg, artifacts::kSnapshots);
  need(cfg, artifacts::kBasis);
  const SnapshotSet snaps = io::load_snapshots(stem(cfg, artifacts::kSnapshots));
  const PodBasis basis = io::load_basis(stem(cfg, artifacts::kBasis));
  const int R = basis.rank();
  if (cfg.rom_r >= R)
    throw Error(ErrorKind::ConfigInvalid, "/rom/r: must be below the basis rank " + std::to_string(R) +
                                              " to train a closure");
  const RomOperators ops_full = assemble_operators(basis, R, cfg.fom.viscosity);
  const RomOperators ops_r = ops_full.leading(cfg.rom_r);
  const CoefficientSeries series = project_series(basis, snaps, R);
  const ClosureSamples samples = extract_closure_samples(ops_full, series.times, series.coeffs, cfg.rom_r);
  const ClosureOperators closure = fit_closure(samples, resolve_lambda(cfg, samples));

  const auto prov = provenance(cfg);
  io::save_operators(ops_full, stem(cfg, artifacts::kOpsFull), prov);
  io::save_operators(ops_r, stem(cfg, artifacts::kOpsResolved), prov);
  io::save_samples(samples, stem(cfg, artifacts::kSamples), prov);
  io::save_closure(closure, stem(cfg, artifacts::kClosure), prov);
}

void cmd_simulate(const PipelineConfig& cfg, Variant variant) {
  need(cfg, artifacts::kSamples);
  const ClosureSamples samples = io::load_samples(stem(cfg, artifacts::kSamples));
  const int r = samples.r;
  const Eigen::VectorXd a0 = samples.a_full.row(0).head(r).transpose();
  const double t0 = samples.times[0];

  RomTrajectory traj;
  switch (variant) {
    case Variant::GROM: {
      need(cfg, artifacts::kOpsResolved);
      const RomOperators ops = io::load_operators(stem(cfg, artifacts::kOpsResolved));
      traj = integrate_rom(make_grom_rhs(ops), a0, cfg.rom_dt, cfg.rom_n_steps, variant, t0);
      break;
    }
    case Variant::D2VMS: {
      need(cfg, artifacts::kOpsResolved);
      need(cfg, artifacts::kClosure);
      const RomOperators ops = io::load_operators(stem(cfg, artifacts::kOpsResolved));
      const ClosureOperators closure = io::load_closure(stem(cfg, artifacts::kClosure));
      traj = integrate_rom(make_d2vms_rhs(ops, closure), a0, cfg.rom_dt, cfg.rom_n_steps, variant, t0);
      break;
    }
    case Variant::IROM: {
      need(cfg, artifacts::kOpsFull);
      const RomOperators ops_full = io::load_operators(stem(cfg, artifacts::kOpsFull));
      traj = integrate_rom(make_irom_rhs(ops_full, r, UnresolvedInterpolant(samples)), a0, cfg.rom_dt,
                           cfg.rom_n_steps, variant, t0);
      break;
    }
    case Variant::Toy:
      throw Error(ErrorKind::ConfigInvalid, "--variant: toy trajectories come from the toy command");
  }
  io::save_trajectory(traj, stem(cfg, artifacts::trajectory(variant)), provenance(cfg));
}

ErrorReport cmd_report(const PipelineConfig& cfg) {
  need(cfg, artifacts::kSnapshots);
  need(cfg, artifacts::kBasis);
  const SnapshotSet snaps = io::load_snapshots(stem(cfg, artifacts::kSnapshots));
  const PodBasis basis = io::load_basis(stem(cfg, artifacts::kBasis));

  std::vector<ErrorSeries> series;
  for (Variant v : {Variant::GROM, Variant::IROM, Variant::D2VMS}) {
    const fs::path s = stem(cfg, artifacts::trajectory(v));
    if (!io::artifact_exists(s)) continue;
    const RomTrajectory traj = io::load_trajectory(s);
    series.push_back({to_string(v), snaps.times,
                      field_error_series(basis, traj, snaps, cfg.against_projection)});
  }
  if (series.empty())
    throw Error(ErrorKind::UpstreamMissing, "no trajectories found in '" + cfg.out_dir.string() + "'");

  std::map<std::string, double> meta{{"r", cfg.rom_r},
                                     {"R", basis.rank()},
                                     {"viscosity", cfg.fom.viscosity},
                                     {"dt", cfg.rom_dt}};
  if (io::artifact_exists(stem(cfg, artifacts::kClosure)))
    meta["lambda"] = io::load_closure(stem(cfg, artifacts::kClosure)).ridge_lambda;
  const ErrorReport report = compare(std::move(series), meta);
  write_report(report, cfg, artifacts::kReport);
  return report;
}

ErrorReport run_toy(const ToyConfig& toy, std::optional<double> ridge_lambda) {
  const int keep = toy.keep;
  const RomTrajectory reference = solve_toy(toy.system, toy.dt, toy.n_steps);
  const RomOperators ops3 = toy_operators(toy.system);
  const RomOperators ops2 = ops3.leading(keep);
  const ClosureSamples samples = toy_closure_samples(toy.system, reference, keep);
  const double lambda = ridge_lambda ? *ridge_lambda : auto_ridge_lambda(samples);
  const ClosureOperators closure = fit_closure(samples, lambda);

  const Eigen::VectorXd a0 = toy.system.a0.head(keep);
  const RomTrajectory grom = integrate_rom(make_grom_rhs(ops2), a0, toy.dt, toy.n_steps, Variant::GROM);
  const RomTrajectory d2vms =
      integrate_rom(make_d2vms_rhs(ops2, closure), a0, toy.dt, toy.n_steps, Variant::D2VMS);
  const RomTrajectory irom = integrate_rom(make_irom_rhs(ops3, keep, UnresolvedInterpolant(samples)),
                                           a0, toy.dt, toy.n_steps, Variant::IROM);

  const Eigen::MatrixXd ref = reference.coeffs.leftCols(keep);
  std::vector<ErrorSeries> series;
  for (const RomTrajectory* t : {&grom, &irom, &d2vms})
    series.push_back({to_string(t->label), reference.times,
                      coefficient_error_series(*t, reference.times, ref)});
  return compare(std::move(series), {{"r", keep}, {"R", 3}, {"dt", toy.dt}, {"lambda", lambda}});
}

ErrorReport cmd_toy(const PipelineConfig& cfg) {
  const ErrorReport report = run_toy(cfg.toy, cfg.ridge_lambda);
  write_report(report, cfg, artifacts::kToyReport);
  return report;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ConfigInvalid:
    case ErrorKind::InvalidArgument:
    case ErrorKind::RankTooLarge:
    case ErrorKind::RankNotStrictlySmaller:
    case ErrorKind::DimensionMismatch:
      return 2;
    case ErrorKind::UpstreamMissing:
    case ErrorKind::VersionMismatch:
      return 3;
    case ErrorKind::CflViolation:
    case ErrorKind::NonFiniteState:
    case ErrorKind::DegenerateSnapshots:
    case ErrorKind::InsufficientSamples:
    case ErrorKind::TimeOutOfRange:
    case ErrorKind::MisalignedTimes:
      return 4;
    case ErrorKind::IoFailure:
      return 5;
  }
  return 1;
}

void init_logging() {
  static bool done = false;
  if (done) return;
  done = true;
  auto logger = spdlog::stderr_color_mt("romclose");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("ROMCLOSE_LOG")) {
    const std::string v = env;
    if (v == "error") spdlog::set_level(spdlog::level::err);
    else if (v == "warn") spdlog::set_level(spdlog::level::warn);
    else if (v == "info") spdlog::set_level(spdlog::level::info);
    else if (v == "debug") spdlog::set_level(spdlog::level::debug);
    else spdlog::warn("ROMCLOSE_LOG='{}' not recognized; using warn", v);
  }
}

}  // namespace romclose
