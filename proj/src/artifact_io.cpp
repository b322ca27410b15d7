#include "romclose/artifact_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "romclose/error.hpp"

namespace romclose::io {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Block {
  std::string name;
  std::vector<Eigen::Index> shape;
  const double* data;
  size_t count;
};

uint64_t to_little(uint64_t v) {
  if constexpr (std::endian::native == std::endian::little) return v;
  uint64_t out = 0;
  for (int b = 0; b < 8; ++b) out |= ((v >> (8 * b)) & 0xffu) << (8 * (7 - b));
  return out;
}

void write_artifact(const fs::path& stem, json meta, const std::vector<Block>& blocks,
                    const Provenance& prov) {
  if (stem.has_parent_path()) fs::create_directories(stem.parent_path());
  meta["endianness"] = "little";
  meta["dtype"] = "float64";
  meta["binary"] = binary_path(stem).filename().string();
  if (!prov.config_hash.empty()) meta["provenance"] = {{"config_hash", prov.config_hash}};
  json jb = json::array();
  size_t offset = 0;
  for (const auto& b : blocks) {
    jb.push_back({{"name", b.name}, {"shape", b.shape}, {"offset", offset}, {"count", b.count}});
    offset += b.count;
  }
  meta["blocks"] = jb;

  {
    std::ofstream bin(binary_path(stem), std::ios::binary | std::ios::trunc);
    require(bool(bin), ErrorKind::IoFailure, "cannot write " + binary_path(stem).string());
    for (const auto& b : blocks) {
      for (size_t k = 0; k < b.count; ++k) {
        uint64_t bits;
        std::memcpy(&bits, b.data + k, 8);
        bits = to_little(bits);
        bin.write(reinterpret_cast<const char*>(&bits), 8);
      }
    }
    require(bool(bin), ErrorKind::IoFailure, "write failed for " + binary_path(stem).string());
  }
  std::ofstream side(sidecar_path(stem), std::ios::trunc);
  require(bool(side), ErrorKind::IoFailure, "cannot write " + sidecar_path(stem).string());
  side << meta.dump(2) << '\n';
  require(bool(side), ErrorKind::IoFailure, "write failed for " + sidecar_path(stem).string());
}

struct Loaded {
  json meta;
  std::vector<double> values;

  std::vector<double> block(const std::string& name, size_t expected) const {
    for (const auto& b : meta.at("blocks")) {
      if (b.at("name") != name) continue;
      const size_t off = b.at("offset"), count = b.at("count");
      require(count == expected, ErrorKind::IoFailure,
              "block '" + name + "' has " + std::to_string(count) + " values, expected " +
                  std::to_string(expected));
      require(off + count <= values.size(), ErrorKind::IoFailure, "block '" + name + "' truncated");
      return {values.begin() + long(off), values.begin() + long(off + count)};
    }
    throw Error(ErrorKind::IoFailure, "missing block '" + name + "'");
  }

  Eigen::MatrixXd matrix(const std::string& name, Eigen::Index rows, Eigen::Index cols) const {
    const auto v = block(name, size_t(rows * cols));
    return Eigen::Map<const Eigen::MatrixXd>(v.data(), rows, cols);
  }

  Eigen::VectorXd vector(const std::string& name, Eigen::Index n) const {
    const auto v = block(name, size_t(n));
    return Eigen::Map<const Eigen::VectorXd>(v.data(), n);
  }

  Tensor3 tensor(const std::string& name, int rows, int dim) const {
    const auto v = block(name, size_t(rows) * dim * dim);
    Tensor3 t(rows, dim);
    std::copy(v.begin(), v.end(), t.data());
    return t;
  }
};

Loaded read_artifact(const fs::path& stem, const char* version) {
  require(fs::exists(sidecar_path(stem)), ErrorKind::UpstreamMissing,
          "missing artifact " + sidecar_path(stem).string());
  Loaded out;
  {
    std::ifstream side(sidecar_path(stem));
    require(bool(side), ErrorKind::IoFailure, "cannot read " + sidecar_path(stem).string());
    try {
      out.meta = json::parse(side);
    } catch (const json::exception& e) {
      throw Error(ErrorKind::IoFailure, "malformed sidecar " + sidecar_path(stem).string() + ": " + e.what());
    }
  }
  const std::string found = out.meta.value("version", "");
  require(found == version, ErrorKind::VersionMismatch,
          sidecar_path(stem).string() + ": expected version '" + version + "', found '" + found + "'");
  require(out.meta.value("endianness", "") == "little", ErrorKind::VersionMismatch,
          "unsupported endianness tag");

  const fs::path bin_path = stem.parent_path() / out.meta.at("binary").get<std::string>();
  require(fs::exists(bin_path), ErrorKind::UpstreamMissing, "missing artifact " + bin_path.string());
  const auto bytes = fs::file_size(bin_path);
  require(bytes % 8 == 0, ErrorKind::IoFailure, bin_path.string() + " is not a float64 file");
  std::ifstream bin(bin_path, std::ios::binary);
  out.values.resize(bytes / 8);
  for (auto& v : out.values) {
    uint64_t bits;
    bin.read(reinterpret_cast<char*>(&bits), 8);
    bits = to_little(bits);
    std::memcpy(&v, &bits, 8);
  }
  require(bool(bin), ErrorKind::IoFailure, "short read on " + bin_path.string());
  return out;
}

json grid_json(const Grid1D& g) {
  return {{"n_points", g.n_points()},
          {"domain_length", g.domain_length()},
          {"boundary", to_string(g.boundary())}};
}

Grid1D grid_from_json(const json& j) {
  const int n = j.at("n_points");
  const double L = j.at("domain_length");
  return boundary_from_string(j.at("boundary")) == Boundary::Periodic ? Grid1D::periodic(n, L)
                                                                      : Grid1D::dirichlet(n, L);
}

}  // namespace

fs::path sidecar_path(const fs::path& stem) { return fs::path(stem.string() + ".json"); }
fs::path binary_path(const fs::path& stem) { return fs::path(stem.string() + ".bin"); }
bool artifact_exists(const fs::path& stem) {
  return fs::exists(sidecar_path(stem)) && fs::exists(binary_path(stem));
}

void save_snapshots(const SnapshotSet& s, const fs::path& stem, const Provenance& p) {
  s.validate();
  json meta{{"version", kSnapshotVersion},
            {"grid", grid_json(s.grid)},
            {"times", std::vector<double>(s.times.data(), s.times.data() + s.times.size())},
            {"layout", "column-major"}};
  write_artifact(stem, meta,
                 {{"fields", {s.fields.rows(), s.fields.cols()}, s.fields.data(), size_t(s.fields.size())}}, p);
}

SnapshotSet load_snapshots(const fs::path& stem) {
  const Loaded l = read_artifact(stem, kSnapshotVersion);
  const Grid1D grid = grid_from_json(l.meta.at("grid"));
  const auto times = l.meta.at("times").get<std::vector<double>>();
  SnapshotSet s{grid, Eigen::Map<const Eigen::VectorXd>(times.data(), Eigen::Index(times.size())),
                l.matrix("fields", grid.n_points(), Eigen::Index(times.size()))};
  s.validate();
  return s;
}

void save_basis(const PodBasis& b, const fs::path& stem, const Provenance& p) {
  json meta{{"version", kBasisVersion},
            {"grid", grid_json(b.grid)},
            {"rank", b.rank()},
            {"spectrum_size", b.spectrum.size()},
            {"centered", b.centered}};
  write_artifact(stem, meta,
                 {{"modes", {b.modes.rows(), b.modes.cols()}, b.modes.data(), size_t(b.modes.size())},
                  {"singular_values", {b.singular_values.size()}, b.singular_values.data(),
                   size_t(b.singular_values.size())},
                  {"spectrum", {b.spectrum.size()}, b.spectrum.data(), size_t(b.spectrum.size())},
                  {"mean_field", {b.mean_field.size()}, b.mean_field.data(), size_t(b.mean_field.size())}},
                 p);
}

PodBasis load_basis(const fs::path& stem) {
  const Loaded l = read_artifact(stem, kBasisVersion);
  const Grid1D grid = grid_from_json(l.meta.at("grid"));
  const int R = l.meta.at("rank");
  const Eigen::Index ns = l.meta.at("spectrum_size");
  const int n = grid.n_points();
  return PodBasis{grid,
                  l.matrix("modes", n, R),
                  l.vector("singular_values", R),
                  l.vector("spectrum", ns),
                  l.meta.at("centered").get<bool>(),
                  l.vector("mean_field", n)};
}

void save_operators(const RomOperators& ops, const fs::path& stem, const Provenance& p) {
  json meta{{"version", kOperatorsVersion},
            {"r", ops.r},
            {"viscosity", ops.viscosity},
            {"centered", ops.centered},
            {"tensor_order", "i-major, then m, then n"}};
  const size_t r = size_t(ops.r);
  write_artifact(stem, meta,
                 {{"A", {ops.r, ops.r}, ops.A.data(), r * r},
                  {"B", {ops.r, ops.r, ops.r}, ops.B.data(), r * r * r},
                  {"mean_constant", {ops.r}, ops.mean_constant.data(), r},
                  {"mean_linear", {ops.r, ops.r}, ops.mean_linear.data(), r * r}},
                 p);
}

RomOperators load_operators(const fs::path& stem) {
  const Loaded l = read_artifact(stem, kOperatorsVersion);
  RomOperators ops;
  ops.r = l.meta.at("r");
  ops.viscosity = l.meta.at("viscosity");
  ops.centered = l.meta.at("centered");
  ops.A = l.matrix("A", ops.r, ops.r);
  ops.B = l.tensor("B", ops.r, ops.r);
  ops.mean_constant = l.vector("mean_constant", ops.r);
  ops.mean_linear = l.matrix("mean_linear", ops.r, ops.r);
  return ops;
}

void save_closure(const ClosureOperators& c, const fs::path& stem, const Provenance& p) {
  json meta{{"version", kClosureVersion},
            {"r", c.r},
            {"ridge_lambda", c.ridge_lambda},
            {"residual_rel", c.residual_rel},
            {"condition", c.condition},
            {"tensor_order", "i-major, then m, then n"}};
  const size_t r = size_t(c.r);
  write_artifact(stem, meta,
                 {{"A_tilde", {c.r, c.r}, c.A_tilde.data(), r * r},
                  {"B_tilde", {c.r, c.r, c.r}, c.B_tilde.data(), r * r * r}},
                 p);
}

ClosureOperators load_closure(const fs::path& stem) {
  const Loaded l = read_artifact(stem, kClosureVersion);
  ClosureOperators c;
  c.r = l.meta.at("r");
  c.ridge_lambda = l.meta.at("ridge_lambda");
  c.residual_rel = l.meta.at("residual_rel");
  c.condition = l.meta.at("condition");
  c.A_tilde = l.matrix("A_tilde", c.r, c.r);
  c.B_tilde = l.tensor("B_tilde", c.r, c.r);
  return c;
}

void save_samples(const ClosureSamples& s, const fs::path& stem, const Provenance& p) {
  json meta{{"version", kSamplesVersion}, {"r", s.r}, {"R", s.R}, {"M", s.times.size()}};
  write_artifact(stem, meta,
                 {{"times", {s.times.size()}, s.times.data(), size_t(s.times.size())},
                  {"tau", {s.tau.rows(), s.tau.cols()}, s.tau.data(), size_t(s.tau.size())},
                  {"a_full", {s.a_full.rows(), s.a_full.cols()}, s.a_full.data(), size_t(s.a_full.size())}},
                 p);
}

ClosureSamples load_samples(const fs::path& stem) {
  const Loaded l = read_artifact(stem, kSamplesVersion);
  ClosureSamples s;
  s.r = l.meta.at("r");
  s.R = l.meta.at("R");
  const Eigen::Index M = l.meta.at("M");
  s.times = l.vector("times", M);
  s.tau = l.matrix("tau", M, s.r);
  s.a_full = l.matrix("a_full", M, s.R);
  return s;
}

void save_trajectory(const RomTrajectory& t, const fs::path& stem, const Provenance& p) {
  json meta{{"version", kTrajectoryVersion},
            {"variant", to_string(t.label)},
            {"rank", t.rank()},
            {"samples", t.n_samples()}};
  write_artifact(stem, meta,
                 {{"times", {t.times.size()}, t.times.data(), size_t(t.times.size())},
                  {"coeffs", {t.coeffs.rows(), t.coeffs.cols()}, t.coeffs.data(), size_t(t.coeffs.size())}},
                 p);
}

RomTrajectory load_trajectory(const fs::path& stem) {
  const Loaded l = read_artifact(stem, kTrajectoryVersion);
  RomTrajectory t;
  t.label = variant_from_string(l.meta.at("variant"));
  const int r = l.meta.at("rank");
  const Eigen::Index n = l.meta.at("samples");
  t.times = l.vector("times", n);
  t.coeffs = l.matrix("coeffs", n, r);
  return t;
}

}  // namespace romclose::io
