#pragma once

// On-disk artifacts: a JSON sidecar `<stem>.json` plus a raw little-endian
// float64 file `<stem>.bin`. The sidecar lists the binary blocks in file order
// with their shapes; matrices are column-major, tensors i-major then m then n.

#include <filesystem>
#include <string>

#include "romclose/closure.hpp"
#include "romclose/fom.hpp"
#include "romclose/galerkin.hpp"
#include "romclose/pod.hpp"
#include "romclose/trajectory.hpp"

namespace romclose::io {

inline constexpr const char* kSnapshotVersion = "romclose-snap-v1";
inline constexpr const char* kBasisVersion = "romclose-basis-v1";
inline constexpr const char* kOperatorsVersion = "romclose-ops-v1";
inline constexpr const char* kClosureVersion = "romclose-closure-v1";
inline constexpr const char* kSamplesVersion = "romclose-samples-v1";
inline constexpr const char* kTrajectoryVersion = "romclose-traj-v1";

// Extra provenance recorded in every sidecar.
struct Provenance {
  std::string config_hash;
};

std::filesystem::path sidecar_path(const std::filesystem::path& stem);
std::filesystem::path binary_path(const std::filesystem::path& stem);
bool artifact_exists(const std::filesystem::path& stem);

void save_snapshots(const SnapshotSet& s, const std::filesystem::path& stem, const Provenance& p = {});
SnapshotSet load_snapshots(const std::filesystem::path& stem);

void save_basis(const PodBasis& b, const std::filesystem::path& stem, const Provenance& p = {});
PodBasis load_basis(const std::filesystem::path& stem);

void save_operators(const RomOperators& ops, const std::filesystem::path& stem, const Provenance& p = {});
RomOperators load_operators(const std::filesystem::path& stem);

void save_closure(const ClosureOperators& c, const std::filesystem::path& stem, const Provenance& p = {});
ClosureOperators load_closure(const std::filesystem::path& stem);

void save_samples(const ClosureSamples& s, const std::filesystem::path& stem, const Provenance& p = {});
ClosureSamples load_samples(const std::filesystem::path& stem);

void save_trajectory(const RomTrajectory& t, const std::filesystem::path& stem, const Provenance& p = {});
RomTrajectory load_trajectory(const std::filesystem::path& stem);

}  // namespace romclose::io
