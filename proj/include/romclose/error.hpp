#pragma once

#include <stdexcept>
#include <string>

namespace romclose {

enum class ErrorKind {
  CflViolation,
  NonFiniteState,
  RankTooLarge,
  RankNotStrictlySmaller,
  DegenerateSnapshots,
  DimensionMismatch,
  InsufficientSamples,
  TimeOutOfRange,
  MisalignedTimes,
  InvalidArgument,
  IoFailure,
  VersionMismatch,
  ConfigInvalid,
  UpstreamMissing,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Throws Error(kind, msg) when cond is false.
inline void require(bool cond, ErrorKind kind, const std::string& msg) {
  if (!cond) throw Error(kind, msg);
}

}  // namespace romclose
