#include "romclose/error.hpp"

namespace romclose {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::CflViolation: return "CflViolation";
    case ErrorKind::NonFiniteState: return "NonFiniteState";
    case ErrorKind::RankTooLarge: return "RankTooLarge";
    case ErrorKind::RankNotStrictlySmaller: return "RankNotStrictlySmaller";
    case ErrorKind::DegenerateSnapshots: return "DegenerateSnapshots";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InsufficientSamples: return "InsufficientSamples";
    case ErrorKind::TimeOutOfRange: return "TimeOutOfRange";
    case ErrorKind::MisalignedTimes: return "MisalignedTimes";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::IoFailure: return "IoFailure";
    case ErrorKind::VersionMismatch: return "VersionMismatch";
    case ErrorKind::ConfigInvalid: return "ConfigInvalid";
    case ErrorKind::UpstreamMissing: return "UpstreamMissing";
  }
  return "Unknown";
}

}  // namespace romclose
