#include "romclose/trajectory.hpp"

#include <algorithm>
#include <cmath>

#include "romclose/error.hpp"

namespace romclose {

const char* to_string(Variant v) {
  switch (v) {
    case Variant::GROM: return "grom";
    case Variant::IROM: return "irom";
    case Variant::D2VMS: return "d2vms";
    case Variant::Toy: return "toy";
  }
  return "unknown";
}

Variant variant_from_string(const std::string& s) {
  if (s == "grom") return Variant::GROM;
  if (s == "irom") return Variant::IROM;
  if (s == "d2vms") return Variant::D2VMS;
  if (s == "toy") return Variant::Toy;
  throw Error(ErrorKind::InvalidArgument, "unknown variant '" + s + "'");
}

Eigen::VectorXd RomTrajectory::at(double t) const {
  const Eigen::Index n = times.size();
  require(n > 0, ErrorKind::TimeOutOfRange, "empty trajectory");
  const double t0 = times[0], t1 = times[n - 1];
  const double slack = 1e-12 * std::max(1.0, std::abs(t1));
  require(t >= t0 - slack && t <= t1 + slack, ErrorKind::TimeOutOfRange,
          "time " + std::to_string(t) + " outside trajectory range");
  if (n == 1) return coeffs.row(0).transpose();
  auto it = std::upper_bound(times.data(), times.data() + n, t);
  Eigen::Index hi = std::clamp<Eigen::Index>(it - times.data(), 1, n - 1);
  Eigen::Index lo = hi - 1;
  const double span = times[hi] - times[lo];
  const double theta = std::clamp((t - times[lo]) / span, 0.0, 1.0);
  if (theta == 0.0) return coeffs.row(lo).transpose();
  if (theta == 1.0) return coeffs.row(hi).transpose();
  return ((1.0 - theta) * coeffs.row(lo) + theta * coeffs.row(hi)).transpose();
}

RomTrajectory integrate_rk4(const RomRhs& rhs, const Eigen::VectorXd& a0, double t0, double dt,
                            int n_steps, Variant label) {
  require(dt > 0.0, ErrorKind::InvalidArgument, "time step must be positive");
  require(n_steps >= 0, ErrorKind::InvalidArgument, "step count must be non-negative");
  const Eigen::Index r = a0.size();
  require(a0.allFinite(), ErrorKind::NonFiniteState, "initial state is not finite");

  RomTrajectory traj;
  traj.label = label;
  traj.times.resize(n_steps + 1);
  traj.coeffs.resize(n_steps + 1, r);

  Eigen::VectorXd a = a0, stage(r), k1(r), k2(r), k3(r), k4(r);
  auto eval = [&](double t, const Eigen::VectorXd& x, Eigen::VectorXd& k) {
    rhs(t, std::span<const double>(x.data(), size_t(r)), std::span<double>(k.data(), size_t(r)));
  };

  traj.times[0] = t0;
  traj.coeffs.row(0) = a.transpose();
  for (int s = 0; s < n_steps; ++s) {
    const double t = t0 + s * dt;
    eval(t, a, k1);
    stage = a + 0.5 * dt * k1;
    eval(t + 0.5 * dt, stage, k2);
    stage = a + 0.5 * dt * k2;
    eval(t + 0.5 * dt, stage, k3);
    stage = a + dt * k3;
    eval(t + dt, stage, k4);
    a += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!a.allFinite())
      throw Error(ErrorKind::NonFiniteState,
                  "state blew up at step " + std::to_string(s + 1) + " (t=" + std::to_string(t + dt) + ")");
    traj.times[s + 1] = t0 + (s + 1) * dt;
    traj.coeffs.row(s + 1) = a.transpose();
  }
  return traj;
}

}  // namespace romclose
