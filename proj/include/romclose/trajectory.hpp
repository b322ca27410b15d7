#pragma once

#include <functional>
#include <span>
#include <string>

#include <Eigen/Dense>

namespace romclose {

enum class Variant { GROM, IROM, D2VMS, Toy };

const char* to_string(Variant v);
Variant variant_from_string(const std::string& s);

// Coefficient history a(t_0), ..., a(t_N) on a uniform time axis.
struct RomTrajectory {
  Eigen::VectorXd times;
  Eigen::MatrixXd coeffs;  // (N+1) x r, row j = a(t_j)
  Variant label = Variant::GROM;

  int rank() const { return int(coeffs.cols()); }
  int n_samples() const { return int(coeffs.rows()); }

  // Piecewise-linear value at time t; TimeOutOfRange outside [t_0, t_N].
  Eigen::VectorXd at(double t) const;
};

// Right-hand side of da/dt = f(t, a).
using RomRhs = std::function<void(double t, std::span<const double> a, std::span<double> out)>;

// Classical fixed-step RK4. Throws NonFiniteState as soon as the state stops
// being finite.
RomTrajectory integrate_rk4(const RomRhs& rhs, const Eigen::VectorXd& a0, double t0, double dt,
                            int n_steps, Variant label);

}  // namespace romclose
