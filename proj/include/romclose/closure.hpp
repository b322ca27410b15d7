#pragma once

#include <Eigen/Dense>

#include "romclose/fom.hpp"
#include "romclose/galerkin.hpp"
#include "romclose/pod.hpp"
#include "romclose/tensor.hpp"
#include "romclose/trajectory.hpp"

namespace romclose {

// Ideal closure term sampled along the projected FOM data.
struct ClosureSamples {
  Eigen::VectorXd times;   // M
  Eigen::MatrixXd tau;     // M x r
  Eigen::MatrixXd a_full;  // M x R
  int r = 0;
  int R = 0;

  Eigen::MatrixXd resolved() const { return a_full.leftCols(r); }
};

// Fitted correction tau(a) ~ A_tilde a + a^T B_tilde a.
struct ClosureOperators {
  int r = 0;
  Eigen::MatrixXd A_tilde;  // r x r
  Tensor3 B_tilde;          // r x r x r, symmetric in (m, n)
  double ridge_lambda = 0.0;
  double residual_rel = 0.0;
  double condition = 1.0;  // condition estimate of the regularized normal system

  static ClosureOperators zero(int r);
};

// Condition estimates above this are reported; the ridge term keeps the solve bounded.
inline constexpr double kIllConditioned = 1e12;
inline constexpr double kAutoRidgeFactor = 1e-6;

// tau_i(t_j) = [F_R(a_full)]_i - [F_r(a_full[0..r))]_i, i < r.
ClosureSamples extract_closure_samples(const PodBasis& basis, const SnapshotSet& snapshots, int r,
                                       double viscosity);
ClosureSamples extract_closure_samples(const RomOperators& ops_full, const Eigen::VectorXd& times,
                                       const Eigen::MatrixXd& a_full, int r);

// 1e-6 times the largest squared singular value of the quadratic feature matrix.
double auto_ridge_lambda(const ClosureSamples& samples);

ClosureOperators fit_closure(const ClosureSamples& samples, double ridge_lambda);

// G-ROM right-hand side plus A_tilde a + a^T B_tilde a.
Eigen::VectorXd d2vms_rhs(const RomOperators& ops, const ClosureOperators& closure,
                          const Eigen::Ref<const Eigen::VectorXd>& a);
RomRhs make_d2vms_rhs(const RomOperators& ops, const ClosureOperators& closure);

// Linear-in-time interpolant of the unresolved coefficients a_{r+1..R}.
class UnresolvedInterpolant {
 public:
  UnresolvedInterpolant(const Eigen::VectorXd& times, const Eigen::MatrixXd& unresolved);
  explicit UnresolvedInterpolant(const ClosureSamples& samples);

  Eigen::VectorXd operator()(double t) const { return track_.at(t); }
  int size() const { return track_.rank(); }
  double t_begin() const { return track_.times[0]; }
  double t_end() const { return track_.times[track_.times.size() - 1]; }

 private:
  RomTrajectory track_;
};

// First r components of F_R evaluated at (a_resolved, unresolved(t)).
Eigen::VectorXd irom_rhs(const RomOperators& ops_full, int r,
                         const Eigen::Ref<const Eigen::VectorXd>& a_resolved,
                         const UnresolvedInterpolant& unresolved, double t);
RomRhs make_irom_rhs(const RomOperators& ops_full, int r, UnresolvedInterpolant unresolved);

// Toy closure: samples tau_i = F_i(a) - F_i(a_1..a_keep, 0) along the
// reference trajectory, then fit_closure.
ClosureSamples toy_closure_samples(const ToySystem& system, const RomTrajectory& reference, int keep);
ClosureOperators fit_toy_closure(const ToySystem& system, const RomTrajectory& reference, int keep,
                                 double ridge_lambda);

// Operators of the toy system viewed as a Galerkin system.
RomOperators toy_operators(const ToySystem& system);

}  // namespace romclose
