#pragma once

#include <Eigen/Dense>

#include "romclose/pod.hpp"
#include "romclose/tensor.hpp"
#include "romclose/trajectory.hpp"

namespace romclose {

// Galerkin operators of a' = c + (A + L) a + a^T B a.
//
// A and B are the diffusion and convection operators of the modes. The
// constant c and matrix L only appear for a centered basis, where the mean
// field feeds back through the convection and diffusion terms; both are zero
// otherwise and the system reduces to a' = A a + a^T B a.
struct RomOperators {
  int r = 0;
  double viscosity = 0.0;
  bool centered = false;
  Eigen::MatrixXd A;              // r x r
  Tensor3 B;                      // r x r x r
  Eigen::VectorXd mean_constant;  // c, length r
  Eigen::MatrixXd mean_linear;    // L, r x r

  // Operators of the leading r' modes; identical to assembling at rank r'.
  RomOperators leading(int r_lead) const;

  Eigen::MatrixXd linear_part() const { return A + mean_linear; }
};

RomOperators assemble_operators(const PodBasis& basis, int r, double viscosity);

// Full Galerkin right-hand side at the operators' rank.
Eigen::VectorXd grom_rhs(const RomOperators& ops, const Eigen::Ref<const Eigen::VectorXd>& a);

// First `rows` components of the right-hand side; a has the full rank.
Eigen::VectorXd grom_rhs_rows(const RomOperators& ops, const Eigen::Ref<const Eigen::VectorXd>& a,
                              int rows);

RomRhs make_grom_rhs(const RomOperators& ops);

RomTrajectory integrate_rom(const RomRhs& rhs, const Eigen::VectorXd& a0, double dt, int n_steps,
                            Variant label = Variant::GROM, double t0 = 0.0);

}  // namespace romclose
