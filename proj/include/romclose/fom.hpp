#pragma once

#include <vector>

#include <Eigen/Dense>

#include "romclose/grid.hpp"
#include "romclose/tensor.hpp"
#include "romclose/trajectory.hpp"

namespace romclose {

struct InitialCondition {
  enum class Kind { SinBump, StepProfile, Custom };

  Kind kind = Kind::SinBump;
  // SinBump: offset + amplitude*sin(2 pi x / L) on periodic grids and
  // amplitude*sin(pi x / L) on Dirichlet grids.
  // StepProfile: offset + amplitude on [L/4, 3L/4), offset elsewhere.
  double offset = 1.0;
  double amplitude = 0.5;
  std::vector<double> samples;  // Custom only, one value per node

  Eigen::VectorXd sample(const Grid1D& grid) const;
};

struct FomConfig {
  double viscosity = 0.01;
  double dt = 1e-3;
  int n_steps = 20000;
  int snapshot_stride = 20;
  InitialCondition initial_condition;
  // Debug switch: drop the -(u^2/2)_x term, leaving the heat equation.
  bool advection = true;

  int snapshot_count() const { return n_steps / snapshot_stride + 1; }
  void validate() const;
};

struct SnapshotSet {
  Grid1D grid;
  Eigen::VectorXd times;   // M, strictly increasing
  Eigen::MatrixXd fields;  // n_points x M

  int count() const { return int(fields.cols()); }
  void validate() const;
};

// Viscous Burgers u_t = nu u_xx - (u^2/2)_x, central differences, RK4.
SnapshotSet solve_burgers(const FomConfig& config, const Grid1D& grid);

// Three-mode quadratic system a' = A3 a + a^T B3 a.
struct ToySystem {
  Eigen::Matrix3d A3 = Eigen::Matrix3d::Zero();
  Tensor3 B3 = Tensor3(3);
  Eigen::Vector3d a0 = Eigen::Vector3d::Zero();

  void validate() const;
};

ToySystem default_toy();

RomTrajectory solve_toy(const ToySystem& system, double dt, int n_steps);

}  // namespace romclose
