#include "romclose/fom.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <spdlog/spdlog.h>

#include "romclose/error.hpp"
#include "romclose/kernels.hpp"

namespace romclose {

Eigen::VectorXd InitialCondition::sample(const Grid1D& grid) const {
  const int n = grid.n_points();
  const double L = grid.domain_length();
  const bool dirichlet = grid.boundary() == Boundary::HomogeneousDirichlet;
  Eigen::VectorXd u(n);
  switch (kind) {
    case Kind::SinBump:
      for (int k = 0; k < n; ++k) {
        const double x = grid.x(k);
        u[k] = dirichlet ? amplitude * std::sin(std::numbers::pi * x / L)
                         : offset + amplitude * std::sin(2.0 * std::numbers::pi * x / L);
      }
      break;
    case Kind::StepProfile:
      for (int k = 0; k < n; ++k) {
        const double x = grid.x(k);
        u[k] = offset + ((x >= 0.25 * L && x < 0.75 * L) ? amplitude : 0.0);
      }
      break;
    case Kind::Custom:
      require(int(samples.size()) == n, ErrorKind::DimensionMismatch,
              "custom initial condition has " + std::to_string(samples.size()) +
                  " samples, grid has " + std::to_string(n));
      u = Eigen::Map<const Eigen::VectorXd>(samples.data(), n);
      break;
  }
  if (dirichlet) u[0] = u[n - 1] = 0.0;
  return u;
}

void FomConfig::validate() const {
  require(viscosity > 0.0, ErrorKind::InvalidArgument, "viscosity must be positive");
  require(dt > 0.0, ErrorKind::InvalidArgument, "dt must be positive");
  require(n_steps >= 1, ErrorKind::InvalidArgument, "n_steps must be at least 1");
  require(snapshot_stride >= 1, ErrorKind::InvalidArgument, "snapshot_stride must be positive");
  require(snapshot_count() >= 2, ErrorKind::InvalidArgument,
          "configuration yields fewer than two snapshots");
}

void SnapshotSet::validate() const {
  require(fields.rows() == grid.n_points(), ErrorKind::DimensionMismatch,
          "snapshot rows do not match grid");
  require(fields.cols() == times.size(), ErrorKind::DimensionMismatch,
          "snapshot columns do not match time stamps");
  for (Eigen::Index j = 1; j < times.size(); ++j)
    require(times[j] > times[j - 1], ErrorKind::InvalidArgument,
            "snapshot times must be strictly increasing");
}

SnapshotSet solve_burgers(const FomConfig& config, const Grid1D& grid) {
  config.validate();
  const int n = grid.n_points();
  const double h = grid.spacing();
  const double dt = config.dt;

  Eigen::VectorXd u = config.initial_condition.sample(grid);
  const double umax = u.cwiseAbs().maxCoeff();
  const double cfl_adv = config.advection ? dt * umax / h : 0.0;
  const double cfl_diff = dt * config.viscosity / (h * h);
  require(cfl_adv <= 1.0, ErrorKind::CflViolation,
          "advective CFL " + std::to_string(cfl_adv) + " exceeds 1");
  require(cfl_diff <= 0.5, ErrorKind::CflViolation,
          "diffusive number " + std::to_string(cfl_diff) + " exceeds 0.5");
  spdlog::debug("burgers: n={} h={:.3e} dt={:.3e} cfl_adv={:.3f} cfl_diff={:.3f}", n, h, dt,
                cfl_adv, cfl_diff);

  SnapshotSet out{grid, Eigen::VectorXd(config.snapshot_count()),
                  Eigen::MatrixXd(n, config.snapshot_count())};
  out.times[0] = 0.0;
  out.fields.col(0) = u;

  Eigen::VectorXd stage(n), k1(n), k2(n), k3(n), k4(n);
  auto rhs = [&](const Eigen::VectorXd& x, Eigen::VectorXd& k) {
    kernels::burgers_rhs(grid, config.viscosity, config.advection,
                         std::span<const double>(x.data(), size_t(n)),
                         std::span<double>(k.data(), size_t(n)));
  };

  int col = 1;
  for (int s = 1; s <= config.n_steps; ++s) {
    rhs(u, k1);
    stage = u + 0.5 * dt * k1;
    rhs(stage, k2);
    stage = u + 0.5 * dt * k2;
    rhs(stage, k3);
    stage = u + dt * k3;
    rhs(stage, k4);
    u += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!u.allFinite())
      throw Error(ErrorKind::NonFiniteState, "burgers state blew up at step " + std::to_string(s));
    if (s % config.snapshot_stride == 0) {
      out.times[col] = s * dt;
      out.fields.col(col) = u;
      ++col;
    }
  }
  return out;
}

void ToySystem::validate() const {
  require(B3.rows() == 3 && B3.dim() == 3, ErrorKind::DimensionMismatch, "toy tensor must be 3x3x3");
  bool finite = A3.allFinite() && a0.allFinite();
  for (double v : B3.values()) finite = finite && std::isfinite(v);
  require(finite, ErrorKind::InvalidArgument, "toy system entries must be finite");
}

ToySystem default_toy() {
  ToySystem toy;
  toy.A3 = Eigen::Vector3d(-0.01, -0.02, -1.0).asDiagonal();
  toy.B3(0, 1, 2) = 1.0;
  toy.B3(1, 0, 2) = -1.0;
  toy.B3(2, 0, 1) = 0.3;
  toy.a0 = Eigen::Vector3d(1.0, 1.0, 0.0);
  return toy;
}

RomTrajectory solve_toy(const ToySystem& system, double dt, int n_steps) {
  system.validate();
  const Eigen::MatrixXd A = system.A3;
  RomRhs rhs = [&](double, std::span<const double> a, std::span<double> out) {
    kernels::quadratic_form(A, system.B3, a, out, kernels::Exec::Serial);
  };
  return integrate_rk4(rhs, system.a0, 0.0, dt, n_steps, Variant::Toy);
}

}  // namespace romclose
