#include <doctest.h>

#include <cmath>

#include "romclose/error.hpp"
#include "romclose/fom.hpp"
#include "support.hpp"

using namespace romclose;

TEST_CASE("zero initial state stays zero") {
  FomConfig cfg;
  cfg.viscosity = 0.3;
  cfg.dt = 1e-3;
  cfg.n_steps = 200;
  cfg.snapshot_stride = 50;
  cfg.initial_condition.kind = InitialCondition::Kind::SinBump;
  cfg.initial_condition.offset = 0.0;
  cfg.initial_condition.amplitude = 0.0;
  const SnapshotSet s = solve_burgers(cfg, Grid1D::periodic(64, 2 * M_PI));
  CHECK(s.count() == 5);
  CHECK(s.fields.cwiseAbs().maxCoeff() == 0.0);
  CHECK(s.times[0] == 0.0);
  CHECK(s.times[4] == doctest::Approx(0.2));
}

TEST_CASE("heat limit matches exp(-t) sin(x)") {
  // Advection off, nu = 1: u = e^{-t} sin x exactly for the PDE.
  for (int n : {64, 128}) {
    const Grid1D g = Grid1D::periodic(n, 2 * M_PI);
    FomConfig cfg;
    cfg.viscosity = 1.0;
    cfg.advection = false;
    cfg.dt = 0.4 * g.spacing() * g.spacing();
    cfg.n_steps = int(std::ceil(1.0 / cfg.dt));
    cfg.snapshot_stride = std::max(1, cfg.n_steps / 10);
    cfg.initial_condition.offset = 0.0;
    cfg.initial_condition.amplitude = 1.0;
    const SnapshotSet s = solve_burgers(cfg, g);
    const double h2 = g.spacing() * g.spacing();
    const double dt4 = std::pow(cfg.dt, 4);
    for (int j = 0; j < s.count(); ++j) {
      const double t = s.times[j];
      double err = 0.0;
      for (int k = 0; k < n; ++k)
        err = std::max(err, std::abs(s.fields(k, j) - std::exp(-t) * std::sin(g.x(k))));
      CHECK(err <= 10.0 * (h2 + dt4) * t + 1e-14);
    }
  }
}

TEST_CASE("discrete mass is conserved on the benchmark setup") {
  const SnapshotSet s = solve_burgers(testing::benchmark_fom_config(5000, 25), testing::benchmark_grid());
  const Eigen::VectorXd& w = s.grid.quad_weights();
  const double m0 = w.dot(s.fields.col(0));
  REQUIRE(m0 == doctest::Approx(2 * M_PI).epsilon(1e-12));
  double drift = 0.0;
  for (int j = 0; j < s.count(); ++j) drift = std::max(drift, std::abs(w.dot(s.fields.col(j)) - m0));
  CHECK(drift / m0 <= 1e-8);

  // Refined reference: the same setup on twice the grid conserves the same mass.
  FomConfig fine = testing::benchmark_fom_config(5000, 5000);
  fine.dt = 5e-4;
  fine.n_steps = 10000;
  fine.snapshot_stride = 10000;
  const SnapshotSet r = solve_burgers(fine, Grid1D::periodic(1024, 2 * M_PI));
  const double mf = r.grid.quad_weights().dot(r.fields.col(r.count() - 1));
  CHECK(std::abs(mf - m0) / m0 <= 1e-8);
}

TEST_CASE("energy decays without advection") {
  const Grid1D g = Grid1D::periodic(128, 2 * M_PI);
  FomConfig cfg;
  cfg.viscosity = 0.05;
  cfg.advection = false;
  cfg.dt = 1e-3;
  cfg.n_steps = 2000;
  cfg.snapshot_stride = 20;
  cfg.initial_condition.kind = InitialCondition::Kind::StepProfile;
  const SnapshotSet s = solve_burgers(cfg, g);
  for (int j = 1; j < s.count(); ++j)
    CHECK(g.inner(s.fields.col(j), s.fields.col(j)) <= g.inner(s.fields.col(j - 1), s.fields.col(j - 1)));
}

TEST_CASE("burgers solve is deterministic") {
  const SnapshotSet a = testing::small_burgers();
  const SnapshotSet b = testing::small_burgers();
  CHECK(a.fields == b.fields);
  CHECK(a.times == b.times);
}

TEST_CASE("dirichlet solve keeps the boundary at zero") {
  const SnapshotSet s = testing::small_burgers(Boundary::HomogeneousDirichlet, 65);
  CHECK(s.fields.row(0).cwiseAbs().maxCoeff() == 0.0);
  CHECK(s.fields.row(64).cwiseAbs().maxCoeff() == 0.0);
  CHECK(s.fields.cwiseAbs().maxCoeff() > 0.1);
}

TEST_CASE("CFL violations are rejected") {
  const Grid1D g = Grid1D::periodic(512, 2 * M_PI);
  FomConfig cfg = testing::benchmark_fom_config(100, 10);
  cfg.dt = 0.05;  // advective number 1.5 * 0.05 / 0.0123 > 1
  try {
    solve_burgers(cfg, g);
    FAIL("expected CflViolation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CflViolation);
  }
  cfg.dt = 1e-3;
  cfg.viscosity = 1.0;  // diffusive number 6.6 > 0.5
  try {
    solve_burgers(cfg, g);
    FAIL("expected CflViolation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CflViolation);
  }
}

TEST_CASE("config validation") {
  FomConfig cfg;
  cfg.n_steps = 10;
  cfg.snapshot_stride = 20;  // one snapshot only
  CHECK_THROWS_AS(cfg.validate(), Error);
  InitialCondition ic;
  ic.kind = InitialCondition::Kind::Custom;
  ic.samples = {1.0, 2.0};
  CHECK_THROWS_AS(ic.sample(Grid1D::periodic(8, 1.0)), Error);
}

TEST_CASE("toy: zero operators give a constant trajectory") {
  ToySystem toy;
  toy.a0 = Eigen::Vector3d(1, 2, 3);
  const RomTrajectory t = solve_toy(toy, 0.01, 100);
  for (int j = 0; j < t.n_samples(); ++j) CHECK(t.coeffs.row(j) == toy.a0.transpose());
}

TEST_CASE("toy: decoupled linear decay") {
  ToySystem toy;
  toy.A3 = -Eigen::Matrix3d::Identity();
  toy.a0 = Eigen::Vector3d(1, 0, 0);
  const double dt = 0.01;
  const RomTrajectory t = solve_toy(toy, dt, 200);
  double err = 0.0;
  for (int j = 0; j < t.n_samples(); ++j) err = std::max(err, std::abs(t.coeffs(j, 0) - std::exp(-t.times[j])));
  CHECK(err < 1e-9);  // RK4 local error ~ dt^5/120, global O(dt^4)
  CHECK(t.coeffs.col(1).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("toy: default system stays bounded") {
  const ToySystem toy = default_toy();
  const RomTrajectory t = solve_toy(toy, 1e-3, 20000);
  double max_norm = 0.0;
  for (int j = 0; j < t.n_samples(); ++j) max_norm = std::max(max_norm, t.coeffs.row(j).norm());
  CHECK(max_norm <= 5.0);

  // Reference solve at dt = 1e-5 agrees on the bound and on the terminal state.
  const RomTrajectory ref = solve_toy(toy, 1e-5, 2000000);
  double ref_max = 0.0;
  for (int j = 0; j < ref.n_samples(); j += 100) ref_max = std::max(ref_max, ref.coeffs.row(j).norm());
  CHECK(ref_max <= 5.0);
  CHECK((t.coeffs.bottomRows(1) - ref.coeffs.bottomRows(1)).norm() < 1e-9);
}

TEST_CASE("toy: RK4 converges at fourth order") {
  const ToySystem toy = default_toy();
  const double T = 2.0;
  const RomTrajectory ref = solve_toy(toy, 1e-6, int(std::lround(T / 1e-6)));
  const Eigen::RowVectorXd target = ref.coeffs.bottomRows(1);
  auto terminal_error = [&](double dt) {
    const RomTrajectory t = solve_toy(toy, dt, int(std::lround(T / dt)));
    return (t.coeffs.bottomRows(1) - target).norm();
  };
  const double factor = terminal_error(0.1) / terminal_error(0.05);
  CHECK(factor >= 12.0);
  CHECK(factor <= 20.0);
}

TEST_CASE("toy: blow-up is reported") {
  ToySystem toy;
  toy.B3(0, 0, 0) = 1.0;  // a' = a^2 blows up at t = 1/a0
  toy.a0 = Eigen::Vector3d(10.0, 0.0, 0.0);
  try {
    solve_toy(toy, 1e-3, 100000);
    FAIL("expected NonFiniteState");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonFiniteState);
  }
}
