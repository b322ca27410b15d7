#include "romclose/galerkin.hpp"

#include <string>

#include "romclose/error.hpp"
#include "romclose/kernels.hpp"

namespace romclose {

RomOperators RomOperators::leading(int r_lead) const {
  require(r_lead >= 1 && r_lead <= r, ErrorKind::RankTooLarge,
          "leading rank " + std::to_string(r_lead) + " exceeds operator rank " + std::to_string(r));
  RomOperators out;
  out.r = r_lead;
  out.viscosity = viscosity;
  out.centered = centered;
  out.A = A.topLeftCorner(r_lead, r_lead);
  out.B = B.leading(r_lead, r_lead);
  out.mean_constant = mean_constant.head(r_lead);
  out.mean_linear = mean_linear.topLeftCorner(r_lead, r_lead);
  return out;
}

RomOperators assemble_operators(const PodBasis& basis, int r, double viscosity) {
  require(r >= 1 && r <= basis.rank(), ErrorKind::RankTooLarge,
          "rank " + std::to_string(r) + " exceeds basis rank " + std::to_string(basis.rank()));
  const Grid1D& grid = basis.grid;
  const Eigen::VectorXd& w = grid.quad_weights();
  const Eigen::MatrixXd phi = basis.modes.leftCols(r);
  const Eigen::MatrixXd dphi = grid.derivative_columns(phi);

  RomOperators ops;
  ops.r = r;
  ops.viscosity = viscosity;
  ops.centered = basis.centered;
  // Entry-wise dot products keep every entry independent of r, so the
  // operators at rank r are bitwise the leading blocks of those at rank R.
  const Eigen::MatrixXd wdphi = w.asDiagonal() * dphi;
  ops.A.resize(r, r);
  for (int m = 0; m < r; ++m)
    for (int i = 0; i < r; ++i) ops.A(i, m) = -viscosity * wdphi.col(i).dot(dphi.col(m));
  ops.B = kernels::assemble_convection(w, phi, dphi);
  ops.mean_constant = Eigen::VectorXd::Zero(r);
  ops.mean_linear = Eigen::MatrixXd::Zero(r, r);

  if (basis.centered) {
    const Eigen::VectorXd& ubar = basis.mean_field;
    const Eigen::VectorXd dubar = grid.derivative(ubar);
    const Eigen::MatrixXd wphi = w.asDiagonal() * phi;
    // c_i = -nu (ubar', phi_i') - (ubar ubar', phi_i)
    const Eigen::VectorXd uu = ubar.cwiseProduct(dubar);
    for (int i = 0; i < r; ++i)
      ops.mean_constant[i] = -viscosity * wdphi.col(i).dot(dubar) - wphi.col(i).dot(uu);
    // L_im = -(ubar phi_m', phi_i) - (phi_m ubar', phi_i)
    for (int m = 0; m < r; ++m) {
      const Eigen::VectorXd g = ubar.cwiseProduct(dphi.col(m)) + dubar.cwiseProduct(phi.col(m));
      for (int i = 0; i < r; ++i) ops.mean_linear(i, m) = -wphi.col(i).dot(g);
    }
  }
  return ops;
}

Eigen::VectorXd grom_rhs_rows(const RomOperators& ops, const Eigen::Ref<const Eigen::VectorXd>& a,
                              int rows) {
  require(a.size() == ops.r, ErrorKind::DimensionMismatch,
          "state length " + std::to_string(a.size()) + " does not match rank " + std::to_string(ops.r));
  require(rows >= 0 && rows <= ops.r, ErrorKind::DimensionMismatch, "row count exceeds rank");
  const Eigen::VectorXd state = a;
  Eigen::VectorXd out(rows);
  if (ops.centered) {
    const Eigen::MatrixXd lin = ops.linear_part();
    kernels::quadratic_form(lin, ops.B, {state.data(), size_t(ops.r)}, {out.data(), size_t(rows)});
    out += ops.mean_constant.head(rows);
  } else {
    kernels::quadratic_form(ops.A, ops.B, {state.data(), size_t(ops.r)}, {out.data(), size_t(rows)});
  }
  return out;
}

Eigen::VectorXd grom_rhs(const RomOperators& ops, const Eigen::Ref<const Eigen::VectorXd>& a) {
  return grom_rhs_rows(ops, a, ops.r);
}

RomRhs make_grom_rhs(const RomOperators& ops) {
  const Eigen::MatrixXd lin = ops.linear_part();
  const Eigen::VectorXd c = ops.mean_constant;
  const Tensor3 B = ops.B;
  const bool centered = ops.centered;
  return [lin, c, B, centered](double, std::span<const double> a, std::span<double> out) {
    kernels::quadratic_form(lin, B, a, out);
    if (centered)
      for (size_t i = 0; i < out.size(); ++i) out[i] += c[Eigen::Index(i)];
  };
}

RomTrajectory integrate_rom(const RomRhs& rhs, const Eigen::VectorXd& a0, double dt, int n_steps,
                            Variant label, double t0) {
  return integrate_rk4(rhs, a0, t0, dt, n_steps, label);
}

}  // namespace romclose
