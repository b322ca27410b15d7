#include "romclose/closure.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <spdlog/spdlog.h>

#include "romclose/error.hpp"
#include "romclose/kernels.hpp"

namespace romclose {

ClosureOperators ClosureOperators::zero(int r) {
  ClosureOperators c;
  c.r = r;
  c.A_tilde = Eigen::MatrixXd::Zero(r, r);
  c.B_tilde = Tensor3(r);
  return c;
}

ClosureSamples extract_closure_samples(const RomOperators& ops_full, const Eigen::VectorXd& times,
                                       const Eigen::MatrixXd& a_full, int r) {
  const int R = ops_full.r;
  require(r >= 1, ErrorKind::InvalidArgument, "resolved rank must be positive");
  require(r < R, ErrorKind::RankNotStrictlySmaller,
          "resolved rank " + std::to_string(r) + " must be below full rank " + std::to_string(R));
  require(a_full.cols() == R && a_full.rows() == times.size(), ErrorKind::DimensionMismatch,
          "coefficient history does not match operators/time stamps");

  const RomOperators ops_r = ops_full.leading(r);
  ClosureSamples s{times, Eigen::MatrixXd(times.size(), r), a_full, r, R};
  for (Eigen::Index j = 0; j < times.size(); ++j) {
    const Eigen::VectorXd a = a_full.row(j).transpose();
    const Eigen::VectorXd full = grom_rhs_rows(ops_full, a, r);
    const Eigen::VectorXd trunc = grom_rhs(ops_r, a.head(r));
    s.tau.row(j) = (full - trunc).transpose();
  }
  require(s.tau.allFinite(), ErrorKind::NonFiniteState, "closure samples are not finite");
  return s;
}

ClosureSamples extract_closure_samples(const PodBasis& basis, const SnapshotSet& snapshots, int r,
                                       double viscosity) {
  const int R = basis.rank();
  require(r <= R, ErrorKind::RankTooLarge, "resolved rank exceeds basis rank");
  require(r < R, ErrorKind::RankNotStrictlySmaller, "resolved rank must be below basis rank");
  const RomOperators ops_full = assemble_operators(basis, R, viscosity);
  const CoefficientSeries series = project_series(basis, snapshots, R);
  return extract_closure_samples(ops_full, series.times, series.coeffs, r);
}

double auto_ridge_lambda(const ClosureSamples& samples) {
  const Eigen::MatrixXd phi = kernels::quadratic_features(samples.resolved());
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(phi);
  const double smax = svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
  return kAutoRidgeFactor * smax * smax;
}

namespace {

// Condition of the regularized normal system. The r(r-1)/2 duplicated products
// a_m a_n = a_n a_m form an exact null space of the features and are excluded.
double condition_estimate(const Eigen::MatrixXd& phi, int r, double ridge_lambda) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(phi);
  const Eigen::VectorXd& s = svd.singularValues();
  const Eigen::Index identifiable = r + r * (r + 1) / 2;
  const Eigen::Index effective = std::min<Eigen::Index>(s.size(), identifiable);
  if (effective == 0) return std::numeric_limits<double>::infinity();
  const double smax = s[0];
  const double smin = s[effective - 1];
  const double denom = smin * smin + ridge_lambda;
  if (denom <= 0.0) return std::numeric_limits<double>::infinity();
  return (smax * smax + ridge_lambda) / denom;
}

}  // namespace

ClosureOperators fit_closure(const ClosureSamples& samples, double ridge_lambda) {
  const Eigen::Index M = samples.tau.rows();
  const int r = samples.r;
  require(M >= 2, ErrorKind::InsufficientSamples, "need at least two samples, got " + std::to_string(M));
  require(ridge_lambda >= 0.0 && std::isfinite(ridge_lambda), ErrorKind::InvalidArgument,
          "ridge weight must be finite and non-negative");
  require(r >= 1 && samples.tau.cols() == r && samples.a_full.rows() == M &&
              samples.a_full.cols() >= r,
          ErrorKind::DimensionMismatch, "closure samples are inconsistent");
  const int p = r + r * r;
  if (M < r + r * (r + 1) / 2)
    spdlog::warn("closure fit: {} samples for {} identifiable unknowns per row", M,
                 r + r * (r + 1) / 2);

  const Eigen::MatrixXd phi = kernels::quadratic_features(samples.resolved());

  ClosureOperators out = ClosureOperators::zero(r);
  out.ridge_lambda = ridge_lambda;
  out.condition = condition_estimate(phi, r, ridge_lambda);
  if (out.condition > kIllConditioned)
    spdlog::warn("closure fit: IllConditioned, condition estimate {:.3e} (lambda={:.3e})",
                 out.condition, ridge_lambda);

  // Ridge as an augmented least-squares system [phi; sqrt(lambda) I] x = [tau; 0].
  Eigen::MatrixXd lhs = phi;
  Eigen::MatrixXd rhs = samples.tau;
  if (ridge_lambda > 0.0) {
    lhs.conservativeResize(M + p, Eigen::NoChange);
    lhs.bottomRows(p) = std::sqrt(ridge_lambda) * Eigen::MatrixXd::Identity(p, p);
    rhs.conservativeResize(M + p, Eigen::NoChange);
    rhs.bottomRows(p).setZero();
  }
  const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(lhs);

  // Each output row is its own least-squares problem sharing the factorization.
  Eigen::MatrixXd coef(p, r);
#pragma omp parallel for schedule(static) if (r >= 8)
  for (int i = 0; i < r; ++i) coef.col(i) = cod.solve(rhs.col(i));

  for (int i = 0; i < r; ++i) {
    for (int m = 0; m < r; ++m) out.A_tilde(i, m) = coef(m, i);
    for (int m = 0; m < r; ++m)
      for (int n = 0; n < r; ++n)
        out.B_tilde(i, m, n) = 0.5 * (coef(r + m * r + n, i) + coef(r + n * r + m, i));
  }
  require(coef.allFinite(), ErrorKind::NonFiniteState, "closure fit produced non-finite operators");

  const double tau_norm = samples.tau.norm();
  out.residual_rel = tau_norm > 0.0 ? (samples.tau - phi * coef).norm() / tau_norm : 0.0;
  spdlog::info("closure fit: r={} M={} lambda={:.3e} residual_rel={:.4e} cond={:.3e}", r, M,
               ridge_lambda, out.residual_rel, out.condition);
  return out;
}

Eigen::VectorXd d2vms_rhs(const RomOperators& ops, const ClosureOperators& closure,
                          const Eigen::Ref<const Eigen::VectorXd>& a) {
  require(closure.r == ops.r, ErrorKind::DimensionMismatch, "closure rank does not match operators");
  Eigen::VectorXd out = grom_rhs(ops, a);
  const Eigen::VectorXd state = a;
  Eigen::VectorXd corr(ops.r);
  kernels::quadratic_form(closure.A_tilde, closure.B_tilde, {state.data(), size_t(ops.r)},
                          {corr.data(), size_t(ops.r)});
  out += corr;
  return out;
}

RomRhs make_d2vms_rhs(const RomOperators& ops, const ClosureOperators& closure) {
  require(closure.r == ops.r, ErrorKind::DimensionMismatch, "closure rank does not match operators");
  RomRhs base = make_grom_rhs(ops);
  const Eigen::MatrixXd At = closure.A_tilde;
  const Tensor3 Bt = closure.B_tilde;
  return [base, At, Bt](double t, std::span<const double> a, std::span<double> out) {
    base(t, a, out);
    Eigen::VectorXd corr(Eigen::Index(out.size()));
    kernels::quadratic_form(At, Bt, a, {corr.data(), out.size()});
    for (size_t i = 0; i < out.size(); ++i) out[i] += corr[Eigen::Index(i)];
  };
}

UnresolvedInterpolant::UnresolvedInterpolant(const Eigen::VectorXd& times,
                                             const Eigen::MatrixXd& unresolved) {
  require(times.size() == unresolved.rows() && times.size() >= 1, ErrorKind::DimensionMismatch,
          "unresolved history does not match time stamps");
  track_.times = times;
  track_.coeffs = unresolved;
  track_.label = Variant::IROM;
}

UnresolvedInterpolant::UnresolvedInterpolant(const ClosureSamples& samples)
    : UnresolvedInterpolant(samples.times, samples.a_full.rightCols(samples.R - samples.r)) {}

Eigen::VectorXd irom_rhs(const RomOperators& ops_full, int r,
                         const Eigen::Ref<const Eigen::VectorXd>& a_resolved,
                         const UnresolvedInterpolant& unresolved, double t) {
  require(r >= 1 && r < ops_full.r, ErrorKind::RankNotStrictlySmaller,
          "resolved rank must be below the full operator rank");
  require(a_resolved.size() == r && unresolved.size() == ops_full.r - r,
          ErrorKind::DimensionMismatch, "resolved/unresolved sizes do not add up to R");
  Eigen::VectorXd a(ops_full.r);
  a.head(r) = a_resolved;
  a.tail(ops_full.r - r) = unresolved(t);
  return grom_rhs_rows(ops_full, a, r);
}

RomRhs make_irom_rhs(const RomOperators& ops_full, int r, UnresolvedInterpolant unresolved) {
  require(r >= 1 && r < ops_full.r, ErrorKind::RankNotStrictlySmaller,
          "resolved rank must be below the full operator rank");
  require(unresolved.size() == ops_full.r - r, ErrorKind::DimensionMismatch,
          "unresolved interpolant has the wrong width");
  const int R = ops_full.r;
  const Eigen::MatrixXd lin = ops_full.linear_part();
  const Eigen::VectorXd c = ops_full.mean_constant;
  const Tensor3 B = ops_full.B;
  const bool centered = ops_full.centered;
  return [=](double t, std::span<const double> a_res, std::span<double> out) {
    Eigen::VectorXd a(R);
    for (int i = 0; i < r; ++i) a[i] = a_res[size_t(i)];
    a.tail(R - r) = unresolved(t);
    kernels::quadratic_form(lin, B, {a.data(), size_t(R)}, out);
    if (centered)
      for (int i = 0; i < r; ++i) out[size_t(i)] += c[i];
  };
}

RomOperators toy_operators(const ToySystem& system) {
  system.validate();
  RomOperators ops;
  ops.r = 3;
  ops.A = system.A3;
  ops.B = system.B3;
  ops.mean_constant = Eigen::VectorXd::Zero(3);
  ops.mean_linear = Eigen::MatrixXd::Zero(3, 3);
  return ops;
}

ClosureSamples toy_closure_samples(const ToySystem& system, const RomTrajectory& reference, int keep) {
  require(reference.rank() == 3, ErrorKind::DimensionMismatch, "toy reference must have 3 modes");
  return extract_closure_samples(toy_operators(system), reference.times, reference.coeffs, keep);
}

ClosureOperators fit_toy_closure(const ToySystem& system, const RomTrajectory& reference, int keep,
                                 double ridge_lambda) {
  return fit_closure(toy_closure_samples(system, reference, keep), ridge_lambda);
}

}  // namespace romclose
