#include "romclose/kernels.hpp"

#include "romclose/error.hpp"

namespace romclose::kernels {
namespace {

constexpr int kStencilParallelMin = 4096;
constexpr int kDenseParallelMin = 8;

inline double burgers_node(const double* u, int km, int k, int kp, double nu_h2,
                           double inv4h, bool advection) {
  double v = nu_h2 * (u[kp] - 2.0 * u[k] + u[km]);
  if (advection) v -= (u[kp] * u[kp] - u[km] * u[km]) * inv4h;
  return v;
}

inline double quadratic_row(const Eigen::MatrixXd& A, const Tensor3& B, const double* a,
                            int dim, int i) {
  double lin = 0.0;
  for (int m = 0; m < dim; ++m) lin += A(i, m) * a[m];
  double quad = 0.0;
  for (int m = 0; m < dim; ++m) {
    double inner = 0.0;
    for (int n = 0; n < dim; ++n) inner += B(i, m, n) * a[n];
    quad += a[m] * inner;
  }
  return lin + quad;
}

}  // namespace

void burgers_rhs(const Grid1D& grid, double viscosity, bool advection,
                 std::span<const double> u, std::span<double> out, Exec exec) {
  const int n = grid.n_points();
  require(int(u.size()) == n && int(out.size()) == n, ErrorKind::DimensionMismatch,
          "burgers_rhs: state length does not match grid");
  const double h = grid.spacing();
  const double nu_h2 = viscosity / (h * h);
  const double inv4h = 0.25 / h;
  const double* up = u.data();
  double* op = out.data();
  const bool par = exec == Exec::Parallel && n >= kStencilParallelMin;

#pragma omp parallel for schedule(static) if (par)
  for (int k = 1; k < n - 1; ++k) op[k] = burgers_node(up, k - 1, k, k + 1, nu_h2, inv4h, advection);

  if (grid.boundary() == Boundary::Periodic) {
    op[0] = burgers_node(up, n - 1, 0, 1, nu_h2, inv4h, advection);
    op[n - 1] = burgers_node(up, n - 2, n - 1, 0, nu_h2, inv4h, advection);
  } else {
    op[0] = 0.0;
    op[n - 1] = 0.0;
  }
}

void quadratic_form(const Eigen::MatrixXd& A, const Tensor3& B, std::span<const double> a,
                    std::span<double> out, Exec exec) {
  const int dim = int(a.size());
  const int rows = int(out.size());
  require(A.cols() == dim && B.dim() == dim && A.rows() >= rows && B.rows() >= rows,
          ErrorKind::DimensionMismatch, "quadratic_form: operator/state dimensions disagree");
  const bool par = exec == Exec::Parallel && rows >= kDenseParallelMin;
#pragma omp parallel for schedule(static) if (par)
  for (int i = 0; i < rows; ++i) out[i] = quadratic_row(A, B, a.data(), dim, i);
}

Tensor3 assemble_convection(const Eigen::VectorXd& weights, const Eigen::MatrixXd& modes,
                            const Eigen::MatrixXd& dmodes, Exec exec) {
  const int r = int(modes.cols());
  const Eigen::Index npts = modes.rows();
  require(dmodes.rows() == npts && dmodes.cols() == r && weights.size() == npts,
          ErrorKind::DimensionMismatch, "assemble_convection: mode shapes disagree");
  Tensor3 B(r);
  const bool par = exec == Exec::Parallel && r >= 2;
#pragma omp parallel for schedule(static) if (par)
  for (int i = 0; i < r; ++i) {
    // w_k phi_i[k], shared across all (m, n) of this row.
    const Eigen::VectorXd wphi = weights.cwiseProduct(modes.col(i));
    for (int m = 0; m < r; ++m) {
      for (int n = 0; n < r; ++n) {
        double s = 0.0;
        for (Eigen::Index k = 0; k < npts; ++k) s += wphi[k] * modes(k, m) * dmodes(k, n);
        B(i, m, n) = -s;
      }
    }
  }
  return B;
}

Eigen::MatrixXd quadratic_features(const Eigen::MatrixXd& coeffs, Exec exec) {
  const Eigen::Index M = coeffs.rows();
  const int r = int(coeffs.cols());
  Eigen::MatrixXd phi(M, r + r * r);
  const bool par = exec == Exec::Parallel && M >= 256;
#pragma omp parallel for schedule(static) if (par)
  for (Eigen::Index j = 0; j < M; ++j) {
    for (int m = 0; m < r; ++m) phi(j, m) = coeffs(j, m);
    for (int m = 0; m < r; ++m)
      for (int n = 0; n < r; ++n) phi(j, r + m * r + n) = coeffs(j, m) * coeffs(j, n);
  }
  return phi;
}

}  // namespace romclose::kernels
