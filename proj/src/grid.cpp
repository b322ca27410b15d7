#include "romclose/grid.hpp"

#include <cmath>
#include <string>

#include "romclose/error.hpp"

namespace romclose {

Grid1D::Grid1D(int n, double length, Boundary boundary)
    : n_points_(n), length_(length), boundary_(boundary) {
  require(length > 0.0, ErrorKind::InvalidArgument, "domain length must be positive");
  if (boundary == Boundary::Periodic) {
    require(n >= 3, ErrorKind::InvalidArgument, "periodic grid needs at least 3 points");
    spacing_ = length / n;
    weights_ = Eigen::VectorXd::Constant(n, spacing_);
  } else {
    require(n >= 3, ErrorKind::InvalidArgument, "Dirichlet grid needs at least 3 points");
    spacing_ = length / (n - 1);
    weights_ = Eigen::VectorXd::Constant(n, spacing_);
    weights_[0] = weights_[n - 1] = 0.5 * spacing_;
  }
}

Grid1D Grid1D::periodic(int n_points, double domain_length) {
  return Grid1D(n_points, domain_length, Boundary::Periodic);
}

Grid1D Grid1D::dirichlet(int n_points, double domain_length) {
  return Grid1D(n_points, domain_length, Boundary::HomogeneousDirichlet);
}

Eigen::VectorXd Grid1D::nodes() const {
  Eigen::VectorXd x(n_points_);
  for (int k = 0; k < n_points_; ++k) x[k] = k * spacing_;
  return x;
}

double Grid1D::inner(const Eigen::Ref<const Eigen::VectorXd>& f,
                     const Eigen::Ref<const Eigen::VectorXd>& g) const {
  require(f.size() == n_points_ && g.size() == n_points_, ErrorKind::DimensionMismatch,
          "field length does not match grid");
  double s = 0.0;
  for (int k = 0; k < n_points_; ++k) s += weights_[k] * f[k] * g[k];
  return s;
}

double Grid1D::norm(const Eigen::Ref<const Eigen::VectorXd>& f) const {
  return std::sqrt(inner(f, f));
}

Eigen::VectorXd Grid1D::derivative(const Eigen::Ref<const Eigen::VectorXd>& f) const {
  require(f.size() == n_points_, ErrorKind::DimensionMismatch, "field length does not match grid");
  const int n = n_points_;
  const double inv2h = 0.5 / spacing_;
  Eigen::VectorXd d(n);
  for (int k = 1; k < n - 1; ++k) d[k] = (f[k + 1] - f[k - 1]) * inv2h;
  if (boundary_ == Boundary::Periodic) {
    d[0] = (f[1] - f[n - 1]) * inv2h;
    d[n - 1] = (f[0] - f[n - 2]) * inv2h;
  } else {
    d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * inv2h;
    d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) * inv2h;
  }
  return d;
}

Eigen::MatrixXd Grid1D::derivative_columns(const Eigen::MatrixXd& f) const {
  Eigen::MatrixXd d(f.rows(), f.cols());
  for (Eigen::Index j = 0; j < f.cols(); ++j) d.col(j) = derivative(f.col(j));
  return d;
}

bool Grid1D::operator==(const Grid1D& other) const {
  return n_points_ == other.n_points_ && length_ == other.length_ &&
         boundary_ == other.boundary_;
}

const char* to_string(Boundary b) {
  return b == Boundary::Periodic ? "periodic" : "dirichlet";
}

Boundary boundary_from_string(const std::string& s) {
  if (s == "periodic") return Boundary::Periodic;
  if (s == "dirichlet") return Boundary::HomogeneousDirichlet;
  throw Error(ErrorKind::InvalidArgument, "unknown boundary '" + s + "'");
}

}  // namespace romclose
