#pragma once

#include <string>

#include <Eigen/Dense>

namespace romclose {

enum class Boundary { Periodic, HomogeneousDirichlet };

// Uniform 1D grid carrying the discrete L2 inner product.
//
// Periodic grids store n nodes x_k = k*h with h = L/n (the node at x = L is
// the image of x = 0). Dirichlet grids store both endpoints, h = L/(n-1), and
// use trapezoid weights.
class Grid1D {
 public:
  static Grid1D periodic(int n_points, double domain_length);
  static Grid1D dirichlet(int n_points, double domain_length);

  int n_points() const { return n_points_; }
  double domain_length() const { return length_; }
  double spacing() const { return spacing_; }
  Boundary boundary() const { return boundary_; }
  const Eigen::VectorXd& quad_weights() const { return weights_; }

  double x(int k) const { return k * spacing_; }
  Eigen::VectorXd nodes() const;

  // (f, g)_W
  double inner(const Eigen::Ref<const Eigen::VectorXd>& f,
               const Eigen::Ref<const Eigen::VectorXd>& g) const;
  double norm(const Eigen::Ref<const Eigen::VectorXd>& f) const;

  // Second-order central difference; one-sided second order at Dirichlet ends.
  Eigen::VectorXd derivative(const Eigen::Ref<const Eigen::VectorXd>& f) const;
  Eigen::MatrixXd derivative_columns(const Eigen::MatrixXd& f) const;

  bool operator==(const Grid1D& other) const;

 private:
  Grid1D(int n, double length, Boundary boundary);

  int n_points_;
  double length_;
  double spacing_;
  Boundary boundary_;
  Eigen::VectorXd weights_;
};

const char* to_string(Boundary b);
Boundary boundary_from_string(const std::string& s);

}  // namespace romclose
