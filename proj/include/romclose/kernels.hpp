#pragma once

// Hot loops of the pipeline. Every kernel has a serial reference and an
// OpenMP variant. Each output entry is produced by exactly one thread with the
// same summation order as the serial path, so both variants agree bitwise.

#include <span>

#include <Eigen/Dense>

#include "romclose/grid.hpp"
#include "romclose/tensor.hpp"

namespace romclose::kernels {

enum class Exec { Serial, Parallel };

// out = nu * D2 u - D1 (u^2/2), with D2 the compact second difference and D1
// the central first difference. Dirichlet end nodes get out = 0.
void burgers_rhs(const Grid1D& grid, double viscosity, bool advection,
                 std::span<const double> u, std::span<double> out,
                 Exec exec = Exec::Parallel);

// out_i = sum_m A_im a_m + sum_{m,n} B_imn a_m a_n for i < out.size().
// A may have more rows than out (only the leading rows are evaluated).
void quadratic_form(const Eigen::MatrixXd& A, const Tensor3& B,
                    std::span<const double> a, std::span<double> out,
                    Exec exec = Exec::Parallel);

// B_imn = -sum_k w_k modes(k,m) dmodes(k,n) modes(k,i).
Tensor3 assemble_convection(const Eigen::VectorXd& weights, const Eigen::MatrixXd& modes,
                            const Eigen::MatrixXd& dmodes, Exec exec = Exec::Parallel);

// Row j = (a_j, a_j (x) a_j) with the Kronecker block ordered m-major.
Eigen::MatrixXd quadratic_features(const Eigen::MatrixXd& coeffs, Exec exec = Exec::Parallel);

}  // namespace romclose::kernels
