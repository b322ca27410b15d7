#pragma once

#include <cstddef>
#include <vector>

namespace romclose {

// rows x dim x dim tensor stored i-major, then m, then n (n fastest).
class Tensor3 {
 public:
  Tensor3() = default;
  Tensor3(int rows, int dim) : rows_(rows), dim_(dim), data_(size_t(rows) * dim * dim, 0.0) {}
  explicit Tensor3(int dim) : Tensor3(dim, dim) {}

  int rows() const { return rows_; }
  int dim() const { return dim_; }
  size_t size() const { return data_.size(); }

  double& operator()(int i, int m, int n) { return data_[index(i, m, n)]; }
  double operator()(int i, int m, int n) const { return data_[index(i, m, n)]; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  const std::vector<double>& values() const { return data_; }

  // Leading rows x dim x dim block.
  Tensor3 leading(int rows, int dim) const {
    Tensor3 out(rows, dim);
    for (int i = 0; i < rows; ++i)
      for (int m = 0; m < dim; ++m)
        for (int n = 0; n < dim; ++n) out(i, m, n) = (*this)(i, m, n);
    return out;
  }

  bool operator==(const Tensor3&) const = default;

 private:
  size_t index(int i, int m, int n) const {
    return (size_t(i) * dim_ + m) * dim_ + n;
  }

  int rows_ = 0;
  int dim_ = 0;
  std::vector<double> data_;
};

}  // namespace romclose
