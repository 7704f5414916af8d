#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace coalstab {

/// Row-major square matrix, sized for desk-scale systems (n up to a few hundred).
class DenseMatrix {
 public:
  explicit DenseMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

  std::size_t size() const { return n_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }

  double max_abs() const;
  std::vector<double> multiply(std::span<const double> x) const;

 private:
  std::size_t n_;
  std::vector<double> data_;
};

/// Gaussian elimination with partial pivoting. Throws SingularSystem when a
/// pivot magnitude falls below rel_pivot_tol * max|M|.
std::vector<double> solve_dense(DenseMatrix m, std::vector<double> rhs,
                                double rel_pivot_tol = 1e-12);

}  // namespace coalstab
