#include "coalstab/dense_solve.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "coalstab/errors.hpp"

namespace coalstab {

double DenseMatrix::max_abs() const {
  double best = 0.0;
  for (double v : data_) best = std::max(best, std::abs(v));
  return best;
}

std::vector<double> DenseMatrix::multiply(std::span<const double> x) const {
  std::vector<double> out(n_, 0.0);
  for (std::size_t r = 0; r < n_; ++r) {
    double acc = 0.0;
    for (std::size_t c = 0; c < n_; ++c) acc += (*this)(r, c) * x[c];
    out[r] = acc;
  }
  return out;
}

std::vector<double> solve_dense(DenseMatrix m, std::vector<double> rhs, double rel_pivot_tol) {
  const std::size_t n = m.size();
  if (rhs.size() != n) throw SingularSystem("right-hand side length does not match matrix");
  const double threshold = rel_pivot_tol * m.max_abs();

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(m(r, col)) > std::abs(m(pivot, col))) pivot = r;
    }
    if (!(std::abs(m(pivot, col)) > threshold)) {
      std::ostringstream msg;
      msg << "pivot " << m(pivot, col) << " below tolerance at column " << col;
      throw SingularSystem(msg.str());
    }
    if (pivot != col) {
      for (std::size_t c = col; c < n; ++c) std::swap(m(col, c), m(pivot, c));
      std::swap(rhs[col], rhs[pivot]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double factor = m(r, col) / m(col, col);
      if (factor == 0.0) continue;
      m(r, col) = 0.0;
      for (std::size_t c = col + 1; c < n; ++c) m(r, c) -= factor * m(col, c);
      rhs[r] -= factor * rhs[col];
    }
  }

  std::vector<double> x(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double acc = rhs[i];
    for (std::size_t c = i + 1; c < n; ++c) acc -= m(i, c) * x[c];
    x[i] = acc / m(i, i);
  }
  return x;
}

}  // namespace coalstab
