#ifndef TPLAG_NAIVE_HPP
#define TPLAG_NAIVE_HPP

#include <cmath>
#include <cstddef>
#include <vector>

#include "tplag/errors.hpp"
#include "tplag/matrix.hpp"

namespace tplag {

// Structure-blind reference solver: Householder QR on the explicitly formed
// collocation matrix, entirely in working precision. Exists to exhibit the
// accuracy gap against the decomposition-based pipeline.
class HouseholderQR {
 public:
  explicit HouseholderQR(Matrix<double> a) : a_(std::move(a)) {
    const std::size_t m = a_.rows(), n = a_.cols();
    if (m < n) throw DimensionMismatch("HouseholderQR: need rows >= cols");
    beta_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      double norm = 0;
      for (std::size_t i = k; i < m; ++i) norm += a_(i, k) * a_(i, k);
      norm = std::sqrt(norm);
      if (norm == 0) throw RankDeficient("HouseholderQR: zero column");
      const double alpha = a_(k, k) >= 0 ? -norm : norm;
      const double v0 = a_(k, k) - alpha;
      a_(k, k) = alpha;
      double vtv = v0 * v0;
      for (std::size_t i = k + 1; i < m; ++i) vtv += a_(i, k) * a_(i, k);
      beta_[k] = vtv == 0 ? 0 : 2.0 / vtv;
      v0_.push_back(v0);
      for (std::size_t j = k + 1; j < n; ++j) {
        double dot = v0 * a_(k, j);
        for (std::size_t i = k + 1; i < m; ++i) dot += a_(i, k) * a_(i, j);
        dot *= beta_[k];
        a_(k, j) -= dot * v0;
        for (std::size_t i = k + 1; i < m; ++i) a_(i, j) -= dot * a_(i, k);
      }
    }
  }

  // x minimizing ||b - A x||_2
  std::vector<double> solve_ls(std::vector<double> b) const {
    const std::size_t m = a_.rows(), n = a_.cols();
    if (b.size() != m) throw DimensionMismatch("HouseholderQR::solve_ls");
    for (std::size_t k = 0; k < n; ++k) {
      double dot = v0_[k] * b[k];
      for (std::size_t i = k + 1; i < m; ++i) dot += a_(i, k) * b[i];
      dot *= beta_[k];
      b[k] -= dot * v0_[k];
      for (std::size_t i = k + 1; i < m; ++i) b[i] -= dot * a_(i, k);
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
      double s = b[i];
      for (std::size_t j = i + 1; j < n; ++j) s -= a_(i, j) * x[j];
      x[i] = s / a_(i, i);
    }
    return x;
  }

  // pinv(A) = R^{-1} Q1^T, one least squares solve per unit vector.
  Matrix<double> pinv() const {
    const std::size_t m = a_.rows(), n = a_.cols();
    Matrix<double> g(n, m);
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<double> e(m, 0.0);
      e[j] = 1.0;
      const std::vector<double> col = solve_ls(std::move(e));
      for (std::size_t i = 0; i < n; ++i) g(i, j) = col[i];
    }
    return g;
  }

 private:
  Matrix<double> a_;           // R in the upper triangle, Householder tails below
  std::vector<double> beta_;
  std::vector<double> v0_;     // leading component of each Householder vector
};

inline std::vector<double> naive_ls_solve(const Matrix<double>& a, const std::vector<double>& b) {
  return HouseholderQR(a).solve_ls(b);
}

inline Matrix<double> naive_pinv(const Matrix<double>& a) { return HouseholderQR(a).pinv(); }

inline Matrix<double> naive_projection(const Matrix<double>& a) {
  return matmul(a, naive_pinv(a));
}

}  // namespace tplag

#endif  // TPLAG_NAIVE_HPP
