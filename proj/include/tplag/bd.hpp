#ifndef TPLAG_BD_HPP
#define TPLAG_BD_HPP

#include <cstddef>
#include <vector>

#include "tplag/errors.hpp"
#include "tplag/matrix.hpp"
#include "tplag/nic_audit.hpp"
#include "tplag/node_config.hpp"

namespace tplag {

// Packed bidiagonal decomposition of an (l+1)x(n+1) strictly totally positive
// collocation matrix A:
//   entry (i,i)        diagonal pivot p_{ii} of the Neville elimination of A
//   entry (i,j), i > j multiplier m_{ij} of the Neville elimination of A
//   entry (i,j), i < j multiplier mt_{ji} of the Neville elimination of A^T
// The packing encodes A = F_l ... F_1 D G_1 ... G_n with unit lower (F) and
// unit upper (G^T transposed in) bidiagonal factors and rectangular diagonal D.
class BDMatrix {
 public:
  explicit BDMatrix(Matrix<double> entries) : e_(std::move(entries)) {}

  std::size_t rows() const { return e_.rows(); }
  std::size_t cols() const { return e_.cols(); }

  double pivot(std::size_t i) const { return e_(i, i); }
  double mult(std::size_t i, std::size_t j) const { return e_(i, j); }    // i > j
  double multT(std::size_t j, std::size_t i) const { return e_(i, j); }   // i < j, value mt_{ji}

  const Matrix<double>& entries() const { return e_; }

  bool all_positive() const {
    for (std::size_t i = 0; i < e_.rows(); ++i)
      for (std::size_t j = 0; j < e_.cols(); ++j)
        if (!(e_(i, j) > 0)) return false;
    return true;
  }

 private:
  Matrix<double> e_;
};

// Collocation matrix of the denominator-free Lagrange-type basis at the sample
// nodes: a_{ij} = prod_{k != j} (t_i - x_k). Test/oracle utility; the accurate
// path never forms it.
template <typename T>
Matrix<T> build_A(const std::vector<T>& x, const std::vector<T>& t) {
  const std::size_t n1 = x.size(), l1 = t.size();
  Matrix<T> a(l1, n1);
  for (std::size_t i = 0; i < l1; ++i)
    for (std::size_t j = 0; j < n1; ++j) {
      T p(1);
      for (std::size_t k = 0; k < n1; ++k)
        if (k != j) p *= t[i] - x[k];
      a(i, j) = p;
    }
  return a;
}

inline Matrix<double> build_A(const NodeConfig& cfg) {
  if (cfg.mixed_flag) throw MixedNode();
  return build_A(cfg.x, cfg.t);
}

// Collocation matrix of the Lagrange basis itself: column j of build_A divided
// by den_j. Test/oracle utility.
template <typename T>
Matrix<T> build_L(const std::vector<T>& x, const std::vector<T>& t) {
  Matrix<T> l = build_A(x, t);
  const std::vector<T> den = scaling_denominators(x);
  for (std::size_t i = 0; i < l.rows(); ++i)
    for (std::size_t j = 0; j < l.cols(); ++j) l(i, j) /= den[j];
  return l;
}

inline Matrix<double> build_L(const NodeConfig& cfg) {
  if (cfg.mixed_flag) throw MixedNode();
  return build_L(cfg.x, cfg.t);
}

namespace detail {

// Closed-form bidiagonal decomposition of the denominator-free collocation
// matrix for basis nodes all below the (decreasing) sample nodes. Every factor
// below is a difference of two input nodes arranged to be positive under that
// ordering, so the computation multiplies/divides positive quantities only and
// never forms the collocation matrix. Numerator and denominator products are
// accumulated separately and divided once per entry. O(l*n) per entry family,
// O(l+n) auxiliary storage.
template <typename T>
Matrix<T> tnbdlr_entries(const std::vector<T>& x, const std::vector<T>& t) {
  using nic::checked_positive;
  const std::size_t n1 = x.size(), l1 = t.size();
  Matrix<T> bd(l1, n1);

  // diagonal pivots p_{jj}
  for (std::size_t j = 0; j < n1; ++j) {
    T num(1), den(1);
    for (std::size_t k = 0; k < j; ++k) num *= checked_positive<T>(t[k] - t[j]);
    for (std::size_t k = 0; k < j; ++k) num *= checked_positive<T>(x[j] - x[k]);
    for (std::size_t k = j + 1; k < n1; ++k) num *= checked_positive<T>(t[j] - x[k]);
    for (std::size_t k = 0; k < j; ++k) den *= checked_positive<T>(t[k] - x[j]);
    bd(j, j) = num / den;
  }

  // multipliers of the elimination of A: m_{ij}, stored below the diagonal
  for (std::size_t j = 0; j < n1; ++j)
    for (std::size_t i = j + 1; i < l1; ++i) {
      T num = checked_positive<T>(t[i - j - 1] - x[j]);
      for (std::size_t k = i - j; k < i; ++k) num *= checked_positive<T>(t[k] - t[i]);
      for (std::size_t k = j + 1; k < n1; ++k) num *= checked_positive<T>(t[i] - x[k]);
      T den(1);
      for (std::size_t k = i - j - 1; k + 1 < i; ++k) den *= checked_positive<T>(t[k] - t[i - 1]);
      for (std::size_t k = j; k < n1; ++k) den *= checked_positive<T>(t[i - 1] - x[k]);
      bd(i, j) = num / den;
    }

  // multipliers of the elimination of A^T: mt_{ij}, stored above the diagonal
  // at (j, i) for i > j
  for (std::size_t j = 0; j + 1 < n1; ++j)
    for (std::size_t i = j + 1; i < n1; ++i) {
      T num = checked_positive<T>(t[j] - x[i - j - 1]);
      for (std::size_t k = i - j; k < i; ++k) num *= checked_positive<T>(x[i] - x[k]);
      for (std::size_t k = 0; k < j; ++k) num *= checked_positive<T>(t[k] - x[i - 1]);
      T den(1);
      for (std::size_t k = i - j - 1; k + 1 < i; ++k) den *= checked_positive<T>(x[i - 1] - x[k]);
      for (std::size_t k = 0; k <= j; ++k) den *= checked_positive<T>(t[k] - x[i]);
      bd(j, i) = num / den;
    }

  return bd;
}

}  // namespace detail

// Bidiagonal decomposition straight from the nodes (never forming the matrix).
// Requires the ordered arrangement; use the change-of-variable driver first
// for general configurations.
inline BDMatrix tnbdlr(const NodeConfig& cfg) {
  if (!cfg.ordered_flag) throw NotOrdered();
  return BDMatrix(detail::tnbdlr_entries(cfg.x, cfg.t));
}

// Closed-form decomposition entries in any scalar type; with a rational type
// this is the exact value of what tnbdlr computes in doubles.
template <typename T>
Matrix<T> bd_closed_form(const std::vector<T>& x, const std::vector<T>& t) {
  return detail::tnbdlr_entries(x, t);
}

// Multiplies the bidiagonal factors implied by a packed decomposition back
// into a dense matrix. Verification utility; exact when T is rational.
template <typename T>
Matrix<T> reconstruct_from_bd(const Matrix<T>& bd) {
  const std::size_t l1 = bd.rows(), n1 = bd.cols();
  if (l1 < n1) throw DimensionMismatch("reconstruct_from_bd: more columns than rows");
  Matrix<T> acc = Matrix<T>::identity(l1);
  for (std::size_t i = l1 - 1; i >= 1; --i) {  // F_l ... F_1
    Matrix<T> f = Matrix<T>::identity(l1);
    for (std::size_t r = i; r < l1; ++r)
      if (r - i < n1) f(r, r - 1) = bd(r, r - i);
    acc = matmul(acc, f);
  }
  Matrix<T> d(l1, n1);
  for (std::size_t j = 0; j < n1; ++j) d(j, j) = bd(j, j);
  acc = matmul(acc, d);
  for (std::size_t c = 1; c < n1; ++c) {  // G_1 ... G_n
    Matrix<T> g = Matrix<T>::identity(n1);
    for (std::size_t r = c; r < n1; ++r) g(r - 1, r) = bd(r - c, r);
    acc = matmul(acc, g);
  }
  return acc;
}

inline Matrix<double> reconstruct_from_bd(const BDMatrix& bd) {
  return reconstruct_from_bd(bd.entries());
}

}  // namespace tplag

#endif  // TPLAG_BD_HPP
