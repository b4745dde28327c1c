#ifndef TPLAG_ORACLE_EXACT_HPP
#define TPLAG_ORACLE_EXACT_HPP

#include <atomic>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tplag/errors.hpp"
#include "tplag/matrix.hpp"

namespace tplag {

// Exact rational scalar for the reference computations: arbitrary-precision
// numerator, positive arbitrary-precision denominator, always in lowest terms
// (the backing type keeps the canonical form).
using BigInt = boost::multiprecision::cpp_int;
using ExactScalar = boost::multiprecision::cpp_rational;
using ExactMatrix = Matrix<ExactScalar>;
using ExactVector = std::vector<ExactScalar>;

// Cooperative cancellation for long-running exact eliminations.
struct CancelToken {
  std::atomic<bool> flag{false};
  void cancel() { flag.store(true); }
};

namespace oracle_detail {
inline void checkpoint(const CancelToken* tok) {
  if (tok && tok->flag.load()) throw Cancelled();
}
}  // namespace oracle_detail

// Exact value of a decimal string ("-12.9", "3e-2") or a quotient "p/q".
inline ExactScalar parse_exact(std::string_view s) {
  auto fail = [&] { throw Error("parse_exact: malformed number '" + std::string(s) + "'"); };
  std::size_t pos = 0;
  auto take_sign = [&]() -> int {
    int sign = 1;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
      if (s[pos] == '-') sign = -1;
      ++pos;
    }
    return sign;
  };
  auto take_digits = [&](BigInt& value, std::size_t& count) {
    count = 0;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
      value = value * 10 + (s[pos] - '0');
      ++pos;
      ++count;
    }
  };
  if (s.empty()) fail();
  const int sign = take_sign();
  BigInt int_part = 0, frac_part = 0;
  std::size_t int_digits = 0, frac_digits = 0;
  take_digits(int_part, int_digits);
  if (pos < s.size() && s[pos] == '/') {
    if (int_digits == 0) fail();
    ++pos;
    const int dsign = take_sign();
    BigInt den = 0;
    std::size_t den_digits = 0;
    take_digits(den, den_digits);
    if (den_digits == 0 || pos != s.size() || den == 0) fail();
    return ExactScalar(sign * dsign * int_part, den);
  }
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    take_digits(frac_part, frac_digits);
  }
  if (int_digits == 0 && frac_digits == 0) fail();
  long exp10 = 0;
  if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
    ++pos;
    const int esign = take_sign();
    BigInt e = 0;
    std::size_t e_digits = 0;
    take_digits(e, e_digits);
    if (e_digits == 0) fail();
    exp10 = esign * static_cast<long>(e);
  }
  if (pos != s.size()) fail();
  BigInt num = int_part;
  for (std::size_t i = 0; i < frac_digits; ++i) num *= 10;
  num += frac_part;
  BigInt den = 1;
  long net = exp10 - static_cast<long>(frac_digits);
  for (long i = 0; i < net; ++i) num *= 10;
  for (long i = 0; i < -net; ++i) den *= 10;
  return ExactScalar(sign * num, den);
}

// Every binary double is a rational; this is the exact embedding.
inline ExactScalar exact_of_double(double v) { return ExactScalar(v); }

inline ExactMatrix exact_of(const Matrix<double>& a) {
  ExactMatrix e(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) e(i, j) = exact_of_double(a(i, j));
  return e;
}

inline ExactVector exact_of(const std::vector<double>& v) {
  ExactVector e(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) e[i] = exact_of_double(v[i]);
  return e;
}

// Neville elimination of A and A^T in exact arithmetic, packed like the
// decomposition the accurate path computes: ground truth for it. Consecutive
// rows are combined bottom-up; a non-positive pivot or multiplier means the
// input was not strictly totally positive.
inline ExactMatrix exact_neville_bd(const ExactMatrix& a, const CancelToken* tok = nullptr) {
  const std::size_t l1 = a.rows(), n1 = a.cols();
  ExactMatrix bd(l1, n1);
  ExactMatrix work = a;
  for (std::size_t j = 0; j < n1; ++j) {
    oracle_detail::checkpoint(tok);
    for (std::size_t i = l1 - 1; i > j; --i) {
      if (!(work(i - 1, j) > 0)) throw NotSTP();
      const ExactScalar mu = work(i, j) / work(i - 1, j);
      if (!(mu > 0)) throw NotSTP();
      bd(i, j) = mu;
      for (std::size_t k = j; k < n1; ++k) work(i, k) -= mu * work(i - 1, k);
    }
  }
  for (std::size_t j = 0; j < n1; ++j) {
    if (!(work(j, j) > 0)) throw NotSTP();
    bd(j, j) = work(j, j);
  }
  ExactMatrix workT = transpose(a);
  for (std::size_t j = 0; j < l1 && j < n1; ++j) {
    oracle_detail::checkpoint(tok);
    for (std::size_t i = n1 - 1; i > j; --i) {
      if (!(workT(i - 1, j) > 0)) throw NotSTP();
      const ExactScalar mu = workT(i, j) / workT(i - 1, j);
      if (!(mu > 0)) throw NotSTP();
      bd(j, i) = mu;  // multiplier mt_{i+1, j+1}, stored above the diagonal
      for (std::size_t k = j; k < l1; ++k) workT(i, k) -= mu * workT(i - 1, k);
    }
  }
  return bd;
}

namespace oracle_detail {

// Fraction-free (Bareiss) triangularization of an integer augmented system;
// exact divisions keep intermediate growth bounded by minor sizes.
inline void bareiss(Matrix<BigInt>& m, std::size_t ncols_lhs, const CancelToken* tok) {
  const std::size_t n = ncols_lhs;
  BigInt prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    checkpoint(tok);
    std::size_t pivot_row = k;
    while (pivot_row < n && m(pivot_row, k) == 0) ++pivot_row;
    if (pivot_row == n) throw RankDeficient();
    if (pivot_row != k)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(pivot_row, j), m(k, j));
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < m.cols(); ++j) {
        BigInt v = m(k, k) * m(i, j) - m(i, k) * m(k, j);
        m(i, j) = v / prev;  // divides exactly
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
}

}  // namespace oracle_detail

// Solve the square exact system G X = B by clearing denominators row-wise,
// fraction-free elimination, and rational back-substitution.
inline ExactMatrix exact_solve(const ExactMatrix& g, const ExactMatrix& b,
                               const CancelToken* tok = nullptr) {
  const std::size_t n = g.rows();
  if (g.cols() != n || b.rows() != n) throw DimensionMismatch("exact_solve");
  const std::size_t k = b.cols();
  Matrix<BigInt> m(n, n + k);
  for (std::size_t i = 0; i < n; ++i) {
    BigInt scale = 1;
    for (std::size_t j = 0; j < n; ++j) scale = lcm(scale, denominator(g(i, j)));
    for (std::size_t j = 0; j < k; ++j) scale = lcm(scale, denominator(b(i, j)));
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = numerator(g(i, j)) * (scale / denominator(g(i, j)));
    for (std::size_t j = 0; j < k; ++j)
      m(i, n + j) = numerator(b(i, j)) * (scale / denominator(b(i, j)));
  }
  oracle_detail::bareiss(m, n, tok);
  ExactMatrix x(n, k);
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t i = n; i-- > 0;) {
      ExactScalar s(m(i, n + c));
      for (std::size_t j = i + 1; j < n; ++j) s -= ExactScalar(m(i, j)) * x(j, c);
      x(i, c) = s / ExactScalar(m(i, i));
    }
  return x;
}

// Exact least squares solution through the normal equations L^T L c = L^T b.
inline ExactVector exact_ls_solve(const ExactMatrix& l, const ExactVector& b,
                                  const CancelToken* tok = nullptr) {
  if (b.size() != l.rows()) throw DimensionMismatch("exact_ls_solve");
  const ExactMatrix lt = transpose(l);
  const ExactMatrix g = matmul(lt, l);
  ExactMatrix rhs(l.cols(), 1);
  for (std::size_t i = 0; i < l.cols(); ++i) {
    ExactScalar s(0);
    for (std::size_t r = 0; r < l.rows(); ++r) s += lt(i, r) * b[r];
    rhs(i, 0) = s;
  }
  const ExactMatrix x = exact_solve(g, rhs, tok);
  ExactVector out(l.cols());
  for (std::size_t i = 0; i < l.cols(); ++i) out[i] = x(i, 0);
  return out;
}

// Exact Moore-Penrose inverse (full column rank): (L^T L)^{-1} L^T, with all
// four defining conditions verified exactly before returning.
inline ExactMatrix exact_pinv(const ExactMatrix& l, const CancelToken* tok = nullptr) {
  const ExactMatrix lt = transpose(l);
  const ExactMatrix g = matmul(lt, l);
  const ExactMatrix pinv = exact_solve(g, lt, tok);
  const ExactMatrix ng = matmul(l, pinv);
  const ExactMatrix gn = matmul(pinv, l);
  if (matmul(ng, l) != l) throw Error("exact_pinv: N G N != N");
  if (matmul(gn, pinv) != pinv) throw Error("exact_pinv: G N G != G");
  if (transpose(ng) != ng) throw Error("exact_pinv: N G not symmetric");
  if (transpose(gn) != gn) throw Error("exact_pinv: G N not symmetric");
  return pinv;
}

// Exact orthogonal projector L L^+; symmetric and idempotent by construction,
// verified before returning.
inline ExactMatrix exact_projection(const ExactMatrix& l, const CancelToken* tok = nullptr) {
  const ExactMatrix h = matmul(l, exact_pinv(l, tok));
  if (transpose(h) != h) throw Error("exact_projection: not symmetric");
  if (matmul(h, h) != h) throw Error("exact_projection: not idempotent");
  return h;
}

// Exact determinant by fraction-free elimination (with row swaps).
inline ExactScalar exact_det(const ExactMatrix& a, const CancelToken* tok = nullptr) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw DimensionMismatch("exact_det");
  Matrix<BigInt> m(n, n);
  ExactScalar scale(1);
  for (std::size_t i = 0; i < n; ++i) {
    BigInt s = 1;
    for (std::size_t j = 0; j < n; ++j) s = lcm(s, denominator(a(i, j)));
    for (std::size_t j = 0; j < n; ++j) m(i, j) = numerator(a(i, j)) * (s / denominator(a(i, j)));
    scale /= ExactScalar(s);
  }
  int sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    oracle_detail::checkpoint(tok);
    std::size_t pivot_row = k;
    while (pivot_row < n && m(pivot_row, k) == 0) ++pivot_row;
    if (pivot_row == n) return ExactScalar(0);
    if (pivot_row != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(pivot_row, j), m(k, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(k, k) * m(i, j) - m(i, k) * m(k, j)) / prev;
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return scale * ExactScalar(sign * m(n - 1, n - 1));
}

// Strict total positivity spot check: every minor taken on consecutive rows
// against initial columns (and the transposed counterpart) must be positive.
inline bool consecutive_initial_minors_positive(const ExactMatrix& a,
                                                const CancelToken* tok = nullptr) {
  auto scan = [&](const ExactMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    for (std::size_t k = 1; k <= cols; ++k)
      for (std::size_t i0 = 0; i0 + k <= rows; ++i0) {
        ExactMatrix sub(k, k);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub(i, j) = m(i0 + i, j);
        if (!(exact_det(sub, tok) > 0)) return false;
      }
    return true;
  };
  return scan(a) && scan(transpose(a));
}

}  // namespace tplag

#endif  // TPLAG_ORACLE_EXACT_HPP
