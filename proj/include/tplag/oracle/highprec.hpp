#ifndef TPLAG_ORACLE_HIGHPREC_HPP
#define TPLAG_ORACLE_HIGHPREC_HPP

#include <cstddef>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "tplag/errors.hpp"
#include "tplag/matrix.hpp"
#include "tplag/oracle/exact.hpp"

namespace tplag {

// 120 decimal digits: enough headroom that even squared condition numbers of
// the worst bundled instances leave ~50 accurate digits.
using BigFloat = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<120>>;
using BigMatrix = Matrix<BigFloat>;
using BigVector = std::vector<BigFloat>;

inline BigFloat to_bigfloat(const ExactScalar& r) {
  return BigFloat(numerator(r)) / BigFloat(denominator(r));
}

inline BigMatrix to_bigfloat(const ExactMatrix& m) {
  BigMatrix b(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) b(i, j) = to_bigfloat(m(i, j));
  return b;
}

inline BigVector to_bigfloat(const ExactVector& v) {
  BigVector b(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) b[i] = to_bigfloat(v[i]);
  return b;
}

// ||approx - exact||_2 / ||exact||_2 evaluated in extended precision
// (Frobenius for matrices, an upper bound on the spectral measure).
inline double rel_error_2norm(const std::vector<double>& approx, const BigVector& exact) {
  if (approx.size() != exact.size()) throw DimensionMismatch("rel_error_2norm");
  BigFloat num = 0, den = 0;
  for (std::size_t i = 0; i < exact.size(); ++i) {
    const BigFloat d = BigFloat(approx[i]) - exact[i];
    num += d * d;
    den += exact[i] * exact[i];
  }
  return static_cast<double>(sqrt(num) / sqrt(den));
}

inline double rel_error_2norm(const std::vector<double>& approx, const ExactVector& exact) {
  return rel_error_2norm(approx, to_bigfloat(exact));
}

inline double rel_error_2norm(const Matrix<double>& approx, const BigMatrix& exact) {
  if (approx.rows() != exact.rows() || approx.cols() != exact.cols())
    throw DimensionMismatch("rel_error_2norm");
  BigFloat num = 0, den = 0;
  for (std::size_t i = 0; i < exact.rows(); ++i)
    for (std::size_t j = 0; j < exact.cols(); ++j) {
      const BigFloat d = BigFloat(approx(i, j)) - exact(i, j);
      num += d * d;
      den += exact(i, j) * exact(i, j);
    }
  return static_cast<double>(sqrt(num) / sqrt(den));
}

inline double rel_error_2norm(const Matrix<double>& approx, const ExactMatrix& exact) {
  return rel_error_2norm(approx, to_bigfloat(exact));
}

// Cyclic Jacobi on a symmetric positive definite matrix with the relative
// off-diagonal stopping criterion, which preserves the relative accuracy of
// the small eigenvalues.
inline BigVector jacobi_eigenvalues(BigMatrix a, const BigFloat& tol = BigFloat("1e-80")) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw DimensionMismatch("jacobi_eigenvalues");
  for (int sweep = 0; sweep < 200; ++sweep) {
    bool converged = true;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a(p, q) == 0) continue;
        if (abs(a(p, q)) <= tol * sqrt(abs(a(p, p)) * abs(a(q, q)))) continue;
        converged = false;
        const BigFloat theta = (a(q, q) - a(p, p)) / (2 * a(p, q));
        const BigFloat t = (theta >= 0 ? BigFloat(1) : BigFloat(-1)) /
                           (abs(theta) + sqrt(theta * theta + 1));
        const BigFloat c = 1 / sqrt(t * t + 1);
        const BigFloat s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const BigFloat akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const BigFloat apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    if (converged) break;
  }
  BigVector ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a(i, i);
  return ev;
}

// 2-norm condition number sigma_max / sigma_min from the eigenvalues of the
// Gram matrix in extended precision. `digits` declares the precision the
// caller needs; everything here runs at 120 digits.
inline double condition_number_2(const ExactMatrix& l, unsigned digits = 100) {
  if (digits > 120) throw Error("condition_number_2: requested precision above 120 digits");
  const BigMatrix lb = to_bigfloat(l);
  BigMatrix g(l.cols(), l.cols());
  for (std::size_t i = 0; i < l.cols(); ++i)
    for (std::size_t j = 0; j < l.cols(); ++j) {
      BigFloat s = 0;
      for (std::size_t r = 0; r < l.rows(); ++r) s += lb(r, i) * lb(r, j);
      g(i, j) = s;
    }
  const BigVector ev = jacobi_eigenvalues(g);
  BigFloat lo = ev[0], hi = ev[0];
  for (const BigFloat& v : ev) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  if (!(lo > 0)) throw RankDeficient("condition_number_2: Gram matrix not positive definite");
  return static_cast<double>(sqrt(hi / lo));
}

// Gaussian elimination with partial pivoting in extended precision; reference
// solver for the irrational-node path where rationals do not apply.
inline BigVector big_solve(BigMatrix a, BigVector b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw DimensionMismatch("big_solve");
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (abs(a(i, k)) > abs(a(piv, k))) piv = i;
    if (a(piv, k) == 0) throw RankDeficient("big_solve");
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(k, j));
      std::swap(b[piv], b[k]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const BigFloat f = a(i, k) / a(k, k);
      if (f == 0) continue;
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      b[i] -= f * b[k];
    }
  }
  BigVector x(n);
  for (std::size_t i = n; i-- > 0;) {
    BigFloat s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
    x[i] = s / a(i, i);
  }
  return x;
}

// Normal-equations least squares in extended precision.
inline BigVector big_ls_solve(const BigMatrix& m, const BigVector& b) {
  if (b.size() != m.rows()) throw DimensionMismatch("big_ls_solve");
  const std::size_t n = m.cols();
  BigMatrix g(n, n);
  BigVector rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      BigFloat s = 0;
      for (std::size_t r = 0; r < m.rows(); ++r) s += m(r, i) * m(r, j);
      g(i, j) = s;
    }
    BigFloat s = 0;
    for (std::size_t r = 0; r < m.rows(); ++r) s += m(r, i) * b[r];
    rhs[i] = s;
  }
  return big_solve(std::move(g), std::move(rhs));
}

// Decimal string with the given number of significant digits (reference-data
// serialization of extended-precision values).
inline std::string bigfloat_to_string(const BigFloat& v, unsigned digits = 40) {
  return v.str(digits, std::ios_base::scientific);
}

inline BigFloat bigfloat_from_string(const std::string& s) { return BigFloat(s); }

}  // namespace tplag

#endif  // TPLAG_ORACLE_HIGHPREC_HPP
