#ifndef TPLAG_TN_KERNELS_HPP
#define TPLAG_TN_KERNELS_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <variant>
#include <vector>

#include "tplag/bd.hpp"
#include "tplag/errors.hpp"
#include "tplag/matrix.hpp"

namespace tplag {

// Unit roundoff of the working precision.
inline constexpr double unit_roundoff = std::numeric_limits<double>::epsilon() / 2;

// Default orthogonality tolerance for an m x m computed Q: factor * m * u.
inline double orthogonality_tol(std::size_t m, double factor = 64.0) {
  return factor * static_cast<double>(m) * unit_roundoff;
}

// Upper-triangular totally positive factor R, held as an ordered product of
// positive elementary atoms rather than a dense array. The atoms are exactly
// what the rotation-based triangularization of the bidiagonal factors emits,
// so every downstream consumer (solve, inverse) can work factor by factor with
// sign-definite arithmetic.
class RFactors {
 public:
  // rows/cols (k, k+1) carry [[r, mu], [0, 1/r]]; r > 0, mu >= 0.
  struct TBlock {
    std::size_t k;
    double r, mu;
  };
  // single diagonal entry v at (k, k)
  struct Scale {
    std::size_t k;
    double v;
  };
  // full diagonal
  struct Diag {
    std::vector<double> d;
  };
  // unit upper bidiagonal: entry (r-1, r) = g[r-c] for r = c..n-1
  struct Band {
    std::size_t c;
    std::vector<double> g;
  };
  using Atom = std::variant<TBlock, Scale, Diag, Band>;

  explicit RFactors(std::size_t n) : n_(n) {}

  static RFactors identity(std::size_t n) {
    RFactors r(n);
    r.atoms_.push_back(Diag{std::vector<double>(n, 1.0)});
    return r;
  }

  // Build from the canonical packing of an upper-triangular TP matrix:
  // diagonal = pivots, entry (i, j) with i < j = multiplier of the factor
  // with offset j - i.
  static RFactors from_packed_bd(const Matrix<double>& packed) {
    if (packed.rows() != packed.cols())
      throw DimensionMismatch("from_packed_bd: square packing required");
    const std::size_t n = packed.rows();
    RFactors rf(n);
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = packed(i, i);
    rf.atoms_.push_back(Diag{std::move(d)});
    for (std::size_t c = 1; c < n; ++c) {
      Band b{c, std::vector<double>(n - c)};
      bool nonzero = false;
      for (std::size_t r = c; r < n; ++r) {
        b.g[r - c] = packed(r - c, r);
        nonzero = nonzero || b.g[r - c] != 0.0;
      }
      if (nonzero) rf.atoms_.push_back(std::move(b));
    }
    return rf;
  }

  std::size_t dim() const { return n_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  void push_atom(Atom a) { atoms_.push_back(std::move(a)); }

  // Diagonal of the product (all atoms are triangular, so it is the product
  // of the atom diagonals).
  std::vector<double> diagonal() const {
    std::vector<double> diag(n_, 1.0);
    for (const Atom& a : atoms_) {
      if (const auto* tb = std::get_if<TBlock>(&a)) {
        diag[tb->k] *= tb->r;
        diag[tb->k + 1] /= tb->r;
      } else if (const auto* sc = std::get_if<Scale>(&a)) {
        diag[sc->k] *= sc->v;
      } else if (const auto* dg = std::get_if<Diag>(&a)) {
        for (std::size_t i = 0; i < n_; ++i) diag[i] *= dg->d[i];
      }
    }
    return diag;
  }

  Matrix<double> dense() const {
    Matrix<double> x = Matrix<double>::identity(n_);
    for (auto it = atoms_.rbegin(); it != atoms_.rend(); ++it) apply_left(*it, x);
    return x;
  }

 private:
  // x <- atom * x
  void apply_left(const Atom& a, Matrix<double>& x) const {
    if (const auto* tb = std::get_if<TBlock>(&a)) {
      for (std::size_t j = 0; j < n_; ++j) {
        const double top = x(tb->k, j), bot = x(tb->k + 1, j);
        x(tb->k, j) = tb->r * top + tb->mu * bot;
        x(tb->k + 1, j) = bot / tb->r;
      }
    } else if (const auto* sc = std::get_if<Scale>(&a)) {
      for (std::size_t j = 0; j < n_; ++j) x(sc->k, j) *= sc->v;
    } else if (const auto* dg = std::get_if<Diag>(&a)) {
      for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) x(i, j) *= dg->d[i];
    } else if (const auto* bd = std::get_if<Band>(&a)) {
      for (std::size_t r = bd->c; r < n_; ++r)
        for (std::size_t j = 0; j < n_; ++j) x(r - 1, j) += bd->g[r - bd->c] * x(r, j);
    }
  }

  std::size_t n_;
  std::vector<Atom> atoms_;
};

// Solve R z = d by applying the atom inverses in order. The divisions are by
// positive diagonals; the one subtraction per atom row pairs terms of
// differing sign whenever d alternates in sign, which is the regime where the
// result is accurate independently of conditioning.
inline std::vector<double> tnsolve(const RFactors& r_bd, std::vector<double> d) {
  const std::size_t n = r_bd.dim();
  if (d.size() != n) throw DimensionMismatch("tnsolve: dimension mismatch");
  for (const RFactors::Atom& a : r_bd.atoms()) {
    if (const auto* tb = std::get_if<RFactors::TBlock>(&a)) {
      const double zk1 = tb->r * d[tb->k + 1];
      d[tb->k] = (d[tb->k] - tb->mu * zk1) / tb->r;
      d[tb->k + 1] = zk1;
    } else if (const auto* sc = std::get_if<RFactors::Scale>(&a)) {
      if (sc->v == 0.0) throw SingularR();
      d[sc->k] /= sc->v;
    } else if (const auto* dg = std::get_if<RFactors::Diag>(&a)) {
      for (std::size_t i = 0; i < n; ++i) {
        if (dg->d[i] == 0.0) throw SingularR();
        d[i] /= dg->d[i];
      }
    } else if (const auto* bd = std::get_if<RFactors::Band>(&a)) {
      for (std::size_t r = n; r-- > bd->c;) d[r - 1] -= bd->g[r - bd->c] * d[r];
    }
  }
  return d;
}

// Dense inverse of R from its factored form. The accumulated matrix keeps the
// checkerboard sign pattern of a TP inverse, so every addition below combines
// like-signed magnitudes and every entry comes out to high relative accuracy.
inline Matrix<double> tninverse_expand(const RFactors& r_bd) {
  const std::size_t n = r_bd.dim();
  Matrix<double> x = Matrix<double>::identity(n);
  for (const RFactors::Atom& a : r_bd.atoms()) {
    if (const auto* tb = std::get_if<RFactors::TBlock>(&a)) {
      for (std::size_t j = 0; j < n; ++j) {
        const double yk1 = tb->r * x(tb->k + 1, j);
        x(tb->k, j) = (x(tb->k, j) - tb->mu * yk1) / tb->r;
        x(tb->k + 1, j) = yk1;
      }
    } else if (const auto* sc = std::get_if<RFactors::Scale>(&a)) {
      if (sc->v == 0.0) throw SingularR();
      for (std::size_t j = 0; j < n; ++j) x(sc->k, j) /= sc->v;
    } else if (const auto* dg = std::get_if<RFactors::Diag>(&a)) {
      for (std::size_t i = 0; i < n; ++i) {
        if (dg->d[i] == 0.0) throw SingularR();
        for (std::size_t j = 0; j < n; ++j) x(i, j) /= dg->d[i];
      }
    } else if (const auto* bd = std::get_if<RFactors::Band>(&a)) {
      for (std::size_t r = n; r-- > bd->c;)
        for (std::size_t j = 0; j < n; ++j) x(r - 1, j) -= bd->g[r - bd->c] * x(r, j);
    }
  }
  return x;
}

// Orthogonal factor plus the factored upper-triangular factor of the QR
// decomposition of the matrix a packed bidiagonal decomposition represents.
struct QRFactors {
  Matrix<double> Q;        // (l+1) x (l+1), product of plane rotations
  RFactors R_bd;           // (n+1) x (n+1) upper-triangular TP factor
  std::size_t basis_cols;  // n+1

  Matrix<double> Q1() const {
    Matrix<double> q1(Q.rows(), basis_cols);
    for (std::size_t i = 0; i < Q.rows(); ++i)
      for (std::size_t j = 0; j < basis_cols; ++j) q1(i, j) = Q(i, j);
    return q1;
  }
};

// QR factorization computed on the bidiagonal factors, never on the assembled
// matrix. The lower factors expand into elementary matrices in elimination
// order; each is lifted out as one plane rotation, and the positive upper
// 2x2 block it leaves behind is commuted right through the remaining word:
//
//   [[r, mu],[0, 1/r]] * E_k(a) = E_k(a / (r r')) * [[r', mu],[0, 1/r']],
//   r' = r + a mu                                   (same plane)
//   [[r, mu],[0, 1/r]] * E_k'(a) = E_k'(a r) * [[r, mu],[0, 1/r]]
//                                                   (adjacent plane)
//
// with disjoint planes commuting outright. All updates multiply and divide
// positive quantities. Rotations accumulate into Q at O(l) each, O(l^2 n)
// total; the upper blocks accumulate into the factored form of R.
inline QRFactors tnqr(const BDMatrix& bd) {
  const std::size_t l1 = bd.rows(), n1 = bd.cols();
  if (l1 < n1) throw DimensionMismatch("tnqr: more columns than rows");
  for (std::size_t i = 0; i < l1; ++i)
    for (std::size_t j = 0; j < n1; ++j)
      if (!(bd.entries()(i, j) > 0)) throw NonPositiveBD();

  // Remaining multiplier word, one run per lower bidiagonal factor. Run for
  // factor index i (= l1-1-ri) holds elementaries e = i .. min(l1, i+n1) - 1
  // with starting value bd(e, e - i).
  struct Run {
    std::size_t first;            // first elementary index (= factor index i)
    std::vector<double> vals;     // value of elementary e at vals[e - first]
  };
  std::vector<Run> runs;
  runs.reserve(l1 > 0 ? l1 - 1 : 0);
  for (std::size_t ri = 0; ri + 1 < l1; ++ri) {
    const std::size_t i = l1 - 1 - ri;
    Run run{i, {}};
    for (std::size_t e = i; e < l1 && e - i < n1; ++e) run.vals.push_back(bd.entries()(e, e - i));
    runs.push_back(std::move(run));
  }

  Matrix<double> q = Matrix<double>::identity(l1);
  struct Pending {
    std::size_t e;  // elementary index; block coords (e-1, e)
    double r, mu;
  };
  std::vector<Pending> chain;
  chain.reserve(l1 * n1);

  auto push_through = [](Pending& t, Run& run) {
    const std::size_t lo = run.first, hi = run.first + run.vals.size();  // [lo, hi)
    if (t.e >= lo + 1 && t.e - 1 < hi) run.vals[t.e - 1 - lo] *= t.r;
    if (t.e >= lo && t.e < hi) {
      const double a = run.vals[t.e - lo];
      const double rp = t.r + a * t.mu;
      run.vals[t.e - lo] = a / (t.r * rp);
      t.r = rp;
    }
    if (t.e + 1 >= lo && t.e + 1 < hi) run.vals[t.e + 1 - lo] *= t.r;
  };

  for (std::size_t ri = 0; ri < runs.size(); ++ri) {
    const std::size_t first = runs[ri].first;
    for (std::size_t idx = 0; idx < runs[ri].vals.size(); ++idx) {
      const std::size_t e = first + idx;
      const double a = runs[ri].vals[idx];
      const double r = std::sqrt(1.0 + a * a);
      const double c = 1.0 / r, s = a / r;
      // Q <- Q * G(e), columns e-1 and e
      for (std::size_t row = 0; row < l1; ++row) {
        const double q0 = q(row, e - 1), q1 = q(row, e);
        q(row, e - 1) = c * q0 + s * q1;
        q(row, e) = -s * q0 + c * q1;
      }
      Pending t{e, r, a / r};
      runs[ri].vals[idx] = 0.0;
      // remaining elementaries of this run, then every later run
      {
        Run& self = runs[ri];
        const std::size_t lo = self.first, hi = self.first + self.vals.size();
        if (t.e + 1 >= lo && t.e + 1 < hi) self.vals[t.e + 1 - lo] *= t.r;
      }
      for (std::size_t rj = ri + 1; rj < runs.size(); ++rj) push_through(t, runs[rj]);
      chain.push_back(t);
    }
  }

  // Assemble R: the pending blocks in reverse arrival order (restricted to the
  // leading (n1 x n1) block), then the diagonal pivots, then the upper
  // bidiagonal factors from the packing.
  RFactors r_fac(n1);
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    if (it->e <= n1 - 1)
      r_fac.push_atom(RFactors::TBlock{it->e - 1, it->r, it->mu});
    else if (it->e == n1)
      r_fac.push_atom(RFactors::Scale{n1 - 1, it->r});
  }
  std::vector<double> pivots(n1);
  for (std::size_t j = 0; j < n1; ++j) pivots[j] = bd.pivot(j);
  r_fac.push_atom(RFactors::Diag{std::move(pivots)});
  for (std::size_t c = 1; c < n1; ++c) {
    RFactors::Band band{c, std::vector<double>(n1 - c)};
    for (std::size_t r = c; r < n1; ++r) band.g[r - c] = bd.entries()(r - c, r);
    r_fac.push_atom(std::move(band));
  }

  return QRFactors{std::move(q), std::move(r_fac), n1};
}

}  // namespace tplag

#endif  // TPLAG_TN_KERNELS_HPP
