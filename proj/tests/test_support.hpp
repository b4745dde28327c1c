#ifndef TPLAG_TESTS_TEST_SUPPORT_HPP
#define TPLAG_TESTS_TEST_SUPPORT_HPP

#include <cstdint>
#include <limits>
#include <random>
#include <variant>
#include <vector>

#include "tplag/tplag.hpp"

namespace tplag_test {

// Random node configurations on a dyadic grid, so the double values and their
// exact rational embeddings are literally the same numbers.
class ConfigGen {
 public:
  explicit ConfigGen(std::uint32_t seed) : rng_(seed) {}

  std::mt19937& rng() { return rng_; }

  // strictly increasing x, strictly decreasing t, all t above all x
  tplag::NodeConfig ordered(int max_n, int max_l) {
    const int n = pick(0, max_n);
    const int l = pick(n, max_l);
    std::vector<double> x = grid_walk(n + 1, pick(-256, 256) / 64.0);
    std::vector<double> t = grid_walk(l + 1, x.back() + pick(16, 96) / 64.0);
    std::reverse(t.begin(), t.end());
    return tplag::NodeConfig(std::move(x), std::move(t));
  }

  // Ordered configuration whose triangular-factor diagonal spread stays under
  // `cap`. Collocation matrices of this family are exponentially
  // ill-conditioned in the degree, so unscaled working-precision residual
  // checks are only meaningful on a conditioning-limited slice; checks with
  // conditioning-independent measures use the unrestricted stream.
  tplag::NodeConfig ordered_conditioned(int max_n, int max_l, double cap = 1e2) {
    for (;;) {
      tplag::NodeConfig cfg = ordered(max_n, max_l);
      const std::vector<double> diag = tplag::tnqr(tplag::tnbdlr(cfg)).R_bd.diagonal();
      double hi = 0, lo = std::numeric_limits<double>::infinity();
      for (double v : diag) {
        hi = std::max(hi, std::abs(v));
        lo = std::min(lo, std::abs(v));
      }
      if (hi / lo <= cap) return cfg;
    }
  }

  // t placed anywhere relative to x (usually interleaved / below)
  tplag::NodeConfig general(int max_n, int max_l) {
    for (;;) {
      const int n = pick(0, max_n);
      const int l = pick(n, max_l);
      std::vector<double> x = grid_walk(n + 1, pick(-256, 256) / 64.0);
      std::vector<double> t =
          grid_walk(l + 1, x.front() + pick(-128, 128) / 64.0 + 1.0 / 128.0);
      std::reverse(t.begin(), t.end());
      try {
        return tplag::NodeConfig(std::move(x), std::move(t));
      } catch (const tplag::Error&) {
        // collision with a basis node; roll again
      }
    }
  }

  std::vector<double> data(std::size_t len, bool alternating = false) {
    std::vector<double> b(len);
    for (std::size_t i = 0; i < len; ++i) {
      double v = pick(1, 256) / 16.0;
      if (alternating)
        v *= (i % 2 == 0) ? 1.0 : -1.0;
      else if (pick(0, 1))
        v = -v;
      b[i] = v;
    }
    return b;
  }

 private:
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  std::vector<double> grid_walk(std::size_t count, double start) {
    std::vector<double> v(count);
    double cur = start;
    for (std::size_t i = 0; i < count; ++i) {
      v[i] = cur;
      cur += pick(16, 96) / 64.0;
    }
    return v;
  }

  std::mt19937 rng_;
};

inline tplag::ExactVector exact_nodes(const std::vector<double>& v) {
  return tplag::exact_of(v);
}

// Dense matrix of an RFactors product with the atom parameters embedded
// exactly into extended precision: the reference for what the factored form
// represents.
inline tplag::BigMatrix rfactors_dense_big(const tplag::RFactors& rf) {
  using namespace tplag;
  const std::size_t n = rf.dim();
  BigMatrix x(n, n);
  for (std::size_t i = 0; i < n; ++i) x(i, i) = 1;
  auto apply_left = [&](const RFactors::Atom& a) {
    if (const auto* tb = std::get_if<RFactors::TBlock>(&a)) {
      for (std::size_t j = 0; j < n; ++j) {
        const BigFloat top = x(tb->k, j), bot = x(tb->k + 1, j);
        x(tb->k, j) = BigFloat(tb->r) * top + BigFloat(tb->mu) * bot;
        x(tb->k + 1, j) = bot / BigFloat(tb->r);
      }
    } else if (const auto* sc = std::get_if<RFactors::Scale>(&a)) {
      for (std::size_t j = 0; j < n; ++j) x(sc->k, j) *= BigFloat(sc->v);
    } else if (const auto* dg = std::get_if<RFactors::Diag>(&a)) {
      for (std::size_t i2 = 0; i2 < n; ++i2)
        for (std::size_t j = 0; j < n; ++j) x(i2, j) *= BigFloat(dg->d[i2]);
    } else if (const auto* bd = std::get_if<RFactors::Band>(&a)) {
      for (std::size_t r = bd->c; r < n; ++r)
        for (std::size_t j = 0; j < n; ++j)
          x(r - 1, j) += BigFloat(bd->g[r - bd->c]) * x(r, j);
    }
  };
  const auto& atoms = rf.atoms();
  for (auto it = atoms.rbegin(); it != atoms.rend(); ++it) apply_left(*it);
  return x;
}

inline tplag::BigMatrix big_upper_inverse(const tplag::BigMatrix& r) {
  using namespace tplag;
  const std::size_t n = r.rows();
  BigMatrix inv(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t i = n; i-- > 0;) {
      BigFloat s = (i == c) ? BigFloat(1) : BigFloat(0);
      for (std::size_t j = i + 1; j < n; ++j) s -= r(i, j) * inv(j, c);
      inv(i, c) = s / r(i, i);
    }
  }
  return inv;
}

}  // namespace tplag_test

#endif  // TPLAG_TESTS_TEST_SUPPORT_HPP
