#ifndef TPLAG_LAGRANGE_LS_HPP
#define TPLAG_LAGRANGE_LS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "tplag/bd.hpp"
#include "tplag/errors.hpp"
#include "tplag/matrix.hpp"
#include "tplag/node_config.hpp"
#include "tplag/tn_kernels.hpp"

namespace tplag {

// Least squares solution of the overdetermined collocation system.
//   z_bar : coordinates in the denominator-free basis
//   c_bar : Lagrange-basis coefficients, c_j = den_j * z_j (empty if not requested)
//   d1/d2 : split of Q^T b; residual_norm = ||d2||_2 = ||b - A z_bar||_2
struct LSSolution {
  std::vector<double> z_bar;
  std::vector<double> c_bar;
  std::vector<double> d1;
  std::vector<double> d2;
  double residual_norm = 0.0;
};

// Order-preserving affine map s = a0 + a1 t placing the sample nodes above the
// basis nodes.
struct ChangeOfVariable {
  double a0 = 0.0;
  double a1 = 1.0;
  bool applied = false;

  double map(double t) const { return a0 + a1 * t; }
};

namespace detail {

inline void require_length(std::size_t got, std::size_t want, const char* what) {
  if (got != want) throw DimensionMismatch(what);
}

inline QRFactors qr_of(const NodeConfig& cfg) { return tnqr(tnbdlr(cfg)); }

}  // namespace detail

// Minimizer of ||b - A z||_2 through the decomposition pipeline: bidiagonal
// factorization, rotation-based QR, d1 = Q1^T b, triangular solve. O(l^2 n).
inline LSSolution ls_solve_A(const NodeConfig& cfg, const std::vector<double>& b) {
  if (!cfg.ordered_flag) throw NotOrdered();
  detail::require_length(b.size(), cfg.t.size(), "ls_solve_A: data length");
  const QRFactors qr = detail::qr_of(cfg);
  const std::size_t l1 = cfg.t.size(), n1 = cfg.x.size();
  LSSolution out;
  out.d1.resize(n1);
  out.d2.resize(l1 - n1);
  for (std::size_t k = 0; k < l1; ++k) {
    double s = 0;
    for (std::size_t i = 0; i < l1; ++i) s += qr.Q(i, k) * b[i];
    if (k < n1)
      out.d1[k] = s;
    else
      out.d2[k - n1] = s;
  }
  out.z_bar = tnsolve(qr.R_bd, out.d1);
  out.residual_norm = norm2(out.d2);
  return out;
}

// Lagrange-basis least squares coefficients: c_j = den_j * z_j.
inline LSSolution ls_solve_L(const NodeConfig& cfg, const std::vector<double>& b) {
  LSSolution sol = ls_solve_A(cfg, b);
  const std::vector<double> den = scaling_denominators(cfg.x);
  sol.c_bar.resize(sol.z_bar.size());
  for (std::size_t j = 0; j < sol.z_bar.size(); ++j) sol.c_bar[j] = den[j] * sol.z_bar[j];
  return sol;
}

// Moore-Penrose inverse of the denominator-free collocation matrix,
// R^{-1} Q1^T with R inverted factor by factor.
inline Matrix<double> mp_inverse_A(const NodeConfig& cfg) {
  if (!cfg.ordered_flag) throw NotOrdered();
  const QRFactors qr = detail::qr_of(cfg);
  const Matrix<double> rinv = tninverse_expand(qr.R_bd);
  const std::size_t l1 = cfg.t.size(), n1 = cfg.x.size();
  Matrix<double> pinv(n1, l1);
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < l1; ++j) {
      double s = 0;
      for (std::size_t k = i; k < n1; ++k) s += rinv(i, k) * qr.Q(j, k);
      pinv(i, j) = s;
    }
  return pinv;
}

// Moore-Penrose inverse of the Lagrange collocation matrix: row i of the
// denominator-free pseudoinverse scaled by den_i.
inline Matrix<double> mp_inverse_L(const NodeConfig& cfg) {
  Matrix<double> pinv = mp_inverse_A(cfg);
  const std::vector<double> den = scaling_denominators(cfg.x);
  for (std::size_t i = 0; i < pinv.rows(); ++i)
    for (std::size_t j = 0; j < pinv.cols(); ++j) pinv(i, j) *= den[i];
  return pinv;
}

// Orthogonal projector onto the fitted column space: H = Q1 Q1^T. Symmetric,
// idempotent, trace n+1.
inline Matrix<double> projection_matrix(const NodeConfig& cfg) {
  if (!cfg.ordered_flag) throw NotOrdered();
  const QRFactors qr = detail::qr_of(cfg);
  const std::size_t l1 = cfg.t.size(), n1 = cfg.x.size();
  Matrix<double> h(l1, l1);
  for (std::size_t i = 0; i < l1; ++i)
    for (std::size_t j = i; j < l1; ++j) {
      double s = 0;
      for (std::size_t k = 0; k < n1; ++k) s += qr.Q(i, k) * qr.Q(j, k);
      h(i, j) = s;
      h(j, i) = s;
    }
  return h;
}

// Identity when the configuration is already ordered; otherwise a pure
// translation lifting the samples above the basis with a spread-proportional
// gap. A positive a1 keeps the sample ordering.
inline ChangeOfVariable make_change_of_variable(const NodeConfig& cfg) {
  if (cfg.ordered_flag) return ChangeOfVariable{0.0, 1.0, false};
  const double lo = std::min(cfg.x.front(), std::min(cfg.t.front(), cfg.t.back()));
  const double hi = std::max(cfg.x.back(), std::max(cfg.t.front(), cfg.t.back()));
  const double gap = std::max(1.0, hi - lo) * 0.1;
  const double a0 = cfg.x.back() - cfg.t.back() + gap;
  return ChangeOfVariable{a0, 1.0, true};
}

// Configuration with the sample nodes mapped through the change of variable;
// identity maps return the input unchanged.
inline NodeConfig apply_change_of_variable(const NodeConfig& cfg, const ChangeOfVariable& cov) {
  if (!cov.applied) return cfg;
  if (!(cov.a1 > 0)) throw NotOrdered("NotOrdered: change of variable must preserve order");
  std::vector<double> s(cfg.t.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = cov.map(cfg.t[i]);
  NodeConfig mapped(cfg.x, std::move(s));
  if (!mapped.ordered_flag)
    throw NotOrdered("NotOrdered: change of variable does not lift samples above the basis");
  return mapped;
}

// Fitted model. y_bar are the least squares coordinates of the (possibly
// translated) denominator-free basis; c_bar is populated only when no
// nontrivial change of variable was applied. The projector is computed on
// first use and cached (thread-safe, compute-once).
class FitModel {
 public:
  FitModel(NodeConfig cfg, ChangeOfVariable cov, NodeConfig fitted, std::vector<double> y_bar,
           std::optional<std::vector<double>> c_bar, double residual_norm)
      : cfg_(std::move(cfg)),
        cov_(cov),
        fitted_cfg_(std::move(fitted)),
        y_bar_(std::move(y_bar)),
        c_bar_(std::move(c_bar)),
        residual_norm_(residual_norm),
        cache_(std::make_shared<Cache>()) {}

  const NodeConfig& config() const { return cfg_; }
  const NodeConfig& fitted_config() const { return fitted_cfg_; }
  const ChangeOfVariable& change_of_variable() const { return cov_; }
  const std::vector<double>& y_bar() const { return y_bar_; }
  const std::optional<std::vector<double>>& c_bar() const { return c_bar_; }
  double residual_norm() const { return residual_norm_; }

  const Matrix<double>& projection() const {
    std::call_once(cache_->once, [this] { cache_->h = projection_matrix(fitted_cfg_); });
    return cache_->h;
  }

  bool is_extrapolation(double t_star) const {
    return t_star < cfg_.t.back() || t_star > cfg_.t.front();
  }

 private:
  struct Cache {
    std::once_flag once;
    Matrix<double> h;
  };

  NodeConfig cfg_;
  ChangeOfVariable cov_;
  NodeConfig fitted_cfg_;
  std::vector<double> y_bar_;
  std::optional<std::vector<double>> c_bar_;
  double residual_norm_;
  std::shared_ptr<Cache> cache_;
};

// General-case driver: translate if needed, solve on the transformed system.
// The data vector is used as given. An explicit admissible (a0, a1) may be
// supplied, e.g. to reproduce a published translation.
inline FitModel fit(const NodeConfig& cfg, const std::vector<double>& b,
                    std::optional<ChangeOfVariable> override_cov = std::nullopt) {
  detail::require_length(b.size(), cfg.t.size(), "fit: data length");
  ChangeOfVariable cov = override_cov ? *override_cov : make_change_of_variable(cfg);
  if (override_cov) cov.applied = cov.a0 != 0.0 || cov.a1 != 1.0;
  NodeConfig mapped = apply_change_of_variable(cfg, cov);
  LSSolution sol = ls_solve_A(mapped, b);
  std::optional<std::vector<double>> c_bar;
  if (!cov.applied) {
    const std::vector<double> den = scaling_denominators(cfg.x);
    std::vector<double> c(sol.z_bar.size());
    for (std::size_t j = 0; j < c.size(); ++j) c[j] = den[j] * sol.z_bar[j];
    c_bar = std::move(c);
  }
  return FitModel(cfg, cov, std::move(mapped), std::move(sol.z_bar), std::move(c_bar),
                  sol.residual_norm);
}

// First-form barycentric evaluation of the fitted polynomial at t_star, O(n):
// p = w(s) * sum_j y_j / (s - x_j) with w(s) = prod_k (s - x_k), s the mapped
// point. An exact hit on a basis node short-circuits to the single surviving
// term.
inline double evaluate(const FitModel& model, double t_star) {
  const std::vector<double>& x = model.fitted_config().x;
  const std::vector<double>& y = model.y_bar();
  const double s = model.change_of_variable().map(t_star);
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (s == x[j]) {
      double p = y[j];
      for (std::size_t k = 0; k < x.size(); ++k)
        if (k != j) p *= x[j] - x[k];
      return p;
    }
  }
  double omega = 1.0, acc = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    omega *= s - x[j];
    acc += y[j] / (s - x[j]);
  }
  return omega * acc;
}

// Fitted values at the sample nodes via the projector: H b on the (possibly
// translated) configuration. The projector is applied as Q1 (Q1^T b).
inline std::vector<double> project_data(const NodeConfig& cfg, const std::vector<double>& b) {
  detail::require_length(b.size(), cfg.t.size(), "project_data: data length");
  const NodeConfig mapped = apply_change_of_variable(cfg, make_change_of_variable(cfg));
  const QRFactors qr = detail::qr_of(mapped);
  const std::size_t l1 = cfg.t.size(), n1 = cfg.x.size();
  std::vector<double> qtb(n1, 0.0);
  for (std::size_t k = 0; k < n1; ++k)
    for (std::size_t i = 0; i < l1; ++i) qtb[k] += qr.Q(i, k) * b[i];
  std::vector<double> hb(l1, 0.0);
  for (std::size_t i = 0; i < l1; ++i)
    for (std::size_t k = 0; k < n1; ++k) hb[i] += qr.Q(i, k) * qtb[k];
  return hb;
}

}  // namespace tplag

#endif  // TPLAG_LAGRANGE_LS_HPP
