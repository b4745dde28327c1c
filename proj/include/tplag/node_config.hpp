#ifndef TPLAG_NODE_CONFIG_HPP
#define TPLAG_NODE_CONFIG_HPP

#include <algorithm>
#include <cstddef>
#include <unordered_set>
#include <utility>
#include <vector>

#include "tplag/errors.hpp"

namespace tplag {

// Basis nodes x (strictly increasing) and sample nodes t (strictly decreasing,
// t[0] largest), with l >= n where n+1 = |x| and l+1 = |t|. ordered_flag is
// true iff every sample node lies strictly above every basis node, the
// arrangement under which the denominator-free collocation matrix is strictly
// totally positive.
class NodeConfig {
 public:
  NodeConfig(std::vector<double> x_nodes, std::vector<double> t_nodes)
      : x(std::move(x_nodes)), t(std::move(t_nodes)) {
    if (x.empty() || t.empty()) throw DimensionMismatch("NodeConfig: empty node set");
    for (std::size_t j = 1; j < x.size(); ++j) {
      if (x[j] == x[j - 1]) throw RepeatedNode();
      if (x[j] < x[j - 1]) throw NotSorted("NotSorted: basis nodes must be strictly increasing");
    }
    for (std::size_t i = 1; i < t.size(); ++i) {
      if (t[i] == t[i - 1]) throw RepeatedNode();
      if (t[i] > t[i - 1]) throw NotSorted("NotSorted: sample nodes must be strictly decreasing");
    }
    if (t.size() < x.size())
      throw DimensionMismatch("NodeConfig: need at least as many sample as basis nodes");
    // A sample node may land on a basis node in the general arrangement
    // (Chebyshev-style sets share endpoints); record it for the operations
    // whose contract excludes it.
    std::unordered_set<double> xs(x.begin(), x.end());
    for (double ti : t)
      if (xs.count(ti)) {
        mixed_flag = true;
        break;
      }
    ordered_flag = x.back() < t.back();
  }

  std::vector<double> x;
  std::vector<double> t;
  bool ordered_flag = false;
  bool mixed_flag = false;  // some sample node equals some basis node

  std::size_t degree() const { return x.size() - 1; }    // n
  std::size_t samples() const { return t.size() - 1; }   // l
};

// Recomputes and stores the ordering flag: true iff max(x) < min(t).
inline bool validate_ordering(NodeConfig& cfg) {
  cfg.ordered_flag = cfg.x.back() < cfg.t.back();
  return cfg.ordered_flag;
}

// den_j = prod_{k != j} (x_j - x_k); the only subtractions are of input nodes.
template <typename T>
std::vector<T> scaling_denominators(const std::vector<T>& x) {
  const std::size_t m = x.size();
  std::vector<T> den(m, T(1));
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = 0; k < m; ++k) {
      if (k == j) continue;
      if (x[j] == x[k]) throw RepeatedNode();
      den[j] *= x[j] - x[k];
    }
  return den;
}

// Reciprocals of the Lagrange normalization diagonal; sign of den_j alternates
// as (-1)^(n+1-j) for increasing basis nodes.
struct ScalingDiag {
  std::vector<double> den;
};

inline ScalingDiag scaling_diag(const std::vector<double>& x) {
  return ScalingDiag{scaling_denominators(x)};
}

}  // namespace tplag

#endif  // TPLAG_NODE_CONFIG_HPP
