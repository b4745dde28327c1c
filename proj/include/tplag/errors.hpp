#ifndef TPLAG_ERRORS_HPP
#define TPLAG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tplag {

// Base class for all validation and numeric-contract failures.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Two basis nodes or two sample nodes coincide.
struct RepeatedNode : Error {
  explicit RepeatedNode(const std::string& what = "RepeatedNode: coincident nodes")
      : Error(what) {}
};

// A sample node equals a basis node.
struct MixedNode : Error {
  explicit MixedNode(const std::string& what = "MixedNode: sample node equals basis node")
      : Error(what) {}
};

// Basis nodes not strictly increasing / sample nodes not strictly decreasing.
struct NotSorted : Error {
  explicit NotSorted(const std::string& what = "NotSorted: nodes are not strictly monotone")
      : Error(what) {}
};

// The configuration does not place every sample node above every basis node.
struct NotOrdered : Error {
  explicit NotOrdered(const std::string& what =
                          "NotOrdered: sample nodes must all lie above the basis nodes")
      : Error(what) {}
};

struct DimensionMismatch : Error {
  explicit DimensionMismatch(const std::string& what = "DimensionMismatch")
      : Error(what) {}
};

// A bidiagonal-decomposition entry is zero or negative where strict positivity is required.
struct NonPositiveBD : Error {
  explicit NonPositiveBD(const std::string& what = "NonPositiveBD: entries must be positive")
      : Error(what) {}
};

// Defensive: a triangular factor has a zero diagonal entry.
struct SingularR : Error {
  explicit SingularR(const std::string& what = "SingularR: zero diagonal pivot")
      : Error(what) {}
};

// Exact elimination met a non-positive pivot, so the matrix is not strictly totally positive.
struct NotSTP : Error {
  explicit NotSTP(const std::string& what = "NotSTP: non-positive pivot in elimination")
      : Error(what) {}
};

struct RankDeficient : Error {
  explicit RankDeficient(const std::string& what = "RankDeficient")
      : Error(what) {}
};

// Bundled reference data not found (CLI exit code 3).
struct MissingReference : Error {
  explicit MissingReference(const std::string& what = "MissingReference")
      : Error(what) {}
};

// Cooperative cancellation of a long-running exact computation.
struct Cancelled : Error {
  explicit Cancelled(const std::string& what = "Cancelled") : Error(what) {}
};

}  // namespace tplag

#endif  // TPLAG_ERRORS_HPP
