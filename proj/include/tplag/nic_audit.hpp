#ifndef TPLAG_NIC_AUDIT_HPP
#define TPLAG_NIC_AUDIT_HPP

#include <atomic>
#include <cassert>
#include <cstdint>

namespace tplag::nic {

// Runtime audit of the no-inaccurate-cancellation discipline: every factor
// entering a product on the accurate decomposition path must be strictly
// positive. Instrumentation is compiled in when TPLAG_NIC_AUDIT is defined
// (the test suites define it); release builds pay nothing.

inline std::atomic<std::uint64_t>& violation_count() {
  static std::atomic<std::uint64_t> count{0};
  return count;
}

inline void reset() { violation_count().store(0); }

template <typename T>
inline T checked_positive(T v) {
#ifdef TPLAG_NIC_AUDIT
  if (!(v > T(0))) {
    violation_count().fetch_add(1);
    assert(v > T(0) && "non-positive factor on the accurate path");
  }
#endif
  return v;
}

}  // namespace tplag::nic

#endif  // TPLAG_NIC_AUDIT_HPP
