// Brute-force f₂ over explicit state sets. Shares nothing with the fixpoint in
// dp.cpp on purpose: every reachable (width, size) pair is kept, not only the
// minimum per width, and s is swept upward one at a time.

#include <set>
#include <tuple>

#include "fewocc/dp.hpp"
#include "fewocc/error.hpp"

namespace fewocc {

namespace {

struct State {
  unsigned width;
  unsigned long size;
  bool splittable;
  auto operator<=>(const State&) const = default;
};

// True when some rule application at cap s yields a complete k-CNF.
bool derives_complete(unsigned k, unsigned long s) {
  std::set<State> states{{0, 1, true}};
  while (true) {
    std::set<State> next = states;
    for (const auto& st : states) {
      if (st.splittable && 2 * st.size <= s) {
        if (st.width + 1 == k) return true;
        next.insert({st.width + 1, 2 * st.size, true});
      }
    }
    for (const auto& f1 : states) {
      for (const auto& f2 : states) {
        if (!(f1.width <= f2.width && f2.width < k)) continue;
        const unsigned d = k - f2.width;
        const unsigned long copies = (1ul << d) - 1;
        if (copies * f1.size + f2.size > s) continue;
        if (f1.width == f2.width) return true;
        next.insert({f1.width + d, copies * f1.size, false});
      }
    }
    if (next == states) return false;
    states = std::move(next);
  }
}

}  // namespace

unsigned long oracle_f2(unsigned k) {
  if (k < 1 || k > kOracleMaxK) {
    throw Error("oracle_f2 supports 1 <= k <= " + std::to_string(kOracleMaxK));
  }
  for (unsigned long s = 1;; ++s) {
    if (derives_complete(k, s)) return s - 1;
  }
}

}  // namespace fewocc
