#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fewocc/bigint.hpp"
#include "fewocc/calculus.hpp"
#include "fewocc/cnf.hpp"
#include "fewocc/constructions.hpp"
#include "fewocc/trace.hpp"

namespace fewocc {

/// Fixpoint of the minimal |F′| per width reachable under cap s.
struct DpState {
  unsigned k = 0;
  BigInt s;
  RuleMode mode = RuleMode::Restricted;
  /// min_size[w] for w in 0..k−1; empty when no derivation reaches width w.
  std::vector<std::optional<BigInt>> min_size;
  /// The splittable chain K(x₁..x_w) reaches width w iff 2^w <= s.
  unsigned chain_reach = 0;
  bool feasible = false;
  /// Sweeps over the widths until nothing decreased.
  unsigned rounds = 0;
  /// Cheapest finishing derivation, when feasible and requested.
  std::optional<DerivTrace> witness;
};

struct DpOptions {
  RuleMode mode = RuleMode::Restricted;
  /// Stop sweeping as soon as a complete k-CNF is derivable. Leaves
  /// min_size partially converged and no witness.
  bool stop_when_feasible = false;
  bool want_witness = true;
};

/// Worklist fixpoint over widths 0..k−1. Transitions: the split chain
/// (sizes 2^w while 2^w <= s); compose from widths (k₁, k₂) into width
/// k₁ + k − k₂ with size (2^(k−k₂) − 1)·m[k₁] when the compose requirement is
/// at most s; in PaperLiteral mode also m[w+1] <= 2·m[w] when 2·m[w] <= s.
/// Sizes above s − 1 are never stored.
DpState run_dp(unsigned k, const BigInt& s, const DpOptions& opts = {});

/// A derivation of a complete k-CNF under cap s, or nothing.
std::optional<DerivTrace> feasible(unsigned k, const BigInt& s,
                                   RuleMode mode = RuleMode::Restricted);

/// Largest s for which no complete k-CNF is derivable; binary search over
/// [0, 2^k] (s = 2^k is always feasible through the split chain).
BigInt f2_value(unsigned k, RuleMode mode = RuleMode::Restricted);

struct F2Row {
  unsigned k = 0;
  BigInt f2;
  std::string f2_norm;  // f2·k/2^k, 6 significant digits, rounded once
  ReferenceLines lines;
};

F2Row f2_row(unsigned k, RuleMode mode = RuleMode::Restricted);

/// Rows for k_from..k_to, delivered to `sink` in increasing k. With jobs > 1
/// distinct k are computed on worker threads.
void f2_table(unsigned k_from, unsigned k_to, unsigned jobs,
              const std::function<void(const F2Row&)>& sink,
              RuleMode mode = RuleMode::Restricted);
std::vector<F2Row> f2_table(unsigned k_from, unsigned k_to, unsigned jobs = 1,
                            RuleMode mode = RuleMode::Restricted);

std::string f2_csv_header();
std::string to_csv_line(const F2Row& row);

struct Materialized {
  Formula formula;  // variables renumbered onto 1..n
  /// Concrete |F′| of every trace node, in node order.
  std::vector<std::size_t> node_incomplete_sizes;
  std::size_t max_occurrence = 0;
  bool within_s = false;
};

/// Builds the concrete formula of a trace with the calculus rules (∘ form).
/// Throws Error for an illegal trace, a requirement above s, or a predicted
/// clause count above `clause_cap`; InternalError when a node's concrete
/// width or |F′| differs from its annotation.
Materialized materialize(const DerivTrace& trace, unsigned k, const BigInt& s,
                         RuleMode mode = RuleMode::Restricted,
                         std::size_t clause_cap = kDefaultClauseCap);

/// Clause count of the materialized formula, computed from the trace alone.
BigInt predicted_clauses(const DerivTrace& trace, unsigned k,
                         RuleMode mode = RuleMode::Restricted);

inline constexpr unsigned kOracleMaxK = 6;

/// f₂ by brute force, for checking run_dp: for s = 1, 2, ... close the set
/// of all reachable (width, size, splittable) states under every rule
/// application, and return the last s that derives nothing complete.
/// Restricted rules only; k <= kOracleMaxK.
unsigned long oracle_f2(unsigned k);

}  // namespace fewocc
