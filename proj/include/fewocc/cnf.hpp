#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <vector>

namespace fewocc {

using Var = std::uint32_t;

/// A variable with a polarity. Encoded as 2*var + negated so that sorting by
/// code orders literals by variable first, positive before negative.
class Lit {
 public:
  constexpr Lit() = default;

  static constexpr Lit positive(Var v) { return Lit{v << 1}; }
  static constexpr Lit negative(Var v) { return Lit{(v << 1) | 1u}; }
  static constexpr Lit make(Var v, bool negated) {
    return negated ? negative(v) : positive(v);
  }
  /// From a signed DIMACS integer (nonzero).
  static Lit from_dimacs(long long value);

  constexpr Var var() const { return code_ >> 1; }
  constexpr bool negated() const { return (code_ & 1u) != 0; }
  constexpr std::uint32_t code() const { return code_; }
  constexpr Lit operator~() const { return Lit{code_ ^ 1u}; }
  long long to_dimacs() const {
    return negated() ? -static_cast<long long>(var())
                     : static_cast<long long>(var());
  }

  constexpr auto operator<=>(const Lit&) const = default;

 private:
  constexpr explicit Lit(std::uint32_t code) : code_(code) {}
  std::uint32_t code_ = 0;
};

/// Sorted by literal code, at most one literal per variable.
using Clause = std::vector<Lit>;

/// A CNF formula with set semantics. Construction normalizes: literals within
/// a clause are sorted and deduplicated, clauses are sorted lexicographically
/// and deduplicated. Tautological clauses and variable 0 are rejected.
/// Immutable after construction.
class Formula {
 public:
  /// The empty formula (no clauses). Note this is not {∅}.
  Formula() = default;
  explicit Formula(std::vector<Clause> clauses);

  /// Convenience for tests and literals: Formula::of({{1, -2}, {2}}).
  static Formula of(std::initializer_list<std::initializer_list<long long>> clauses);

  std::size_t size() const { return clauses_.size(); }
  bool empty() const { return clauses_.empty(); }
  const std::vector<Clause>& clauses() const { return clauses_; }
  auto begin() const { return clauses_.begin(); }
  auto end() const { return clauses_.end(); }

  /// Sorted, distinct.
  std::vector<Var> variables() const;
  std::size_t num_vars() const { return variables().size(); }
  Var max_var() const;
  std::size_t max_width() const;
  /// True when every clause has exactly k literals.
  bool uniform_width(std::size_t k) const;

  bool operator==(const Formula&) const = default;

 private:
  struct Normalized {};
  Formula(Normalized, std::vector<Clause> clauses) : clauses_(std::move(clauses)) {}
  friend Formula make_normalized(std::vector<Clause> clauses);

  std::vector<Clause> clauses_;
};

/// K(vars): all 2^|vars| sign patterns. K([]) = {∅}.
Formula complete_formula(std::span<const Var> vars);
/// K⁻(vars): K(vars) without the all-positive clause. vars must be nonempty.
Formula almost_complete_formula(std::span<const Var> vars);
/// {c1 ∪ c2 : c1 ∈ f1, c2 ∈ f2} for variable-disjoint f1, f2.
Formula product(const Formula& f1, const Formula& f2);
/// Union of clause sets.
Formula disjoint_union(std::span<const Formula> parts);

/// Contiguous ids first, first+1, ..., first+count-1.
std::vector<Var> var_range(Var first, std::size_t count);

/// Split into F′ (width < k) and F″ (width = k).
struct WidthPartition {
  std::size_t k = 0;
  Formula incomplete;
  Formula complete;
};

WidthPartition width_partition(const Formula& f, std::size_t k);

struct VarOccurrence {
  Var var = 0;
  std::size_t total = 0;
  std::size_t incomplete = 0;
  std::size_t complete = 0;
};

/// Per-variable clause counts, split by F′ / F″. A clause contributes at most
/// one to each of its variables.
class OccurrenceCensus {
 public:
  OccurrenceCensus() = default;
  OccurrenceCensus(std::vector<VarOccurrence> entries);

  /// Sorted by variable.
  const std::vector<VarOccurrence>& entries() const { return entries_; }
  /// Zero counts for variables not in the formula.
  VarOccurrence of(Var v) const;
  std::size_t max_occurrence() const { return max_occurrence_; }

 private:
  std::vector<VarOccurrence> entries_;
  std::size_t max_occurrence_ = 0;
};

OccurrenceCensus occurrence_census(const Formula& f, std::size_t k);

/// Monotone counter handing out variable ids. One allocator per derivation
/// context; not thread-safe, give each task its own.
class VarAllocator {
 public:
  explicit VarAllocator(Var next = 1) : next_(next) {}
  Var peek() const { return next_; }
  Var take() { return next_++; }
  /// Reserves count consecutive ids and returns them.
  std::vector<Var> take(std::size_t count);

 private:
  Var next_;
};

/// Isomorphic copy of f on fresh ids; variables are mapped in ascending order
/// to consecutive ids from the allocator. Throws if a fresh id is already used
/// by f.
Formula fresh_copy(const Formula& f, VarAllocator& allocator);

/// f renumbered onto 1..n in ascending order of the original ids.
/// `mapping[i]` is the original id of new variable i+1.
struct Renumbered {
  Formula formula;
  std::vector<Var> mapping;
  bool identity = true;
};
Renumbered renumber_contiguous(const Formula& f);

/// Total truth assignment over some variable set.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::map<Var, bool> values) : values_(std::move(values)) {}

  void set(Var v, bool value) { values_[v] = value; }
  bool has(Var v) const { return values_.contains(v); }
  /// Throws if v is unassigned.
  bool value(Var v) const;
  const std::map<Var, bool>& values() const { return values_; }

  bool satisfies(const Clause& c) const;
  bool satisfies(const Formula& f) const;

  bool operator==(const Assignment&) const = default;
  auto operator<=>(const Assignment&) const = default;

 private:
  std::map<Var, bool> values_;
};

}  // namespace fewocc
