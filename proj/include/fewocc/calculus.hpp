#pragma once

#include <cstddef>

#include "fewocc/bigint.hpp"
#include "fewocc/cnf.hpp"

namespace fewocc {

/// Restricted: rule 1 (split) only applies to splittable formulas, which makes
/// s >= 2|F′| sufficient for the occurrence bound. PaperLiteral: rule 1
/// applies to any formula with s >= 2|F′|; outputs may exceed s.
enum class RuleMode { Restricted, PaperLiteral };

const char* to_string(RuleMode mode);

/// A formula viewed against target width k, with its F′ / F″ statistics.
/// All derived fields are recomputed from the clauses on construction.
class DerivedFormula {
 public:
  /// Throws if a clause is wider than k or F′ mixes widths.
  DerivedFormula(Formula formula, unsigned k);

  const Formula& formula() const { return formula_; }
  unsigned k() const { return k_; }
  /// Common width of F′; k when F′ is empty.
  unsigned width() const { return width_; }
  std::size_t incomplete_size() const { return partition_.incomplete.size(); }
  const WidthPartition& partition() const { return partition_; }
  std::size_t max_occurrence() const { return census_.max_occurrence(); }
  const OccurrenceCensus& census() const { return census_; }
  bool complete() const { return width_ == k_; }
  /// Every variable of F′ occurs in every clause of F′ and nowhere in F″.
  bool splittable() const { return splittable_; }

 private:
  Formula formula_;
  unsigned k_;
  unsigned width_ = 0;
  WidthPartition partition_;
  OccurrenceCensus census_;
  bool splittable_ = false;
};

/// {∅}: width 0, |F′| = 1.
DerivedFormula axiom(unsigned k);

/// Rule 1: F′ × {{x},{x̄}} ∪ F″ for a fresh x. Needs s >= 2|F′| and width < k,
/// and in Restricted mode a splittable input.
DerivedFormula split(const DerivedFormula& f, const BigInt& s, VarAllocator& alloc,
                     RuleMode mode = RuleMode::Restricted);

/// (2^(k−k2) − 1)·m1 + m2: the occurrence count of the x-block in F₁ ∘ F₂.
BigInt compose_requirement(unsigned k, unsigned k1, unsigned k2, const BigInt& m1,
                           const BigInt& m2);

/// Rule 2, F₁ ∘ F₂: a fresh x-block of k − k₂ variables; for every clause c of
/// K⁻(x) a fresh copy F₁,c contributes F′₁,c × {c} ∪ F″₁,c; a fresh copy of
/// F₂ contributes F′₂ × {{x}} ∪ F″₂. Needs k₁ <= k₂ < k and
/// s >= compose_requirement. The x-block is allocated first, then the F₁
/// copies in K⁻ clause order, then the F₂ copy.
DerivedFormula compose(const DerivedFormula& f1, const DerivedFormula& f2, const BigInt& s,
                       VarAllocator& alloc);

/// F₁ ∘′ F₂ = F′₁ × K⁻(x) ∪ F″₁ ∪ F′₂ × {{x}} ∪ F″₂ on one copy of F₁.
/// Occurrences of F₁'s variables can grow; the census is recomputed and the
/// call throws if any variable exceeds s.
DerivedFormula compose_compact(const DerivedFormula& f1, const DerivedFormula& f2,
                               const BigInt& s, VarAllocator& alloc);

}  // namespace fewocc
