#include "fewocc/calculus.hpp"

#include <algorithm>
#include <string>

#include "fewocc/error.hpp"

namespace fewocc {

const char* to_string(RuleMode mode) {
  return mode == RuleMode::Restricted ? "restricted" : "paper-literal";
}

DerivedFormula::DerivedFormula(Formula formula, unsigned k)
    : formula_(std::move(formula)), k_(k) {
  partition_ = width_partition(formula_, k);
  census_ = occurrence_census(formula_, k);
  const auto& inc = partition_.incomplete;
  if (inc.empty()) {
    width_ = k;
  } else {
    width_ = static_cast<unsigned>(inc.clauses().front().size());
    for (const auto& c : inc) {
      if (c.size() != width_) {
        throw Error("incomplete part mixes widths " + std::to_string(width_) + " and " +
                    std::to_string(c.size()));
      }
    }
  }
  splittable_ = true;
  for (Var v : inc.variables()) {
    const auto occ = census_.of(v);
    if (occ.incomplete != inc.size() || occ.complete != 0) {
      splittable_ = false;
      break;
    }
  }
}

DerivedFormula axiom(unsigned k) {
  if (k == 0) throw Error("k must be at least 1");
  return DerivedFormula(Formula(std::vector<Clause>{Clause{}}), k);
}

namespace {

BigInt as_big(std::size_t v) { return BigInt(static_cast<unsigned long>(v)); }

// Fresh x must not collide with f's own variables.
void check_allocator_above(const Formula& f, const VarAllocator& alloc) {
  if (alloc.peek() <= f.max_var()) {
    throw Error("allocator at " + std::to_string(alloc.peek()) +
                " would collide with existing variable " + std::to_string(f.max_var()));
  }
}

Formula single_clause(const Clause& c) { return Formula(std::vector<Clause>{c}); }

Formula positive_clause(const std::vector<Var>& vars) {
  Clause c;
  for (Var v : vars) c.push_back(Lit::positive(v));
  return single_clause(c);
}

void check_compose_widths(const DerivedFormula& f1, const DerivedFormula& f2) {
  if (f1.k() != f2.k()) throw Error("compose operands disagree on k");
  if (!(f1.width() <= f2.width() && f2.width() < f2.k())) {
    throw Error("compose needs k1 <= k2 < k, got k1=" + std::to_string(f1.width()) +
                " k2=" + std::to_string(f2.width()) + " k=" + std::to_string(f2.k()));
  }
}

}  // namespace

DerivedFormula split(const DerivedFormula& f, const BigInt& s, VarAllocator& alloc,
                     RuleMode mode) {
  if (f.complete()) throw Error("split of a formula whose F′ is empty (width already k)");
  if (s < 2 * as_big(f.incomplete_size())) {
    throw Error("split needs s >= 2|F′| = " + std::to_string(2 * f.incomplete_size()) +
                ", got s=" + to_string(s));
  }
  if (mode == RuleMode::Restricted && !f.splittable()) {
    throw Error("split of a non-splittable formula: an F′ variable is missing from some "
                "F′ clause or also occurs in F″, so doubling F′ could exceed s");
  }
  check_allocator_above(f.formula(), alloc);
  const Var x = alloc.take();
  const Formula unit_pair = Formula::of({{static_cast<long long>(x)}, {-static_cast<long long>(x)}});
  const Formula parts[] = {product(f.partition().incomplete, unit_pair), f.partition().complete};
  return DerivedFormula(disjoint_union(parts), f.k());
}

BigInt compose_requirement(unsigned k, unsigned k1, unsigned k2, const BigInt& m1,
                           const BigInt& m2) {
  if (!(k1 <= k2 && k2 < k)) {
    throw Error("compose needs k1 <= k2 < k, got k1=" + std::to_string(k1) +
                " k2=" + std::to_string(k2) + " k=" + std::to_string(k));
  }
  return pow2_minus_one(k - k2) * m1 + m2;
}

DerivedFormula compose(const DerivedFormula& f1, const DerivedFormula& f2, const BigInt& s,
                       VarAllocator& alloc) {
  check_compose_widths(f1, f2);
  const unsigned k = f1.k();
  const BigInt need = compose_requirement(k, f1.width(), f2.width(), as_big(f1.incomplete_size()),
                                          as_big(f2.incomplete_size()));
  if (s < need) {
    throw Error("compose needs s >= " + to_string(need) + ", got s=" + to_string(s));
  }
  const auto x = alloc.take(k - f2.width());
  const Formula guard = almost_complete_formula(x);

  std::vector<Formula> parts;
  parts.reserve(2 * guard.size() + 2);
  for (const auto& c : guard) {
    const auto copy = width_partition(fresh_copy(f1.formula(), alloc), k);
    parts.push_back(product(copy.incomplete, single_clause(c)));
    parts.push_back(copy.complete);
  }
  const auto copy2 = width_partition(fresh_copy(f2.formula(), alloc), k);
  parts.push_back(product(copy2.incomplete, positive_clause(x)));
  parts.push_back(copy2.complete);

  DerivedFormula g(disjoint_union(parts), k);
  const bool inputs_ok = BigInt(static_cast<unsigned long>(f1.max_occurrence())) <= s &&
                         BigInt(static_cast<unsigned long>(f2.max_occurrence())) <= s;
  if (inputs_ok && as_big(g.max_occurrence()) > s) {
    throw InternalError("composition exceeded the occurrence bound");
  }
  return g;
}

DerivedFormula compose_compact(const DerivedFormula& f1, const DerivedFormula& f2,
                               const BigInt& s, VarAllocator& alloc) {
  check_compose_widths(f1, f2);
  const unsigned k = f1.k();
  const BigInt need = compose_requirement(k, f1.width(), f2.width(), as_big(f1.incomplete_size()),
                                          as_big(f2.incomplete_size()));
  if (s < need) {
    throw Error("compose needs s >= " + to_string(need) + ", got s=" + to_string(s));
  }
  const auto x = alloc.take(k - f2.width());
  const auto copy1 = width_partition(fresh_copy(f1.formula(), alloc), k);
  const auto copy2 = width_partition(fresh_copy(f2.formula(), alloc), k);
  const Formula parts[] = {product(copy1.incomplete, almost_complete_formula(x)), copy1.complete,
                           product(copy2.incomplete, positive_clause(x)), copy2.complete};
  DerivedFormula g(disjoint_union(parts), k);
  if (as_big(g.max_occurrence()) > s) {
    throw Error("compact composition raises a variable to " + std::to_string(g.max_occurrence()) +
                " occurrences, above s=" + to_string(s));
  }
  return g;
}

}  // namespace fewocc
