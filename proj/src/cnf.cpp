#include "fewocc/cnf.hpp"

#include <algorithm>
#include <string>

#include "fewocc/error.hpp"

namespace fewocc {

Lit Lit::from_dimacs(long long value) {
  if (value == 0) throw Error("literal 0 is a clause terminator, not a literal");
  const long long mag = value < 0 ? -value : value;
  if (mag > static_cast<long long>(UINT32_MAX >> 1)) {
    throw Error("variable id " + std::to_string(mag) + " out of range");
  }
  return make(static_cast<Var>(mag), value < 0);
}

namespace {

// Sorts and deduplicates literals; rejects tautologies and variable 0.
void normalize_clause(Clause& c) {
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].var() == 0) throw Error("variable ids start at 1");
    if (i + 1 < c.size() && c[i].var() == c[i + 1].var()) {
      throw Error("tautological clause on variable " + std::to_string(c[i].var()));
    }
  }
}

}  // namespace

Formula make_normalized(std::vector<Clause> clauses) {
  std::sort(clauses.begin(), clauses.end());
  clauses.erase(std::unique(clauses.begin(), clauses.end()), clauses.end());
  return Formula(Formula::Normalized{}, std::move(clauses));
}

Formula::Formula(std::vector<Clause> clauses) {
  for (auto& c : clauses) normalize_clause(c);
  *this = make_normalized(std::move(clauses));
}

Formula Formula::of(std::initializer_list<std::initializer_list<long long>> clauses) {
  std::vector<Clause> out;
  out.reserve(clauses.size());
  for (const auto& c : clauses) {
    Clause cl;
    for (long long v : c) cl.push_back(Lit::from_dimacs(v));
    out.push_back(std::move(cl));
  }
  return Formula(std::move(out));
}

std::vector<Var> Formula::variables() const {
  std::vector<Var> vars;
  for (const auto& c : clauses_) {
    for (Lit l : c) vars.push_back(l.var());
  }
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

Var Formula::max_var() const {
  Var m = 0;
  for (const auto& c : clauses_) {
    if (!c.empty()) m = std::max(m, c.back().var());
  }
  return m;
}

std::size_t Formula::max_width() const {
  std::size_t w = 0;
  for (const auto& c : clauses_) w = std::max(w, c.size());
  return w;
}

bool Formula::uniform_width(std::size_t k) const {
  return std::all_of(clauses_.begin(), clauses_.end(),
                     [k](const Clause& c) { return c.size() == k; });
}

std::vector<Var> var_range(Var first, std::size_t count) {
  std::vector<Var> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = first + static_cast<Var>(i);
  return out;
}

namespace {

void check_distinct(std::span<const Var> vars) {
  std::vector<Var> sorted(vars.begin(), vars.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error("duplicate variable id in block");
  }
  if (!sorted.empty() && sorted.front() == 0) throw Error("variable ids start at 1");
}

}  // namespace

Formula complete_formula(std::span<const Var> vars) {
  check_distinct(vars);
  if (vars.size() > 30) throw Error("complete formula on more than 30 variables");
  std::vector<Var> sorted(vars.begin(), vars.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  std::vector<Clause> clauses;
  clauses.reserve(std::size_t{1} << n);
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Clause c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = Lit::make(sorted[i], (mask >> i) & 1u);
    clauses.push_back(std::move(c));
  }
  return make_normalized(std::move(clauses));
}

Formula almost_complete_formula(std::span<const Var> vars) {
  if (vars.empty()) throw Error("K⁻ needs at least one variable");
  Formula k = complete_formula(vars);
  std::vector<Clause> clauses;
  clauses.reserve(k.size() - 1);
  for (const auto& c : k) {
    const bool all_positive =
        std::none_of(c.begin(), c.end(), [](Lit l) { return l.negated(); });
    if (!all_positive) clauses.push_back(c);
  }
  return make_normalized(std::move(clauses));
}

Formula product(const Formula& f1, const Formula& f2) {
  const auto v1 = f1.variables();
  const auto v2 = f2.variables();
  std::vector<Var> shared;
  std::set_intersection(v1.begin(), v1.end(), v2.begin(), v2.end(),
                        std::back_inserter(shared));
  if (!shared.empty()) {
    throw Error("product of formulas sharing variable " + std::to_string(shared.front()));
  }
  std::vector<Clause> clauses;
  clauses.reserve(f1.size() * f2.size());
  for (const auto& a : f1) {
    for (const auto& b : f2) {
      Clause c;
      c.reserve(a.size() + b.size());
      std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(c));
      clauses.push_back(std::move(c));
    }
  }
  return make_normalized(std::move(clauses));
}

Formula disjoint_union(std::span<const Formula> parts) {
  std::size_t total = 0;
  for (const auto& p : parts) total += p.size();
  std::vector<Clause> clauses;
  clauses.reserve(total);
  for (const auto& p : parts) clauses.insert(clauses.end(), p.begin(), p.end());
  return make_normalized(std::move(clauses));
}

WidthPartition width_partition(const Formula& f, std::size_t k) {
  std::vector<Clause> low;
  std::vector<Clause> full;
  for (const auto& c : f) {
    if (c.size() > k) {
      throw Error("clause of width " + std::to_string(c.size()) + " exceeds k=" +
                  std::to_string(k));
    }
    (c.size() < k ? low : full).push_back(c);
  }
  // Subsequences of a normalized clause list are already normalized.
  return WidthPartition{k, make_normalized(std::move(low)), make_normalized(std::move(full))};
}

OccurrenceCensus::OccurrenceCensus(std::vector<VarOccurrence> entries)
    : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(),
            [](const VarOccurrence& a, const VarOccurrence& b) { return a.var < b.var; });
  for (const auto& e : entries_) max_occurrence_ = std::max(max_occurrence_, e.total);
}

VarOccurrence OccurrenceCensus::of(Var v) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), v,
                             [](const VarOccurrence& e, Var x) { return e.var < x; });
  if (it != entries_.end() && it->var == v) return *it;
  return VarOccurrence{v, 0, 0, 0};
}

OccurrenceCensus occurrence_census(const Formula& f, std::size_t k) {
  std::vector<VarOccurrence> dense(static_cast<std::size_t>(f.max_var()) + 1);
  for (const auto& c : f) {
    if (c.size() > k) {
      throw Error("clause of width " + std::to_string(c.size()) + " exceeds k=" +
                  std::to_string(k));
    }
    const bool incomplete = c.size() < k;
    for (Lit l : c) {
      auto& e = dense[l.var()];
      ++e.total;
      ++(incomplete ? e.incomplete : e.complete);
    }
  }
  std::vector<VarOccurrence> entries;
  for (Var v = 1; v < dense.size(); ++v) {
    if (dense[v].total > 0) {
      dense[v].var = v;
      entries.push_back(dense[v]);
    }
  }
  return OccurrenceCensus(std::move(entries));
}

std::vector<Var> VarAllocator::take(std::size_t count) {
  auto out = var_range(next_, count);
  next_ += static_cast<Var>(count);
  return out;
}

namespace {

Formula remap(const Formula& f, const std::vector<Var>& from, Var first) {
  // from is sorted; the i-th variable maps to first + i. The map is monotone,
  // so literal order inside clauses is preserved.
  const Var maxv = from.empty() ? 0 : from.back();
  std::vector<Var> table(static_cast<std::size_t>(maxv) + 1, 0);
  for (std::size_t i = 0; i < from.size(); ++i) table[from[i]] = first + static_cast<Var>(i);
  std::vector<Clause> clauses;
  clauses.reserve(f.size());
  for (const auto& c : f) {
    Clause out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) out[i] = Lit::make(table[c[i].var()], c[i].negated());
    clauses.push_back(std::move(out));
  }
  return make_normalized(std::move(clauses));
}

}  // namespace

Formula fresh_copy(const Formula& f, VarAllocator& allocator) {
  const auto vars = f.variables();
  const Var first = allocator.peek();
  if (!vars.empty()) {
    const Var last = first + static_cast<Var>(vars.size()) - 1;
    auto it = std::lower_bound(vars.begin(), vars.end(), first);
    if (it != vars.end() && *it <= last) {
      throw Error("fresh variable " + std::to_string(*it) + " collides with the source formula");
    }
  }
  allocator.take(vars.size());
  return remap(f, vars, first);
}

Renumbered renumber_contiguous(const Formula& f) {
  Renumbered r;
  r.mapping = f.variables();
  for (std::size_t i = 0; i < r.mapping.size(); ++i) {
    if (r.mapping[i] != i + 1) r.identity = false;
  }
  r.formula = r.identity ? f : remap(f, r.mapping, 1);
  return r;
}

bool Assignment::value(Var v) const {
  auto it = values_.find(v);
  if (it == values_.end()) throw Error("variable " + std::to_string(v) + " unassigned");
  return it->second;
}

bool Assignment::satisfies(const Clause& c) const {
  return std::any_of(c.begin(), c.end(),
                     [this](Lit l) { return value(l.var()) != l.negated(); });
}

bool Assignment::satisfies(const Formula& f) const {
  return std::all_of(f.begin(), f.end(), [this](const Clause& c) { return satisfies(c); });
}

}  // namespace fewocc
