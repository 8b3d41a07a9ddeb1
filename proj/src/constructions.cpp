#include "fewocc/constructions.hpp"

#include <algorithm>
#include <cmath>

#include "fewocc/error.hpp"
#include "fewocc/numfmt.hpp"

namespace fewocc {

bool conservative_leq(double lhs, double rhs) {
  const double scale = std::max(std::fabs(lhs), std::fabs(rhs));
  return lhs <= rhs && !(rhs - lhs <= 1e-9 * scale);
}

Lemma1Params Lemma1Params::make(unsigned k, unsigned l) {
  if (l < 1 || l > k) {
    throw Error("block size l=" + std::to_string(l) + " must lie in [1, k=" + std::to_string(k) + "]");
  }
  Lemma1Params p;
  p.k = k;
  p.l = l;
  p.u = k / l;
  p.v = k - l * p.u;
  return p;
}

bool lemma2_condition(unsigned k, unsigned l) {
  if (l > k) return false;
  const double lhs = static_cast<double>(l) * std::ldexp(1.0, static_cast<int>(l));
  const double rhs = kLog2E * (static_cast<double>(k) - 2.0 * static_cast<double>(l));
  if (l == 0) return rhs > 0;
  return conservative_leq(lhs, rhs);
}

Lemma2Params Lemma2Params::make(unsigned k, unsigned l) {
  if (k == 0) throw Error("k must be at least 1");
  if (!lemma2_condition(k, l)) {
    throw Error("l=" + std::to_string(l) + " violates l*2^l <= log e*(k-2l) for k=" +
                std::to_string(k));
  }
  Lemma2Params p;
  p.k = k;
  p.l = l;
  for (unsigned j = 0; j <= l; ++j) {
    const unsigned kj = k - l + j;
    p.stage_width.push_back(kj);
    p.stage_blocks.push_back(j == 0 ? 0 : kj / (l - j + 1));
  }
  p.s = pow2(k - l + 1);
  return p;
}

namespace {

// 2^zeros · (2^block − 1)^blocks
BigInt product_block_size(unsigned zeros, unsigned block, unsigned blocks) {
  BigInt base = pow2_minus_one(block);
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), blocks);
  return r * pow2(zeros);
}

ConstructionStats measure(const Formula& f, unsigned k) {
  const auto census = occurrence_census(f, k);
  std::size_t incomplete = 0;
  for (const auto& c : f) incomplete += c.size() < k ? 1 : 0;
  ConstructionStats s;
  s.n = static_cast<unsigned long>(f.num_vars());
  s.m = static_cast<unsigned long>(f.size());
  s.max_occurrence = static_cast<unsigned long>(census.max_occurrence());
  s.incomplete_size = static_cast<unsigned long>(incomplete);
  return s;
}

void check_cap(const BigInt& predicted, std::size_t cap) {
  if (predicted > BigInt(static_cast<unsigned long>(cap))) {
    throw Error("construction needs " + to_string(predicted) +
                " clauses, above the materialization cap of " + std::to_string(cap));
  }
}

// K(z) × K⁻(x⁽¹⁾) × … × K⁻(x⁽ᵘ⁾)
Formula guard_formula(const std::vector<Var>& z, const std::vector<std::vector<Var>>& xs) {
  Formula f = complete_formula(z);
  for (const auto& x : xs) f = product(f, almost_complete_formula(x));
  return f;
}

Formula positive_clause(const std::vector<Var>& vars) {
  Clause c;
  for (Var v : vars) c.push_back(Lit::positive(v));
  return Formula({c});
}

}  // namespace

ConstructionStats lemma1_stats(const Lemma1Params& p) {
  const BigInt f0 = product_block_size(p.v, p.l, p.u);
  const BigInt fi = pow2(p.k - p.l);
  ConstructionStats s;
  s.n = p.k + p.u * (p.k - p.l);
  s.m = f0 + BigInt(p.u) * fi;
  s.max_occurrence = f0 + fi;
  s.incomplete_size = 0;
  return s;
}

BuiltFormula lemma1_build(unsigned k, unsigned l, const BuildOptions& opts) {
  const auto p = Lemma1Params::make(k, l);
  check_cap(lemma1_stats(p).m, opts.clause_cap);

  VarAllocator alloc;
  const auto z = alloc.take(p.v);
  std::vector<std::vector<Var>> xs;
  for (unsigned i = 0; i < p.u; ++i) xs.push_back(alloc.take(p.l));
  std::vector<std::vector<Var>> ys;
  if (opts.compact) {
    ys.assign(p.u, alloc.take(p.k - p.l));
  } else {
    for (unsigned i = 0; i < p.u; ++i) ys.push_back(alloc.take(p.k - p.l));
  }

  std::vector<Formula> parts;
  parts.push_back(guard_formula(z, xs));
  for (unsigned i = 0; i < p.u; ++i) {
    parts.push_back(product(complete_formula(ys[i]), positive_clause(xs[i])));
  }
  BuiltFormula out;
  out.formula = disjoint_union(parts);
  out.stats = measure(out.formula, k);
  return out;
}

std::vector<BigInt> lemma2_predicted_clauses(const Lemma2Params& p, bool compact) {
  std::vector<BigInt> m;
  BigInt prev_incomplete = pow2(p.k - p.l);
  m.push_back(prev_incomplete);
  if (p.l == 0) prev_incomplete = 0;
  for (unsigned j = 1; j <= p.l; ++j) {
    const unsigned block = p.l - j + 1;
    const unsigned uj = p.stage_blocks[j];
    const BigInt guard = product_block_size(p.stage_width[j] - uj * block, block, uj);
    const BigInt& prev = m.back();
    BigInt total = guard + BigInt(uj) * (compact ? prev_incomplete : prev);
    if (compact) total += prev - prev_incomplete;
    m.push_back(total);
    prev_incomplete = j < p.l ? guard : BigInt(0);
  }
  return m;
}

std::vector<BuiltFormula> lemma2_build(unsigned k, unsigned l, const BuildOptions& opts) {
  const auto p = Lemma2Params::make(k, l);
  for (const auto& m : lemma2_predicted_clauses(p, opts.compact)) check_cap(m, opts.clause_cap);

  std::vector<BuiltFormula> stages;
  {
    VarAllocator alloc;
    Formula f0 = complete_formula(alloc.take(k - l));
    stages.push_back(BuiltFormula{f0, measure(f0, k)});
  }
  for (unsigned j = 1; j <= l; ++j) {
    const unsigned block = l - j + 1;
    const unsigned uj = p.stage_blocks[j];
    VarAllocator alloc;
    const auto z = alloc.take(p.stage_width[j] - uj * block);
    std::vector<std::vector<Var>> xs;
    for (unsigned i = 0; i < uj; ++i) xs.push_back(alloc.take(block));

    std::vector<Formula> parts;
    parts.push_back(guard_formula(z, xs));
    const Formula& prev = stages.back().formula;
    if (opts.compact) {
      const auto split = width_partition(fresh_copy(prev, alloc), k);
      for (const auto& x : xs) parts.push_back(product(split.incomplete, positive_clause(x)));
      parts.push_back(split.complete);
    } else {
      for (const auto& x : xs) {
        const auto split = width_partition(fresh_copy(prev, alloc), k);
        parts.push_back(product(split.incomplete, positive_clause(x)));
        parts.push_back(split.complete);
      }
    }
    Formula fj = disjoint_union(parts);
    stages.push_back(BuiltFormula{fj, measure(fj, k)});
  }
  return stages;
}

unsigned recommended_l(unsigned k, LScheme scheme) {
  double bound = 0;
  if (scheme == LScheme::Lemma1Corollary) {
    if (k < 4) throw Error("the lemma1 corollary picker needs k >= 4");
    const double lg = std::log2(static_cast<double>(k));
    bound = static_cast<double>(k) * kLog2E / (lg * lg);
  } else {
    if (k < 2) throw Error("the lemma2 corollary picker needs k >= 2");
    bound = kLog2E * static_cast<double>(k) / (2.0 * std::log2(static_cast<double>(k)));
  }
  unsigned l = 0;
  while (conservative_leq(std::ldexp(1.0, static_cast<int>(l + 1)), bound)) ++l;
  return l;
}

ReferenceLines reference_lines(unsigned k) {
  ReferenceLines r;
  r.a = 1.0 / std::exp(1.0);
  r.b = 8.0 * std::log(static_cast<double>(k));
  r.d = 0.5 * std::log2(static_cast<double>(k)) + 0.23;
  return r;
}

BoundsRow bounds_row(unsigned k) {
  if (k == 0) throw Error("k must be at least 1");
  BoundsRow row;
  row.k = k;
  row.lll_lower = lll_lower_bound(k);
  for (unsigned l = 1; l <= k; ++l) {
    const BigInt s = lemma1_stats(Lemma1Params::make(k, l)).max_occurrence;
    if (l == 1 || s < row.lemma1_s) {
      row.lemma1_s = s;
      row.lemma1_l = l;
    }
  }
  unsigned best = 0;
  while (best + 1 <= k && lemma2_condition(k, best + 1)) ++best;
  row.lemma2_l = best;
  row.lemma2_s = pow2(k - best + 1);
  row.lines = reference_lines(k);
  return row;
}

std::string bounds_csv_header() {
  return "k,lll_lower,lemma1_s,lemma1_l,lemma2_s,lemma2_l,line_a,line_b,line_d";
}

std::string to_csv_line(const BoundsRow& row) {
  return std::to_string(row.k) + ',' + to_string(row.lll_lower) + ',' + to_string(row.lemma1_s) +
         ',' + std::to_string(row.lemma1_l) + ',' + to_string(row.lemma2_s) + ',' +
         std::to_string(row.lemma2_l) + ',' + format_sig6(row.lines.a) + ',' +
         format_sig6(row.lines.b) + ',' + format_sig6(row.lines.d);
}

}  // namespace fewocc
