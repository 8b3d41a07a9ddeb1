#include "fewocc/solver.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>

#include "fewocc/error.hpp"

namespace fewocc {

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Sat: return "SAT";
    case SolveStatus::Unsat: return "UNSAT";
    case SolveStatus::Timeout: return "TIMEOUT";
  }
  return "?";
}

namespace {

// Internal literal: 2*index + negated, index into the sorted variable list.
using ILit = std::uint32_t;
constexpr std::int8_t kUnassigned = -1;

class Dpll {
 public:
  explicit Dpll(const Formula& f) : vars_(f.variables()) {
    const std::size_t n = vars_.size();
    value_.assign(n, kUnassigned);
    watches_.assign(2 * n, {});
    for (const auto& c : f) {
      if (c.empty()) {
        trivially_unsat_ = true;
        continue;
      }
      std::vector<ILit> lits;
      lits.reserve(c.size());
      for (Lit l : c) lits.push_back(to_internal(l));
      if (lits.size() == 1) {
        units_.push_back(lits[0]);
        continue;
      }
      const auto idx = static_cast<std::uint32_t>(clauses_.size());
      watches_[lits[0] ^ 1u].push_back(idx);
      watches_[lits[1] ^ 1u].push_back(idx);
      clauses_.push_back(std::move(lits));
    }
  }

  SolveResult run(std::uint64_t budget) {
    SolveResult result;
    if (trivially_unsat_) {
      result.status = SolveStatus::Unsat;
      return result;
    }
    for (ILit u : units_) {
      if (!enqueue(u)) {
        result.status = SolveStatus::Unsat;
        result.stats = stats_;
        return result;
      }
    }
    bool conflict = !propagate();
    while (true) {
      if (conflict) {
        if (!backtrack()) {
          result.status = SolveStatus::Unsat;
          break;
        }
        conflict = !propagate();
        continue;
      }
      const auto branch = pick_branch();
      if (!branch) {
        result.status = SolveStatus::Sat;
        result.witness = model();
        break;
      }
      if (stats_.decisions >= budget) {
        result.status = SolveStatus::Timeout;
        break;
      }
      ++stats_.decisions;
      levels_.push_back(Level{trail_.size(), false});
      enqueue(*branch);
      conflict = !propagate();
    }
    result.stats = stats_;
    return result;
  }

 private:
  struct Level {
    std::size_t trail_start;
    bool flipped;
  };

  ILit to_internal(Lit l) const {
    auto it = std::lower_bound(vars_.begin(), vars_.end(), l.var());
    return static_cast<ILit>(2 * (it - vars_.begin())) | (l.negated() ? 1u : 0u);
  }

  // 1 true, 0 false, -1 unassigned.
  int lit_value(ILit l) const {
    const std::int8_t v = value_[l >> 1];
    if (v == kUnassigned) return -1;
    return (v == 1) != ((l & 1u) != 0) ? 1 : 0;
  }

  bool enqueue(ILit l) {
    const int v = lit_value(l);
    if (v == 0) return false;
    if (v == 1) return true;
    value_[l >> 1] = (l & 1u) ? 0 : 1;
    trail_.push_back(l);
    return true;
  }

  // Returns false on conflict.
  bool propagate() {
    while (head_ < trail_.size()) {
      const ILit falsified = trail_[head_++] ^ 1u;
      auto& ws = watches_[falsified ^ 1u];
      std::size_t keep = 0;
      for (std::size_t i = 0; i < ws.size(); ++i) {
        const std::uint32_t ci = ws[i];
        auto& lits = clauses_[ci];
        if (lits[0] == falsified) std::swap(lits[0], lits[1]);
        if (lit_value(lits[0]) == 1) {
          ws[keep++] = ci;
          continue;
        }
        bool moved = false;
        for (std::size_t j = 2; j < lits.size(); ++j) {
          if (lit_value(lits[j]) != 0) {
            std::swap(lits[1], lits[j]);
            watches_[lits[1] ^ 1u].push_back(ci);
            moved = true;
            break;
          }
        }
        if (moved) continue;
        ws[keep++] = ci;
        ++stats_.propagations;
        if (!enqueue(lits[0])) {
          for (std::size_t j = i + 1; j < ws.size(); ++j) ws[keep++] = ws[j];
          ws.resize(keep);
          return false;
        }
      }
      ws.resize(keep);
    }
    return true;
  }

  void undo_to(std::size_t trail_size) {
    while (trail_.size() > trail_size) {
      value_[trail_.back() >> 1] = kUnassigned;
      trail_.pop_back();
    }
    head_ = std::min(head_, trail_size);
  }

  // Flips the most recent unflipped decision. False when none is left.
  bool backtrack() {
    while (!levels_.empty()) {
      const Level top = levels_.back();
      levels_.pop_back();
      const ILit decision = trail_[top.trail_start];
      undo_to(top.trail_start);
      if (!top.flipped) {
        levels_.push_back(Level{trail_.size(), true});
        enqueue(decision ^ 1u);
        return true;
      }
    }
    return false;
  }

  // Positive literal of the smallest unassigned variable in the first
  // unsatisfied clause with the fewest unassigned literals. Nothing when every
  // clause is satisfied.
  std::optional<ILit> pick_branch() const {
    std::size_t best_free = SIZE_MAX;
    ILit best = 0;
    for (const auto& lits : clauses_) {
      std::size_t free = 0;
      ILit low = UINT32_MAX;
      bool sat = false;
      for (ILit l : lits) {
        const int v = lit_value(l);
        if (v == 1) {
          sat = true;
          break;
        }
        if (v == -1) {
          ++free;
          low = std::min(low, l & ~1u);
        }
      }
      if (sat || free >= best_free) continue;
      best_free = free;
      best = low;
      if (free == 2) break;
    }
    if (best_free == SIZE_MAX) return std::nullopt;
    return best;
  }

  // Variables left open by a satisfying partial assignment are set false.
  Assignment model() const {
    Assignment a;
    for (std::size_t i = 0; i < vars_.size(); ++i) a.set(vars_[i], value_[i] == 1);
    return a;
  }

  std::vector<Var> vars_;
  std::vector<std::vector<ILit>> clauses_;
  std::vector<std::vector<std::uint32_t>> watches_;  // keyed by the negation of the watched literal
  std::vector<ILit> units_;
  std::vector<std::int8_t> value_;
  std::vector<ILit> trail_;
  std::vector<Level> levels_;
  std::size_t head_ = 0;
  bool trivially_unsat_ = false;
  SolveStats stats_;
};

}  // namespace

SolveResult solve(const Formula& f, std::uint64_t budget) {
  SolveResult r = Dpll(f).run(budget);
  if (r.status == SolveStatus::Sat && !(r.witness && r.witness->satisfies(f))) {
    throw InternalError("solver returned a witness that does not satisfy the formula");
  }
  return r;
}

std::vector<Assignment> enumerate_models(const Formula& f, const std::vector<Var>& vars) {
  if (vars.size() > kEnumerateVarCap) {
    throw Error("model enumeration capped at " + std::to_string(kEnumerateVarCap) +
                " variables, got " + std::to_string(vars.size()));
  }
  std::vector<Var> sorted = vars;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  auto index_of = [&](Var v) -> std::uint32_t {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
    if (it == sorted.end() || *it != v) {
      throw Error("variable " + std::to_string(v) + " not in the enumeration set");
    }
    return static_cast<std::uint32_t>(it - sorted.begin());
  };
  // Clause satisfied under bits a iff (a & pos) | (~a & neg) is nonzero.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> masks;
  masks.reserve(f.size());
  for (const auto& c : f) {
    std::uint32_t pos = 0, neg = 0;
    for (Lit l : c) (l.negated() ? neg : pos) |= 1u << index_of(l.var());
    masks.emplace_back(pos, neg);
  }
  std::vector<Assignment> models;
  const std::uint32_t total = 1u << sorted.size();
  for (std::uint32_t a = 0; a < total; ++a) {
    const bool ok = std::all_of(masks.begin(), masks.end(), [a](const auto& m) {
      return ((a & m.first) | (~a & m.second)) != 0;
    });
    if (!ok) continue;
    Assignment model;
    for (std::size_t i = 0; i < sorted.size(); ++i) model.set(sorted[i], (a >> i) & 1u);
    models.push_back(std::move(model));
  }
  return models;
}

std::vector<Assignment> enumerate_models(const Formula& f) {
  return enumerate_models(f, f.variables());
}

bool VerifyReport::is_unsat_ks_instance() const {
  const bool solved_unsat = !solve || solve->status == SolveStatus::Unsat;
  return uniform_width && within_cap && solved_unsat;
}

std::string VerifyReport::to_text() const {
  std::ostringstream os;
  os << "k=" << k << '\n'
     << "n=" << num_vars << '\n'
     << "m=" << num_clauses << '\n'
     << "uniform_width=" << (uniform_width ? "yes" : "no") << '\n'
     << "max_occurrence=" << max_occurrence << '\n';
  if (occurrence_cap) {
    os << "occurrence_cap=" << *occurrence_cap << '\n'
       << "within_cap=" << (within_cap ? "yes" : "no") << '\n';
  }
  if (solve) {
    os << "status=" << to_string(solve->status) << '\n'
       << "decisions=" << solve->stats.decisions << '\n'
       << "propagations=" << solve->stats.propagations << '\n';
    if (solve->witness) {
      os << "witness=";
      bool first = true;
      for (const auto& [v, val] : solve->witness->values()) {
        os << (first ? "" : " ") << (val ? "" : "-") << v;
        first = false;
      }
      os << '\n';
    }
  }
  return os.str();
}

VerifyReport verify_instance(const Formula& f, std::size_t k,
                             std::optional<std::size_t> occurrence_cap, bool run_solver,
                             std::uint64_t budget) {
  VerifyReport r;
  r.k = k;
  r.num_vars = f.num_vars();
  r.num_clauses = f.size();
  r.uniform_width = f.uniform_width(k);
  // Census counts clauses regardless of width; a wider clause is already a
  // uniformity violation, so use the widest clause as the split point.
  r.max_occurrence = occurrence_census(f, std::max(k, f.max_width())).max_occurrence();
  r.occurrence_cap = occurrence_cap;
  r.within_cap = !occurrence_cap || r.max_occurrence <= *occurrence_cap;
  if (run_solver) r.solve = solve(f, budget);
  return r;
}

}  // namespace fewocc
