#include <optional>

#include "fewocc/dp.hpp"
#include "fewocc/error.hpp"

namespace fewocc {

BigInt predicted_clauses(const DerivTrace& trace, unsigned k, RuleMode mode) {
  const auto ann = trace.annotate(k, mode);
  std::vector<BigInt> clauses(trace.nodes().size());
  for (std::size_t id = 0; id < trace.nodes().size(); ++id) {
    const auto& n = trace.nodes()[id];
    switch (n.kind) {
      case StepKind::Axiom:
        clauses[id] = 1;
        break;
      case StepKind::Split: {
        const auto c = static_cast<std::size_t>(n.left);
        clauses[id] = clauses[c] + ann[c].size;
        break;
      }
      case StepKind::Compose: {
        const auto l = static_cast<std::size_t>(n.left);
        const auto r = static_cast<std::size_t>(n.right);
        clauses[id] = pow2_minus_one(k - ann[r].width) * clauses[l] + clauses[r];
        break;
      }
    }
  }
  return clauses[static_cast<std::size_t>(trace.final_id())];
}

Materialized materialize(const DerivTrace& trace, unsigned k, const BigInt& s, RuleMode mode,
                         std::size_t clause_cap) {
  const auto ann = trace.annotate(k, mode);
  const BigInt need = trace.required_s(k, mode);
  if (need > s) {
    throw Error("trace needs s >= " + to_string(need) + ", got s=" + to_string(s));
  }
  // Every node is built once, so the total work is bounded by the sum of
  // node sizes; the final count dominates it.
  const BigInt predicted = predicted_clauses(trace, k, mode);
  if (predicted > BigInt(static_cast<unsigned long>(clause_cap))) {
    throw Error("materialization needs " + to_string(predicted) +
                " clauses, above the cap of " + std::to_string(clause_cap));
  }

  VarAllocator alloc;
  std::vector<std::optional<DerivedFormula>> built(trace.nodes().size());
  Materialized out;
  out.node_incomplete_sizes.resize(trace.nodes().size());
  for (std::size_t id = 0; id < trace.nodes().size(); ++id) {
    const auto& n = trace.nodes()[id];
    const auto at = [&](int i) -> const DerivedFormula& { return *built[static_cast<std::size_t>(i)]; };
    switch (n.kind) {
      case StepKind::Axiom: built[id] = axiom(k); break;
      case StepKind::Split: built[id] = split(at(n.left), s, alloc, mode); break;
      case StepKind::Compose: built[id] = compose(at(n.left), at(n.right), s, alloc); break;
    }
    const auto& f = *built[id];
    if (f.width() != ann[id].width ||
        BigInt(static_cast<unsigned long>(f.incomplete_size())) != ann[id].size) {
      throw InternalError("node " + std::to_string(id) + " materialized with width " +
                          std::to_string(f.width()) + " and |F′| " +
                          std::to_string(f.incomplete_size()) + ", annotation says width " +
                          std::to_string(ann[id].width) + " and |F′| " + to_string(ann[id].size));
    }
    out.node_incomplete_sizes[id] = f.incomplete_size();
  }
  const auto& final_formula = *built[static_cast<std::size_t>(trace.final_id())];
  out.formula = renumber_contiguous(final_formula.formula()).formula;
  out.max_occurrence = final_formula.max_occurrence();
  out.within_s = BigInt(static_cast<unsigned long>(out.max_occurrence)) <= s;
  return out;
}

}  // namespace fewocc
