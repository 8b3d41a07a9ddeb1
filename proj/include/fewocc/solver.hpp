#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fewocc/cnf.hpp"

namespace fewocc {

enum class SolveStatus { Sat, Unsat, Timeout };

std::string to_string(SolveStatus s);

struct SolveStats {
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
};

struct SolveResult {
  SolveStatus status = SolveStatus::Timeout;
  std::optional<Assignment> witness;  // present iff status == Sat
  SolveStats stats;
};

inline constexpr std::uint64_t kDefaultSolveBudget = 10'000'000;

/// Complete DPLL search with unit propagation. Branches on the lowest
/// unassigned variable of the first shortest unsatisfied clause, trying true
/// first. Returns Timeout once `budget` decisions have been spent without a
/// verdict. Deterministic.
SolveResult solve(const Formula& f, std::uint64_t budget = kDefaultSolveBudget);

inline constexpr std::size_t kEnumerateVarCap = 20;

/// All satisfying assignments over vars(f), by exhaustive enumeration.
std::vector<Assignment> enumerate_models(const Formula& f);
/// Same, over an explicit variable set that must contain vars(f).
std::vector<Assignment> enumerate_models(const Formula& f, const std::vector<Var>& vars);

struct VerifyReport {
  std::size_t k = 0;
  std::size_t num_vars = 0;
  std::size_t num_clauses = 0;
  bool uniform_width = false;
  std::size_t max_occurrence = 0;
  std::optional<std::size_t> occurrence_cap;
  bool within_cap = true;
  std::optional<SolveResult> solve;

  /// Uniform width, within cap, and UNSAT when a solve was requested.
  bool is_unsat_ks_instance() const;
  /// `key=value` lines.
  std::string to_text() const;
};

VerifyReport verify_instance(const Formula& f, std::size_t k,
                             std::optional<std::size_t> occurrence_cap, bool run_solver,
                             std::uint64_t budget = kDefaultSolveBudget);

}  // namespace fewocc
