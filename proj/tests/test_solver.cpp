#include <doctest.h>

#include <random>

#include "fewocc/constructions.hpp"
#include "fewocc/solver.hpp"
#include "support/oracles.hpp"

using namespace fewocc;
using fewocc::testing::brute_models;

TEST_CASE("complete formulas are UNSAT") {
  for (unsigned k = 1; k <= 8; ++k) {
    const auto r = solve(complete_formula(var_range(1, k)));
    CHECK(r.status == SolveStatus::Unsat);
    CHECK_FALSE(r.witness.has_value());
  }
}

TEST_CASE("almost complete formula: SAT with the all-false witness") {
  const auto r = solve(almost_complete_formula(std::vector<Var>{1, 2, 3}));
  REQUIRE(r.status == SolveStatus::Sat);
  for (Var v : {1u, 2u, 3u}) CHECK_FALSE(r.witness->value(v));
}

TEST_CASE("staged formula k=4 l=1 is UNSAT") {
  const auto stages = lemma2_build(4, 1);
  CHECK(solve(stages.back().formula).status == SolveStatus::Unsat);
}

TEST_CASE("empty formula and empty clause") {
  CHECK(solve(Formula{}).status == SolveStatus::Sat);
  CHECK(solve(Formula(std::vector<Clause>{Clause{}})).status == SolveStatus::Unsat);
}

TEST_CASE("enumerate models") {
  CHECK(enumerate_models(Formula::of({{1}, {-1}})).empty());
  const auto ms = enumerate_models(almost_complete_formula(std::vector<Var>{1, 2}));
  REQUIRE(ms.size() == 1);
  CHECK_FALSE(ms[0].value(1));
  CHECK_FALSE(ms[0].value(2));
  CHECK(enumerate_models(Formula::of({{1}}), {1, 2}).size() == 2);
}

TEST_CASE("solver and enumeration agree with brute force on random formulas") {
  std::mt19937 rng(4242);
  for (int trial = 0; trial < 300; ++trial) {
    const unsigned nvars = 1 + rng() % 16;
    const auto f = testing::random_formula(rng, 1, nvars, 4 * nvars, 3);
    const auto vars = f.variables();
    const auto brute = brute_models(f, vars);
    const auto r = solve(f);
    CHECK(r.status == (brute.empty() ? SolveStatus::Unsat : SolveStatus::Sat));
    if (r.witness) CHECK(brute.count(testing::to_mask(*r.witness, vars)) == 1);
    if (vars.size() <= 12) {
      const auto ms = enumerate_models(f);
      std::set<std::uint32_t> got;
      for (const auto& m : ms) got.insert(testing::to_mask(m, vars));
      CHECK(got == brute);
    }
  }
}

TEST_CASE("solver is deterministic and honours the budget") {
  const auto f = complete_formula(var_range(1, 10));
  const auto a = solve(f);
  const auto b = solve(f);
  CHECK(a.stats.decisions == b.stats.decisions);
  CHECK(a.stats.propagations == b.stats.propagations);
  CHECK(solve(f, 3).status == SolveStatus::Timeout);
}

TEST_CASE("verify instance") {
  const auto built = lemma1_build(3, 1);
  const auto r = verify_instance(built.formula, 3, 5, true);
  CHECK(r.uniform_width);
  CHECK(r.max_occurrence == 5);
  CHECK(r.within_cap);
  CHECK(r.solve->status == SolveStatus::Unsat);
  CHECK(r.is_unsat_ks_instance());

  const auto k3 = verify_instance(complete_formula(var_range(1, 3)), 3, 7, false);
  CHECK(k3.max_occurrence == 8);
  CHECK_FALSE(k3.within_cap);
  CHECK_FALSE(k3.is_unsat_ks_instance());

  const auto sat = verify_instance(Formula::of({{1, 2, 3}}), 3, std::nullopt, true);
  CHECK(sat.uniform_width);
  CHECK(sat.solve->status == SolveStatus::Sat);
  CHECK_FALSE(sat.is_unsat_ks_instance());
  CHECK(sat.to_text().find("status=SAT") != std::string::npos);
}
