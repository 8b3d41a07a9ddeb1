#include <doctest.h>

#include <random>

#include "fewocc/cnf.hpp"
#include "fewocc/error.hpp"
#include "support/oracles.hpp"

using namespace fewocc;
using fewocc::testing::brute_models;

TEST_CASE("literal encoding") {
  const Lit p = Lit::positive(7);
  CHECK(p.var() == 7);
  CHECK_FALSE(p.negated());
  CHECK((~p).negated());
  CHECK(~~p == p);
  CHECK(Lit::from_dimacs(-3) == Lit::negative(3));
  CHECK(Lit::from_dimacs(-3).to_dimacs() == -3);
  CHECK(Lit::positive(2) < Lit::negative(2));
  CHECK(Lit::negative(2) < Lit::positive(3));
  CHECK_THROWS_AS(Lit::from_dimacs(0), Error);
}

TEST_CASE("formula normalization") {
  const Formula f = Formula::of({{2, 1, 1}, {1, 2}, {-1}});
  CHECK(f.size() == 2);
  CHECK(f.clauses()[0] == Clause{Lit::positive(1), Lit::positive(2)});
  CHECK(f.clauses()[1] == Clause{Lit::negative(1)});
  CHECK_THROWS_AS(Formula::of({{1, -1}}), Error);
  CHECK(f.variables() == std::vector<Var>{1, 2});
  CHECK(f.max_var() == 2);
}

TEST_CASE("complete formula") {
  CHECK(complete_formula(std::vector<Var>{1}) == Formula::of({{1}, {-1}}));
  const auto k0 = complete_formula(std::vector<Var>{});
  REQUIRE(k0.size() == 1);
  CHECK(k0.clauses()[0].empty());
  const auto k2 = complete_formula(std::vector<Var>{1, 2});
  CHECK(k2.size() == 4);
  const auto census = occurrence_census(k2, 2);
  CHECK(census.of(1).total == 4);
  CHECK(census.of(2).total == 4);
  CHECK_THROWS_AS(complete_formula(std::vector<Var>{1, 1}), Error);
}

TEST_CASE("K(V) is unsatisfiable with 2^|V| clauses and 2^|V| occurrences per variable") {
  for (unsigned n = 1; n <= 8; ++n) {
    const auto vars = var_range(1, n);
    const auto f = complete_formula(vars);
    CHECK(f.size() == (std::size_t{1} << n));
    CHECK(brute_models(f, vars).empty());
    const auto census = occurrence_census(f, n);
    for (Var v : vars) CHECK(census.of(v).total == (std::size_t{1} << n));
  }
}

TEST_CASE("almost complete formula has only the all-false model") {
  CHECK(almost_complete_formula(std::vector<Var>{1}) == Formula::of({{-1}}));
  const auto two = almost_complete_formula(std::vector<Var>{1, 2});
  CHECK(two.size() == 3);
  CHECK(std::find(two.begin(), two.end(), Clause{Lit::positive(1), Lit::positive(2)}) == two.end());
  for (unsigned n = 1; n <= 8; ++n) {
    const auto vars = var_range(1, n);
    const auto f = almost_complete_formula(vars);
    CHECK(f.size() == (std::size_t{1} << n) - 1);
    CHECK(brute_models(f, vars) == std::set<std::uint32_t>{0});
  }
  CHECK_THROWS_AS(almost_complete_formula(std::vector<Var>{}), Error);
}

TEST_CASE("product") {
  const Formula empty_clause(std::vector<Clause>{Clause{}});
  const auto f = Formula::of({{1, 2}, {-1}});
  CHECK(product(empty_clause, f) == f);
  CHECK(product(Formula::of({{1}}), Formula::of({{2}})) == Formula::of({{1, 2}}));
  const auto models = brute_models(Formula::of({{1, 2}}), {1, 2});
  CHECK(models == std::set<std::uint32_t>{0b01, 0b10, 0b11});

  const auto a = Formula::of({{1}, {-1, 2}, {-2}});
  const auto b = Formula::of({{3}, {4}, {-3, -4}, {3, -4}});
  CHECK(product(a, b).size() == 12);
  CHECK_THROWS_AS(product(a, Formula::of({{2, 5}})), Error);
}

TEST_CASE("product law on random disjoint pairs") {
  std::mt19937 rng(20240611);
  for (int trial = 0; trial < 100; ++trial) {
    const auto f1 = testing::random_formula(rng, 1, 1 + rng() % 4, 5, 3);
    const auto f2 = testing::random_formula(rng, 5, 1 + rng() % 4, 5, 3);
    std::vector<Var> joint = f1.variables();
    for (Var v : f2.variables()) joint.push_back(v);
    const auto lhs = brute_models(product(f1, f2), joint);
    auto rhs = brute_models(f1, joint);
    const auto m2 = brute_models(f2, joint);
    rhs.insert(m2.begin(), m2.end());
    CHECK(lhs == rhs);
    CHECK(product(f1, f2).size() == f1.size() * f2.size());
  }
}

TEST_CASE("width partition") {
  const auto f = Formula::of({{1}, {1, 2, 3}});
  const auto p = width_partition(f, 3);
  CHECK(p.incomplete == Formula::of({{1}}));
  CHECK(p.complete == Formula::of({{1, 2, 3}}));

  const auto k2 = complete_formula(std::vector<Var>{1, 2});
  CHECK(width_partition(k2, 2).incomplete.empty());
  CHECK(width_partition(k2, 2).complete == k2);
  CHECK(width_partition(k2, 3).incomplete == k2);
  CHECK(width_partition(k2, 3).complete.empty());
  CHECK_THROWS_AS(width_partition(f, 2), Error);
}

TEST_CASE("partition and census are consistent on random formulas") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = testing::random_formula(rng, 1, 6, 12, 4);
    const auto p = width_partition(f, 4);
    CHECK(p.incomplete.size() + p.complete.size() == f.size());
    std::vector<Formula> parts{p.incomplete, p.complete};
    CHECK(disjoint_union(parts) == f);
    const auto census = occurrence_census(f, 4);
    std::size_t max_total = 0;
    for (const auto& e : census.entries()) {
      CHECK(e.total == e.incomplete + e.complete);
      std::size_t direct = 0;
      for (const auto& c : f) {
        direct += std::any_of(c.begin(), c.end(), [&](Lit l) { return l.var() == e.var; });
      }
      CHECK(e.total == direct);
      max_total = std::max(max_total, e.total);
    }
    CHECK(census.max_occurrence() == max_total);
  }
}

TEST_CASE("census of the unit pair") {
  const auto census = occurrence_census(Formula::of({{1}, {-1}}), 1);
  CHECK(census.of(1).total == 2);
  CHECK(census.max_occurrence() == 2);
}

TEST_CASE("fresh copy") {
  VarAllocator alloc(5);
  CHECK(fresh_copy(Formula::of({{1}, {-1}}), alloc) == Formula::of({{5}, {-5}}));
  CHECK(alloc.peek() == 6);

  const auto k3 = complete_formula(std::vector<Var>{1, 2, 3});
  VarAllocator a2(10);
  const auto c1 = fresh_copy(k3, a2);
  const auto c2 = fresh_copy(k3, a2);
  CHECK(occurrence_census(c1, 3).max_occurrence() == occurrence_census(k3, 3).max_occurrence());
  CHECK(c1.size() == k3.size());
  const auto v1 = c1.variables();
  const auto v2 = c2.variables();
  std::vector<Var> shared;
  std::set_intersection(v1.begin(), v1.end(), v2.begin(), v2.end(), std::back_inserter(shared));
  CHECK(shared.empty());

  VarAllocator clash(2);
  CHECK_THROWS_AS(fresh_copy(k3, clash), Error);
}

TEST_CASE("renumbering") {
  const auto r = renumber_contiguous(Formula::of({{4, -9}, {9}}));
  CHECK_FALSE(r.identity);
  CHECK(r.mapping == std::vector<Var>{4, 9});
  CHECK(r.formula == Formula::of({{1, -2}, {2}}));
  CHECK(renumber_contiguous(Formula::of({{1, 2}})).identity);
}

TEST_CASE("assignment") {
  Assignment a;
  a.set(1, false);
  a.set(2, true);
  CHECK(a.satisfies(Formula::of({{1, 2}, {-1}})));
  CHECK_FALSE(a.satisfies(Formula::of({{1}})));
  CHECK_THROWS_AS(a.value(3), Error);
}
