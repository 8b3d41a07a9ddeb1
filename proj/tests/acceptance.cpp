// Acceptance checks. One PASS/FAIL line per criterion; a criterion also fails
// when it runs past its time limit. Exit status is the number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "fewocc/calculus.hpp"
#include "fewocc/cli.hpp"
#include "fewocc/constructions.hpp"
#include "fewocc/dimacs.hpp"
#include "fewocc/dp.hpp"
#include "fewocc/error.hpp"
#include "fewocc/numfmt.hpp"
#include "fewocc/solver.hpp"
#include "support/oracles.hpp"

using namespace fewocc;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects the first few failure messages.
class Checker {
 public:
  void expect(bool cond, const std::string& what) {
    if (cond) return;
    ++failures_;
    if (failures_ <= 3) msgs_ << (failures_ > 1 ? "; " : "") << what;
  }
  Outcome done(std::string ok_detail) const {
    if (failures_ == 0) return {true, std::move(ok_detail)};
    return {false, std::to_string(failures_) + " failed: " + msgs_.str()};
  }

 private:
  int failures_ = 0;
  std::ostringstream msgs_;
};

std::string str(const BigInt& v) { return to_string(v); }

// Partial sum of 1/i! for i <= 30, a lower bound on e.
BigRational e_lower() {
  BigRational sum = 0;
  BigInt fact = 1;
  for (unsigned i = 0; i <= 30; ++i) {
    if (i > 0) fact *= i;
    sum += BigRational(1, fact);
  }
  return sum;
}

Outcome exact_f2() {
  Checker c;
  const unsigned long expected[] = {1, 2, 4};
  for (unsigned k = 1; k <= 3; ++k) {
    c.expect(f2_value(k) == expected[k - 1], "f2(" + std::to_string(k) + ")");
  }
  std::string values;
  for (unsigned k = 1; k <= kOracleMaxK; ++k) {
    const BigInt dp = f2_value(k);
    const unsigned long oracle = oracle_f2(k);
    c.expect(dp == oracle, "k=" + std::to_string(k) + " dp=" + str(dp) +
                               " oracle=" + std::to_string(oracle));
    values += (k > 1 ? "," : "") + std::to_string(oracle);
  }
  return c.done("f2(1..6)=" + values + " = oracle");
}

Outcome boundary() {
  Checker c;
  for (unsigned k = 1; k <= 6; ++k) {
    const BigInt f2 = f2_value(k);
    c.expect(!feasible(k, f2).has_value(), "feasible at f2, k=" + std::to_string(k));
    c.expect(feasible(k, f2 + 1).has_value(), "infeasible at f2+1, k=" + std::to_string(k));
    bool seen = false;
    for (unsigned long s = 0; s <= (1ul << k); ++s) {
      const bool f = run_dp(k, s, {.want_witness = false}).feasible;
      c.expect(!(seen && !f), "non-monotone at k=" + std::to_string(k) + " s=" + std::to_string(s));
      c.expect(f == (s > f2), "sweep disagrees with f2 at k=" + std::to_string(k));
      seen = seen || f;
    }
  }
  return c.done("k<=6, s in [0, 2^k]");
}

Outcome soundness_rails() {
  Checker c;
  const BigRational e_lo = e_lower();
  for (unsigned k = 1; k <= 64; ++k) {
    const BigInt f2 = f2_value(k);
    // Against the library floor, and independently: (f2 + 1)·e_lo·k > 2^k
    // implies f2 >= ⌊2^k/(ek)⌋.
    c.expect(f2 >= lll_lower_bound(k), "lll k=" + std::to_string(k));
    c.expect(BigRational(f2 + 1) * e_lo * k > BigRational(pow2(k)),
             "bracket k=" + std::to_string(k));
    if (k <= 4) c.expect(f2 >= k, "f2 >= k at k=" + std::to_string(k));
  }
  return c.done("k=1..64 exact");
}

Outcome lemma1() {
  Checker c;
  for (unsigned k = 1; k <= 8; ++k) {
    for (unsigned l = 1; l <= k; ++l) {
      const std::string tag = "(" + std::to_string(k) + "," + std::to_string(l) + ")";
      const unsigned u = k / l, v = k - l * u;
      BigInt block = 1;
      for (unsigned i = 0; i < u; ++i) block *= (BigInt(1) << l) - 1;
      block <<= v;
      const BigInt n = k + u * (k - l);
      const BigInt m = block + u * (BigInt(1) << (k - l));
      const BigInt occ = block + (BigInt(1) << (k - l));
      const auto built = lemma1_build(k, l);
      const auto& f = built.formula;
      c.expect(f.uniform_width(k), tag + " width");
      c.expect(BigInt(f.num_vars()) == n, tag + " n");
      c.expect(BigInt(f.size()) == m, tag + " m");
      c.expect(BigInt(occurrence_census(f, k).max_occurrence()) == occ, tag + " occ");
      c.expect(solve(f).status == SolveStatus::Unsat, tag + " not UNSAT");
    }
  }
  const auto b = lemma1_build(3, 1).formula;
  c.expect(b.num_vars() == 9 && b.size() == 13 && occurrence_census(b, 3).max_occurrence() == 5,
           "(3,1) != (9,13,5)");
  return c.done("1<=l<=k<=8; (3,1) -> (9,13,5)");
}

Outcome lemma2() {
  Checker c;
  int pairs = 0;
  for (unsigned k = 1; k <= 8; ++k) {
    for (unsigned l = 0; l <= k; ++l) {
      if (!lemma2_condition(k, l)) continue;
      ++pairs;
      const std::string tag = "(" + std::to_string(k) + "," + std::to_string(l) + ")";
      const auto stages = lemma2_build(k, l);
      for (const auto& st : stages) {
        c.expect(solve(st.formula).status == SolveStatus::Unsat, tag + " stage not UNSAT");
        c.expect(width_partition(st.formula, k).incomplete.size() <= (std::size_t{1} << (k - l)),
                 tag + " |F'_j|");
      }
      const auto& last = stages.back().formula;
      c.expect(last.uniform_width(k), tag + " width");
      c.expect(occurrence_census(last, k).max_occurrence() <= (std::size_t{1} << (k - l + 1)),
               tag + " occ");
    }
  }
  const auto f = lemma2_build(4, 1).back().formula;
  c.expect(f.num_vars() == 16 && f.size() == 33 && occurrence_census(f, 4).max_occurrence() == 9,
           "(4,1) != (16,33,9)");
  return c.done(std::to_string(pairs) + " valid (k,l), k<=8; (4,1) -> (16,33,9)");
}

Outcome product_law() {
  Checker c;
  std::mt19937 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const auto f1 = testing::random_formula(rng, 1, 1 + rng() % 4, 6, 4);
    const auto f2 = testing::random_formula(rng, 5, 1 + rng() % 4, 6, 4);
    std::vector<Var> joint = f1.variables();
    for (Var v : f2.variables()) joint.push_back(v);
    std::set<Assignment> lhs, rhs;
    for (auto& a : enumerate_models(product(f1, f2), joint)) lhs.insert(a);
    for (auto& a : enumerate_models(f1, joint)) rhs.insert(a);
    for (auto& a : enumerate_models(f2, joint)) rhs.insert(a);
    c.expect(lhs == rhs, "trial " + std::to_string(trial));
  }
  return c.done("200 random pairs");
}

DerivedFormula chain(unsigned k, unsigned width, VarAllocator& alloc) {
  DerivedFormula f = axiom(k);
  for (unsigned i = 0; i < width; ++i) f = split(f, pow2(k), alloc);
  return f;
}

Outcome composition_law() {
  Checker c;
  int instances = 0;
  for (unsigned k = 2; k <= 5; ++k) {
    std::vector<DerivedFormula> pool;
    {
      VarAllocator alloc;
      for (unsigned w = 0; w < k; ++w) pool.push_back(chain(k, w, alloc));
    }
    const std::size_t base = pool.size();
    for (std::size_t i = 0; i < base; ++i) {
      for (std::size_t j = i; j < base; ++j) {
        VarAllocator alloc(std::max(pool[i].formula().max_var(), pool[j].formula().max_var()) + 1);
        pool.push_back(compose(pool[i], pool[j], pow2(k), alloc));
      }
    }
    for (const auto& f1 : pool) {
      for (const auto& f2 : pool) {
        if (f1.width() > f2.width() || f2.complete()) continue;
        const unsigned d = k - f2.width();
        const std::size_t copies = (std::size_t{1} << d) - 1;
        if (copies * f1.formula().size() + f2.formula().size() > 4096) continue;
        const std::string tag = "k=" + std::to_string(k);
        VarAllocator alloc(std::max(f1.formula().max_var(), f2.formula().max_var()) + 1);
        const Var first_x = alloc.peek();
        const BigInt cap = BigInt(copies * f1.incomplete_size() + f2.incomplete_size()) +
                           f1.max_occurrence() + f2.max_occurrence();
        const auto g = compose(f1, f2, cap, alloc);
        ++instances;
        c.expect(g.complete() || g.incomplete_size() == copies * f1.incomplete_size(),
                 tag + " |G'|");
        for (Var x = first_x; x < first_x + d; ++x) {
          c.expect(g.census().of(x).total == copies * f1.incomplete_size() + f2.incomplete_size(),
                   tag + " x occurrence");
        }
        c.expect(solve(g.formula()).status == SolveStatus::Unsat, tag + " not UNSAT");
      }
    }
  }
  // k=2, s=3: split after a composition.
  VarAllocator alloc;
  const auto y = chain(2, 1, alloc);
  const auto g = compose(axiom(2), y, 3, alloc);
  bool refused = false;
  try {
    split(g, 3, alloc, RuleMode::Restricted);
  } catch (const Error&) {
    refused = true;
  }
  c.expect(refused, "restricted split accepted");
  const auto literal = split(g, 3, alloc, RuleMode::PaperLiteral);
  c.expect(literal.max_occurrence() == 4, "literal census != 4");
  return c.done(std::to_string(instances) + " instances; literal split census " +
                std::to_string(literal.max_occurrence()) + " > 3, restricted refuses");
}

struct Cli {
  fs::path dir;
  int run(std::vector<std::string> args, std::string* out = nullptr) const {
    std::ostringstream o, e;
    const int code = cli::run(args, o, e);
    if (out) *out = o.str();
    return code;
  }
};

Outcome materialization(const Cli& cli) {
  Checker c;
  for (unsigned k = 2; k <= 5; ++k) {
    const std::string tag = "k=" + std::to_string(k);
    const BigInt s = f2_value(k) + 1;
    const auto trace = feasible(k, s);
    if (!trace) {
      c.expect(false, tag + " no derivation");
      continue;
    }
    const auto m = materialize(*trace, k, s);
    const auto ann = trace->annotate(k);
    c.expect(ann.size() == m.node_incomplete_sizes.size(), tag + " node count");
    for (std::size_t i = 0; i < ann.size() && i < m.node_incomplete_sizes.size(); ++i) {
      c.expect(ann[i].size == m.node_incomplete_sizes[i], tag + " node " + std::to_string(i));
    }
    const auto path = (cli.dir / ("mat" + std::to_string(k) + ".cnf")).string();
    write_text_file(path, write_dimacs(m.formula));
    std::string out;
    const int code =
        cli.run({"verify", path, "--k", std::to_string(k), "--max-occ", str(s), "--solve"}, &out);
    c.expect(code == cli::kExitOk && out.find("verdict=ok") != std::string::npos,
             tag + " verify");
  }
  return c.done("k=2..5 at s=f2+1 verified UNSAT, node sizes match");
}

Outcome scale() {
  Checker c;
  const unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  const auto rows = f2_table(1, 512, jobs);
  c.expect(rows.size() == 512, "row count");
  const BigRational e_lo = e_lower();
  std::ostringstream info;
  for (unsigned k : {16u, 64u, 256u, 512u}) {
    if (rows.size() < k) break;
    const auto& r = rows[k - 1];
    // f2·k/2^k >= 1/e  <=>  f2·k·e >= 2^k; e_lo makes the check conservative.
    const BigRational lhs = BigRational(r.f2 * k) * e_lo;
    c.expect(lhs >= BigRational(pow2(k)), "k=" + std::to_string(k) + " below 1/e");
    const double norm = std::stod(r.f2_norm);
    const auto signed_dev = [](double x) { return (x >= 0 ? "+" : "") + format_sig6(x); };
    info << " k=" << k << ":" << r.f2_norm << " (d" << signed_dev(norm - r.lines.d) << ", b"
         << signed_dev(norm - r.lines.b) << ")";
  }
  return c.done("k=1..512, jobs=" + std::to_string(jobs) + ";" + info.str());
}

Outcome determinism(const Cli& cli) {
  Checker c;
  const std::string bin = FEWOCC_CLI_PATH;
  const std::string sat = (cli.dir / "sat.cnf").string();
  write_text_file(sat, "p cnf 3 1\n1 2 3 0\n");
  const std::string trace = (cli.dir / "k4.trace").string();
  const std::vector<std::string> commands = {
      "construct --method lemma1 --k 5 --l 2",
      "construct --method lemma1 --k 6 --compact",
      "construct --method lemma2 --k 8 --l 1",
      "construct --method lemma2 --k 6 --compact",
      "verify " + sat + " --k 3 --solve",
      "f2 --k 20",
      "f2 --k 6 --paper-literal",
      "f2 --k 4 --emit-trace " + trace,
      "f2-table --k-from 1 --k-to 40 --out -",
      "f2-table --k-from 1 --k-to 40 --jobs 4 --out -",
      "bounds --k-from 1 --k-to 64 --out -",
      "materialize --k 5 --s 15 --out -",
      "materialize --k 4 --s 9 --trace " + trace + " --out -",
      "materialize --k 3 --s 5 --paper-literal --out -",
  };
  std::string first_table;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    std::string outputs[2];
    for (int rep = 0; rep < 2; ++rep) {
      const auto path = cli.dir / ("det" + std::to_string(i) + "_" + std::to_string(rep) + ".out");
      const std::string cmd = bin + " " + commands[i] + " > " + path.string() + " 2>&1";
      const int rc = std::system(cmd.c_str());
      (void)rc;
      outputs[rep] = read_text_file(path.string());
    }
    c.expect(!outputs[0].empty() && outputs[0] == outputs[1], "differs: " + commands[i]);
    if (commands[i].starts_with("f2-table")) {
      if (first_table.empty()) {
        first_table = outputs[0];
      } else {
        c.expect(first_table == outputs[0], "f2-table output depends on --jobs");
      }
    }
  }
  return c.done(std::to_string(commands.size()) + " commands run twice, byte-identical");
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<Outcome()> fn;
};

}  // namespace

int main() {
  Cli cli{fs::temp_directory_path() / "fewocc_acceptance"};
  fs::create_directories(cli.dir);

  const std::vector<Criterion> criteria = {
      {1, "exact-f2", 10, exact_f2},
      {2, "boundary-monotonicity", 30, boundary},
      {3, "soundness-rails", 120, soundness_rails},
      {4, "lemma1-construction", 120, lemma1},
      {5, "lemma2-construction", 120, lemma2},
      {6, "product-law", 30, product_law},
      {7, "composition-law", 60, composition_law},
      {8, "materialization", 120, [&] { return materialization(cli); }},
      {9, "scale-f2-table-512", 600, scale},
      {10, "determinism", 60, [&] { return determinism(cli); }},
  };

  int failed = 0;
  for (const auto& cr : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cr.fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > cr.limit_s) {
      o.pass = false;
      o.detail += "; over time limit";
    }
    failed += o.pass ? 0 : 1;
    std::printf("%s %2d %-24s %8.2fs / %4.0fs  %s\n", o.pass ? "PASS" : "FAIL", cr.id, cr.name,
                secs, cr.limit_s, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed;
}
