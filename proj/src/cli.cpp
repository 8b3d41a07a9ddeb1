#include "fewocc/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

#include "fewocc/constructions.hpp"
#include "fewocc/dimacs.hpp"
#include "fewocc/dp.hpp"
#include "fewocc/error.hpp"
#include "fewocc/solver.hpp"

namespace fewocc::cli {

namespace {

struct Sink {
  std::ostream& out;
  void write(const std::string& path, const std::string& contents) const {
    if (path == "-") {
      out << contents;
    } else {
      write_text_file(path, contents);
    }
  }
};

// Stats go to stdout as key=value lines. When the formula itself goes to
// stdout they become DIMACS comments so the stream still parses.
void emit_formula(const Sink& sink, const std::string& path,
                  const std::vector<std::pair<std::string, std::string>>& stats,
                  const Formula& f) {
  std::vector<std::string> lines;
  for (const auto& [key, value] : stats) lines.push_back(key + '=' + value);
  if (path == "-") {
    sink.out << write_dimacs(f, lines);
    return;
  }
  write_text_file(path, write_dimacs(f));
  for (const auto& l : lines) sink.out << l << '\n';
  sink.out << "out=" << path << '\n';
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }
std::string str(std::size_t v) { return std::to_string(v); }

struct ConstructArgs {
  std::string method;
  unsigned k = 0;
  std::optional<unsigned> l;
  bool compact = false;
  std::string out = "-";
};

int cmd_construct(const ConstructArgs& a, const Sink& sink) {
  BuildOptions opts;
  opts.compact = a.compact;
  std::string l_source = "flag";
  unsigned l = 0;
  BigInt guarantee;
  BuiltFormula built;
  std::vector<std::pair<std::string, std::string>> stats;

  if (a.method == "lemma1") {
    if (a.l) {
      l = *a.l;
    } else if (a.k >= 4 && recommended_l(a.k, LScheme::Lemma1Corollary) >= 1) {
      l = recommended_l(a.k, LScheme::Lemma1Corollary);
      l_source = "corollary";
    } else {
      // The corollary picker is undefined below k = 4 and returns 0 for many
      // small k; fall back to the exact minimizer.
      l = bounds_row(a.k).lemma1_l;
      l_source = "argmin";
    }
    guarantee = lemma1_stats(Lemma1Params::make(a.k, l)).max_occurrence;
    built = lemma1_build(a.k, l, opts);
  } else {
    if (a.l) {
      l = *a.l;
    } else if (a.k >= 2 && lemma2_condition(a.k, recommended_l(a.k, LScheme::Lemma2Corollary))) {
      l = recommended_l(a.k, LScheme::Lemma2Corollary);
      l_source = "corollary";
    } else {
      l = bounds_row(a.k).lemma2_l;
      l_source = "argmin";
    }
    const auto params = Lemma2Params::make(a.k, l);
    guarantee = params.s;
    auto stages = lemma2_build(a.k, l, opts);
    for (std::size_t j = 0; j < stages.size(); ++j) {
      stats.emplace_back("stage" + str(j) + "_m", to_string(stages[j].stats.m));
      stats.emplace_back("stage" + str(j) + "_incomplete", to_string(stages[j].stats.incomplete_size));
    }
    built = std::move(stages.back());
  }
  const bool within = built.stats.max_occurrence <= guarantee;
  std::vector<std::pair<std::string, std::string>> head = {
      {"method", a.method},
      {"k", std::to_string(a.k)},
      {"l", std::to_string(l)},
      {"l_source", l_source},
      {"compact", yes_no(a.compact)},
      {"n", to_string(built.stats.n)},
      {"m", to_string(built.stats.m)},
      {"max_occurrence", to_string(built.stats.max_occurrence)},
      {"s", to_string(guarantee)},
      {"within_s", yes_no(within)},
  };
  head.insert(head.end(), stats.begin(), stats.end());
  emit_formula(sink, a.out, head, built.formula);
  return within ? kExitOk : kExitViolated;
}

struct VerifyArgs {
  std::string file;
  unsigned k = 0;
  std::optional<std::string> max_occ;
  bool solve = false;
  std::uint64_t budget = kDefaultSolveBudget;
};

int cmd_verify(const VerifyArgs& a, const Sink& sink) {
  const Formula f = read_dimacs_file(a.file);
  std::optional<std::size_t> cap;
  if (a.max_occ) {
    const BigInt s = parse_bigint(*a.max_occ);
    const BigInt limit(static_cast<unsigned long>(std::numeric_limits<std::size_t>::max()));
    cap = s > limit ? std::numeric_limits<std::size_t>::max()
                    : static_cast<std::size_t>(s.get_ui());
  }
  const auto report = verify_instance(f, a.k, cap, a.solve, a.budget);
  sink.out << report.to_text();
  const bool ok = report.is_unsat_ks_instance();
  sink.out << "verdict=" << (ok ? "ok" : "violated") << '\n';
  return ok ? kExitOk : kExitViolated;
}

RuleMode mode_of(bool literal) { return literal ? RuleMode::PaperLiteral : RuleMode::Restricted; }

struct F2Args {
  unsigned k = 0;
  std::optional<std::string> emit_trace;
  bool paper_literal = false;
};

int cmd_f2(const F2Args& a, const Sink& sink) {
  const RuleMode mode = mode_of(a.paper_literal);
  const BigInt f2 = f2_value(a.k, mode);
  if (a.emit_trace) {
    const auto trace = feasible(a.k, f2 + 1, mode);
    if (!trace) throw InternalError("no derivation at f2 + 1");
    sink.write(*a.emit_trace, trace->to_text());
  }
  sink.out << to_string(f2) << '\n';
  return kExitOk;
}

struct RangeArgs {
  unsigned k_from = 1;
  unsigned k_to = 1;
  std::string out = "-";
  unsigned jobs = 1;
  bool paper_literal = false;
};

void check_range(const RangeArgs& a) {
  if (a.k_from < 1 || a.k_from > a.k_to) throw CLI::ValidationError("need 1 <= --k-from <= --k-to");
}

// Rows are written as they are produced so long runs can be watched.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, std::ostream& stdout_stream) : path_(path) {
    if (path == "-") {
      os_ = &stdout_stream;
    } else {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw Error("cannot open '" + path + "' for writing");
      os_ = &file_;
    }
  }
  void line(const std::string& l) {
    *os_ << l << '\n';
    os_->flush();
    if (!*os_) throw Error("write to '" + path_ + "' failed");
  }

 private:
  std::string path_;
  std::ofstream file_;
  std::ostream* os_ = nullptr;
};

int cmd_f2_table(const RangeArgs& a, const Sink& sink) {
  check_range(a);
  CsvWriter csv(a.out, sink.out);
  csv.line(f2_csv_header());
  f2_table(a.k_from, a.k_to, std::max(1u, a.jobs),
           [&](const F2Row& row) { csv.line(to_csv_line(row)); }, mode_of(a.paper_literal));
  return kExitOk;
}

int cmd_bounds(const RangeArgs& a, const Sink& sink) {
  check_range(a);
  CsvWriter csv(a.out, sink.out);
  csv.line(bounds_csv_header());
  for (unsigned k = a.k_from; k <= a.k_to; ++k) csv.line(to_csv_line(bounds_row(k)));
  return kExitOk;
}

struct MaterializeArgs {
  unsigned k = 0;
  std::string s;
  std::string out = "-";
  std::optional<std::string> trace;
  bool paper_literal = false;
};

int cmd_materialize(const MaterializeArgs& a, const Sink& sink) {
  const RuleMode mode = mode_of(a.paper_literal);
  const BigInt s = parse_bigint(a.s);
  std::optional<DerivTrace> trace;
  if (a.trace) {
    trace = DerivTrace::parse(read_text_file(*a.trace));
  } else {
    trace = feasible(a.k, s, mode);
    if (!trace) {
      sink.out << "derivable=no\n";
      return kExitViolated;
    }
  }
  const auto result = materialize(*trace, a.k, s, mode);
  emit_formula(sink, a.out,
               {{"k", std::to_string(a.k)},
                {"s", to_string(s)},
                {"mode", to_string(mode)},
                {"nodes", str(trace->nodes().size())},
                {"required_s", to_string(trace->required_s(a.k, mode))},
                {"n", str(result.formula.num_vars())},
                {"m", str(result.formula.size())},
                {"max_occurrence", str(result.max_occurrence)},
                {"within_s", yes_no(result.within_s)}},
               result.formula);
  return result.within_s ? kExitOk : kExitViolated;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Unsatisfiable k-CNF formulas with few occurrences per variable"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");
  const Sink sink{out};

  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "Build an explicit unsatisfiable k-CNF");
  construct->add_option("--method", ca.method, "lemma1 or lemma2")
      ->required()
      ->check(CLI::IsMember({"lemma1", "lemma2"}));
  construct->add_option("--k", ca.k, "clause width")->required()->check(CLI::Range(1u, 64u));
  construct->add_option("--l", ca.l, "block parameter (default: corollary choice)");
  construct->add_flag("--compact", ca.compact, "share repeated sub-formulas");
  construct->add_option("--out", ca.out, "DIMACS output path, - for stdout");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Check a DIMACS file is an unsatisfiable (k,s)-CNF");
  verify->add_option("file", va.file, "DIMACS file, - for stdin")->required();
  verify->add_option("--k", va.k, "expected clause width")->required();
  verify->add_option("--max-occ", va.max_occ, "occurrence cap s");
  verify->add_flag("--solve", va.solve, "run the DPLL solver");
  verify->add_option("--budget", va.budget, "solver decision budget");

  F2Args fa;
  auto* f2 = app.add_subcommand("f2", "Print f2(k)");
  f2->add_option("--k", fa.k, "clause width")->required()->check(CLI::PositiveNumber);
  f2->add_option("--emit-trace", fa.emit_trace, "write the derivation at f2(k)+1");
  f2->add_flag("--paper-literal", fa.paper_literal, "unrestricted rule 1");

  RangeArgs ta;
  auto* table = app.add_subcommand("f2-table", "CSV of f2(k) over a range of k");
  table->add_option("--k-from", ta.k_from)->required();
  table->add_option("--k-to", ta.k_to)->required();
  table->add_option("--out", ta.out, "CSV path, - for stdout")->required();
  table->add_option("--jobs", ta.jobs, "worker threads")->check(CLI::PositiveNumber);
  table->add_flag("--paper-literal", ta.paper_literal, "unrestricted rule 1");

  RangeArgs ba;
  auto* bounds = app.add_subcommand("bounds", "CSV of closed-form bounds over a range of k");
  bounds->add_option("--k-from", ba.k_from)->required();
  bounds->add_option("--k-to", ba.k_to)->required();
  bounds->add_option("--out", ba.out, "CSV path, - for stdout")->required();

  MaterializeArgs ma;
  auto* mat = app.add_subcommand("materialize", "Build the formula of a derivation");
  mat->add_option("--k", ma.k, "clause width")->required()->check(CLI::PositiveNumber);
  mat->add_option("--s", ma.s, "occurrence cap")->required();
  mat->add_option("--out", ma.out, "DIMACS output path, - for stdout")->required();
  mat->add_option("--trace", ma.trace, "trace file (default: derive one at cap s)");
  mat->add_flag("--paper-literal", ma.paper_literal, "unrestricted rule 1");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (construct->parsed()) return cmd_construct(ca, sink);
    if (verify->parsed()) return cmd_verify(va, sink);
    if (f2->parsed()) return cmd_f2(fa, sink);
    if (table->parsed()) return cmd_f2_table(ta, sink);
    if (bounds->parsed()) return cmd_bounds(ba, sink);
    if (mat->parsed()) return cmd_materialize(ma, sink);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

int run(const std::vector<std::string>& args) { return run(args, std::cout, std::cerr); }

}  // namespace fewocc::cli
