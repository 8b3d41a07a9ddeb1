#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fewocc/constructions.hpp"
#include "fewocc/dimacs.hpp"
#include "fewocc/dp.hpp"
#include "fewocc/error.hpp"
#include "fewocc/numfmt.hpp"
#include "fewocc/solver.hpp"

namespace py = pybind11;
using namespace fewocc;

namespace {

// Arbitrary-precision integers cross the boundary as Python ints.
py::int_ to_py(const BigInt& v) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(to_string(v).c_str(), nullptr, 10));
}

BigInt from_py(const py::int_& v) { return parse_bigint(py::str(v).cast<std::string>()); }

using PyClauses = std::vector<std::vector<long long>>;

Formula formula_of(const PyClauses& clauses) {
  std::vector<Clause> out;
  out.reserve(clauses.size());
  for (const auto& c : clauses) {
    Clause cl;
    for (long long l : c) cl.push_back(Lit::from_dimacs(l));
    out.push_back(std::move(cl));
  }
  return Formula(std::move(out));
}

PyClauses clauses_of(const Formula& f) {
  PyClauses out;
  out.reserve(f.size());
  for (const auto& c : f) {
    std::vector<long long> cl;
    for (Lit l : c) cl.push_back(l.to_dimacs());
    out.push_back(std::move(cl));
  }
  return out;
}

py::dict stats_dict(const ConstructionStats& s) {
  py::dict d;
  d["n"] = to_py(s.n);
  d["m"] = to_py(s.m);
  d["max_occurrence"] = to_py(s.max_occurrence);
  d["incomplete_size"] = to_py(s.incomplete_size);
  return d;
}

RuleMode mode_of(bool paper_literal) {
  return paper_literal ? RuleMode::PaperLiteral : RuleMode::Restricted;
}

}  // namespace

PYBIND11_MODULE(_fewocc, m) {
  m.doc() = "Unsatisfiable k-CNF formulas with few occurrences per variable";

  py::register_exception<Error>(m, "FewoccError", PyExc_ValueError);

  py::class_<Formula>(m, "Formula")
      .def(py::init(&formula_of), py::arg("clauses"))
      .def("clauses", &clauses_of)
      .def("variables", &Formula::variables)
      .def_property_readonly("num_vars", &Formula::num_vars)
      .def("uniform_width", &Formula::uniform_width, py::arg("k"))
      .def("max_occurrence",
           [](const Formula& f, std::size_t k) { return occurrence_census(f, k).max_occurrence(); },
           py::arg("k"))
      .def("__len__", &Formula::size)
      .def("__eq__", [](const Formula& a, const Formula& b) { return a == b; })
      .def("__repr__",
           [](const Formula& f) { return "<Formula " + std::to_string(f.size()) + " clauses>"; });

  m.def("complete_formula", [](const std::vector<Var>& v) { return complete_formula(v); },
        py::arg("vars"));
  m.def("almost_complete_formula",
        [](const std::vector<Var>& v) { return almost_complete_formula(v); }, py::arg("vars"));
  m.def("product", &product, py::arg("f1"), py::arg("f2"));

  m.def("write_dimacs", [](const Formula& f) { return write_dimacs(f); }, py::arg("formula"));
  m.def("read_dimacs", &read_dimacs, py::arg("text"));

  m.def(
      "solve",
      [](const Formula& f, std::uint64_t budget) {
        const auto r = solve(f, budget);
        py::dict d;
        d["status"] = to_string(r.status);
        if (r.witness) {
          py::dict w;
          for (const auto& [v, val] : r.witness->values()) w[py::int_(v)] = val;
          d["witness"] = w;
        } else {
          d["witness"] = py::none();
        }
        d["decisions"] = r.stats.decisions;
        d["propagations"] = r.stats.propagations;
        return d;
      },
      py::arg("formula"), py::arg("budget") = kDefaultSolveBudget);
  m.def(
      "enumerate_models",
      [](const Formula& f) {
        std::vector<std::map<Var, bool>> out;
        for (const auto& a : enumerate_models(f)) out.push_back(a.values());
        return out;
      },
      py::arg("formula"));

  m.def(
      "lemma1_build",
      [](unsigned k, unsigned l, bool compact) {
        auto b = lemma1_build(k, l, {.compact = compact});
        return py::make_tuple(std::move(b.formula), stats_dict(b.stats));
      },
      py::arg("k"), py::arg("l"), py::arg("compact") = false);
  m.def(
      "lemma2_build",
      [](unsigned k, unsigned l, bool compact) {
        py::list stages;
        for (auto& b : lemma2_build(k, l, {.compact = compact})) {
          stages.append(py::make_tuple(std::move(b.formula), stats_dict(b.stats)));
        }
        return stages;
      },
      py::arg("k"), py::arg("l"), py::arg("compact") = false);
  m.def("lemma2_condition", &lemma2_condition, py::arg("k"), py::arg("l"));
  m.def("lll_lower_bound", [](unsigned k) { return to_py(lll_lower_bound(k)); }, py::arg("k"));
  m.def(
      "bounds_row",
      [](unsigned k) {
        const auto r = bounds_row(k);
        py::dict d;
        d["k"] = r.k;
        d["lll_lower"] = to_py(r.lll_lower);
        d["lemma1_s"] = to_py(r.lemma1_s);
        d["lemma1_l"] = r.lemma1_l;
        d["lemma2_s"] = to_py(r.lemma2_s);
        d["lemma2_l"] = r.lemma2_l;
        return d;
      },
      py::arg("k"));

  m.def(
      "f2_value",
      [](unsigned k, bool paper_literal) { return to_py(f2_value(k, mode_of(paper_literal))); },
      py::arg("k"), py::arg("paper_literal") = false);
  m.def(
      "f2_table",
      [](unsigned k_from, unsigned k_to, unsigned jobs) {
        std::vector<std::pair<unsigned, py::int_>> out;
        std::vector<F2Row> rows;
        {
          py::gil_scoped_release release;
          rows = f2_table(k_from, k_to, jobs);
        }
        for (const auto& r : rows) out.emplace_back(r.k, to_py(r.f2));
        return out;
      },
      py::arg("k_from"), py::arg("k_to"), py::arg("jobs") = 1);
  m.def("oracle_f2", &oracle_f2, py::arg("k"));
  m.def(
      "feasible",
      [](unsigned k, const py::int_& s, bool paper_literal) -> std::optional<std::string> {
        const auto t = feasible(k, from_py(s), mode_of(paper_literal));
        if (!t) return std::nullopt;
        return t->to_text();
      },
      py::arg("k"), py::arg("s"), py::arg("paper_literal") = false);
  m.def(
      "materialize",
      [](const std::string& trace, unsigned k, const py::int_& s, bool paper_literal) {
        const auto r =
            materialize(DerivTrace::parse(trace), k, from_py(s), mode_of(paper_literal));
        return py::make_tuple(r.formula, r.max_occurrence, r.within_s);
      },
      py::arg("trace"), py::arg("k"), py::arg("s"), py::arg("paper_literal") = false);
}
