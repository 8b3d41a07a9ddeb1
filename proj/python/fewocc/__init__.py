"""Unsatisfiable k-CNF formulas with few occurrences per variable."""

from ._fewocc import (
    Formula,
    FewoccError,
    almost_complete_formula,
    bounds_row,
    complete_formula,
    enumerate_models,
    f2_table,
    f2_value,
    feasible,
    lemma1_build,
    lemma2_build,
    lemma2_condition,
    lll_lower_bound,
    materialize,
    oracle_f2,
    product,
    read_dimacs,
    solve,
    write_dimacs,
)

__all__ = [
    "Formula",
    "FewoccError",
    "almost_complete_formula",
    "bounds_row",
    "complete_formula",
    "enumerate_models",
    "f2_table",
    "f2_value",
    "feasible",
    "lemma1_build",
    "lemma2_build",
    "lemma2_condition",
    "lll_lower_bound",
    "materialize",
    "oracle_f2",
    "product",
    "read_dimacs",
    "solve",
    "write_dimacs",
]
