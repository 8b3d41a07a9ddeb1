#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fewocc/cnf.hpp"

namespace fewocc {

/// Serializes f as DIMACS CNF. Variables are renumbered onto 1..n; when that
/// renumbering is not the identity, `c map <new> <original>` lines record it.
/// `comments` are emitted first as `c <text>` lines. Clauses follow the
/// formula's canonical order, so output is byte-stable.
std::string write_dimacs(const Formula& f, const std::vector<std::string>& comments = {});

/// Parses DIMACS CNF. Comment lines may appear before and after the header.
/// Duplicate literals and clauses collapse; tautologies, ids above the header
/// count, a missing header, or a clause count mismatch throw fewocc::Error.
Formula read_dimacs(std::string_view text);

Formula read_dimacs_file(const std::string& path);
/// "-" writes to standard output.
void write_text_file(const std::string& path, const std::string& contents);
std::string read_text_file(const std::string& path);

}  // namespace fewocc
