#include "fewocc/dimacs.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fewocc/error.hpp"

namespace fewocc {

std::string write_dimacs(const Formula& f, const std::vector<std::string>& comments) {
  const Renumbered r = renumber_contiguous(f);
  std::string out;
  for (const auto& c : comments) {
    out += "c ";
    out += c;
    out += '\n';
  }
  if (!r.identity) {
    for (std::size_t i = 0; i < r.mapping.size(); ++i) {
      out += "c map " + std::to_string(i + 1) + ' ' + std::to_string(r.mapping[i]) + '\n';
    }
  }
  out += "p cnf " + std::to_string(r.mapping.size()) + ' ' + std::to_string(r.formula.size()) + '\n';
  for (const auto& clause : r.formula) {
    for (Lit l : clause) {
      out += std::to_string(l.to_dimacs());
      out += ' ';
    }
    out += "0\n";
  }
  return out;
}

namespace {

bool parse_ll(std::string_view tok, long long& value) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  return ec == std::errc{} && ptr == last;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> toks;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) toks.push_back(line.substr(i, j - i));
    i = j;
  }
  return toks;
}

}  // namespace

Formula read_dimacs(std::string_view text) {
  bool have_header = false;
  long long nvars = 0;
  long long nclauses = 0;
  std::vector<Clause> clauses;
  Clause current;
  bool open_clause = false;
  std::size_t line_no = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    const auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (toks[0] == "c" || toks[0].front() == 'c') continue;
    if (toks[0] == "%") break;  // SATLIB trailer
    if (toks[0] == "p") {
      if (have_header) throw Error("line " + std::to_string(line_no) + ": duplicate header");
      if (toks.size() != 4 || toks[1] != "cnf" || !parse_ll(toks[2], nvars) ||
          !parse_ll(toks[3], nclauses) || nvars < 0 || nclauses < 0) {
        throw Error("line " + std::to_string(line_no) + ": malformed header");
      }
      have_header = true;
      continue;
    }
    if (!have_header) throw Error("line " + std::to_string(line_no) + ": clause before header");
    for (auto tok : toks) {
      long long v = 0;
      if (!parse_ll(tok, v)) {
        throw Error("line " + std::to_string(line_no) + ": bad literal '" + std::string(tok) + "'");
      }
      if (v == 0) {
        clauses.push_back(std::move(current));
        current.clear();
        open_clause = false;
        continue;
      }
      if ((v < 0 ? -v : v) > nvars) {
        throw Error("line " + std::to_string(line_no) + ": variable " +
                    std::to_string(v < 0 ? -v : v) + " exceeds header count " +
                    std::to_string(nvars));
      }
      current.push_back(Lit::from_dimacs(v));
      open_clause = true;
    }
  }
  if (!have_header) throw Error("missing 'p cnf' header");
  if (open_clause) throw Error("last clause is not terminated by 0");
  if (static_cast<long long>(clauses.size()) != nclauses) {
    throw Error("header announces " + std::to_string(nclauses) + " clauses, found " +
                std::to_string(clauses.size()));
  }
  return Formula(std::move(clauses));
}

std::string read_text_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& contents) {
  if (path == "-") {
    std::cout << contents << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << contents;
  if (!out) throw Error("write to '" + path + "' failed");
}

Formula read_dimacs_file(const std::string& path) { return read_dimacs(read_text_file(path)); }

}  // namespace fewocc
