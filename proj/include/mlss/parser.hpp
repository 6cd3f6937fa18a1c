#ifndef MLSS_PARSER_HPP
#define MLSS_PARSER_HPP

#include <optional>
#include <set>
#include <stdexcept>
#include <string>

#include "mlss/formula.hpp"

namespace mlss {

struct ParseError : std::runtime_error {
  ParseError(std::string msg, std::size_t line, std::size_t column)
      : std::runtime_error(std::move(msg)), line(line), column(column) {}
  std::size_t line, column;
};

struct ParseResult {
  Formula formula;
  // Level tags that were assigned to unannotated `{}` occurrences; type
  // inference may pick any level for these, pinned `{}@n` stays fixed.
  std::set<unsigned> flexible_empty_tags;
};

struct ParseOptions {
  // Identifiers starting with `_` are reserved for solver witnesses and
  // rejected in user input; certificate replay needs to read them back.
  bool allow_internal_names = false;
};

ParseResult parse(const std::string &text, const ParseOptions &opts = {});

// Minimal-parenthesis rendering; Empty prints as `{}@n`, Single t as `{t}`,
// negated atoms as `!=`/`notin`. parse(pretty(f)).formula == f.
std::string pretty(const Formula &f);
std::string pretty(const Term &t);
std::string pretty(const Atom &a);

} // namespace mlss

#endif
