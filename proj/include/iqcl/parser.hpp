#pragma once

// Concrete syntax. Operators from tightest to loosest:
//   ! ? (prefix)   .   *   +   &   |   -> (right assoc)   <-> (sugar)
// Constants are k/2^m fractions, 0, 1, or the aliases bot, top, half.

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include "iqcl/formula.hpp"
#include "iqcl/theory.hpp"

namespace iqcl {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  /// Message without the position prefix.
  const std::string& detail() const { return detail_; }

 private:
  std::string detail_;
  std::size_t line_, column_;
};

struct ParseOptions {
  /// Accept `$name` schema metavariables.
  bool allow_meta = false;
  /// Reported position of the first character.
  std::size_t line = 1;
  std::size_t column = 1;
};

Formula parse_formula(std::string_view text, const ParseOptions& options = {});
std::string print_formula(const Formula& f);
/// Binding strength used by the printer; larger binds tighter.
int precedence(Kind k);
/// ASCII spelling of a binary connective.
const char* binary_symbol(Kind k);

/// One formula per line; `#` starts a comment; blank lines are skipped.
Theory parse_theory(std::string_view text);
Theory load_theory(const std::string& path);
std::string print_theory(const Theory& t);

std::string read_file(const std::string& path);

}  // namespace iqcl
