#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "eqbase/equation.hpp"

namespace eqbase {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at column " + std::to_string(position + 1)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Parses `<term> = <term>` or `<term> != <term>`, optionally followed by a
/// `#` comment, a terminating `.`, and a bracketed justification.
///
/// `*` is left-associative, postfix `'` binds tighter than `*`.
/// Identifiers starting with u, v, w, x, y or z are variables.
Equation parse_equation(std::string_view text);
Term parse_term(std::string_view text);

/// Reads an axiom or hints file: one equation per line, `#` comments and
/// blank lines ignored.  Proof listing lines (`<n> <eq>.  [..]`) are
/// accepted too; `$F` lines and the end-of-proof trailer are skipped.
std::vector<Equation> parse_equation_list(std::string_view text);
std::vector<Equation> read_equation_file(const std::string& path);

}  // namespace eqbase
