#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ctrsnc/ctrs.hpp"

namespace ctrsnc {

/// Diagnostic for malformed input, with a 1-based source location.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, int line, int column)
      : std::runtime_error(std::to_string(line) + ":" +
                           std::to_string(column) + ": " + message),
        line(line),
        column(column) {}
  int line;
  int column;
};

/// A parsed Cops file: the system plus the surrounding declarations.
struct CopsDocument {
  Ctrs system;
  std::vector<std::string> declared_variables;
  std::optional<std::string> comment;
};

/// Parses the Cops text format for oriented CTRSs:
///
///   (CONDITIONTYPE ORIENTED)
///   (VAR x y)
///   (RULES f(x) -> y | g(x) == y ...)
///   (COMMENT ...)
///
/// Sections may appear in any order. An identifier denotes a variable iff
/// it is declared in the VAR section. CONDITIONTYPE may be omitted only for
/// unconditional systems and only ORIENTED is accepted. Throws ParseError.
CopsDocument parse_cops(std::string_view text);

/// Renders a system in the same format; parse_cops(print_cops(s)) == s.
std::string print_cops(const Ctrs& system);

}  // namespace ctrsnc
