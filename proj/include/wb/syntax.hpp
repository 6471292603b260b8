#pragma once

#include <string>
#include <string_view>

#include "wb/objlang.hpp"

namespace wb {

// Textual syntax, one statement per line:
//
//   X1 := 42                 X1 := pair X2 X3        while X1 {
//   X1 := X2                 X1 := first X2          }
//   X1 := succ X2            X1 := second X2         if X1 == 0 {
//   X1 := pred X2            X1 := eval X2 X3        } else {
//   X1 := query X2           X1 := smn X2 X3         }
//   nop 123                  X1 := beval X2 X3 X4
//
// Constants too large to print in decimal are written as nested pair
// literals `<a, b>`. `#` starts a comment.

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

Block parse_block(std::string_view text);
/// Throws ParseError on syntax errors and LanguageError on query statements.
Program parse_program(std::string_view text);
OracleProgram parse_oracle_program(std::string_view text);

std::string print_block(const Block& b);
inline std::string print_program(const Program& p) { return print_block(p.body); }
inline std::string print_program(const OracleProgram& p) { return print_block(p.body); }

/// Decimal, or a `<a, b>` pair literal when the decimal form is too large.
std::string print_constant(const Nat& n);
/// Inverse of print_constant; whitespace, newlines and `#` comments are allowed.
Nat parse_constant(std::string_view text);

}  // namespace wb
