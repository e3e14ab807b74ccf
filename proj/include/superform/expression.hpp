// Tiny arithmetic expression grammar for config files.
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := unary ('^' factor)?          (right associative)
//   unary  := '-' unary | primary
//   primary:= number | ident | ident '(' expr (',' expr)* ')' | '(' expr ')'
//
// Identifiers x1..xn are coordinates; functions: sin cos cosh sinh exp log
// sqrt abs and the n-ary max. Parse errors carry line/column.
#pragma once

#include <string>

#include "superform/scalar_field.hpp"

namespace superform {

struct ParseError : std::runtime_error {
  int line, column;
  ParseError(const std::string& msg, int line_, int col_)
      : std::runtime_error(msg + " at " + std::to_string(line_) + ":" +
                           std::to_string(col_)),
        line(line_),
        column(col_) {}
};

// Parses `text` into a field on R^dim.
ScalarField parse_expression(const std::string& text, int dim);

}  // namespace superform
