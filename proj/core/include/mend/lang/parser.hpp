#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "mend/lang/ast.hpp"

namespace mend::lang {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message);

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& detail() const { return detail_; }

 private:
  int line_;
  int column_;
  std::string detail_;
};

// Parses a whole MiniLang program. Node ids are assigned in pre-order.
Ast parse(std::string_view source);

// Parses a single expression (used for CLI arguments and tests). Node ids
// start at `first_id`.
ExprPtr parse_expression(std::string_view source, NodeId first_id = 0);

}  // namespace mend::lang
