#pragma once

#include <string>

#include "mend/lang/ast.hpp"

namespace mend::lang {

// Canonical form: 2-space indentation, one statement per line, one blank
// line between functions, minimal parentheses. Parsing the output yields a
// structurally equal program whose node ids and lines match when the input
// was already canonical.
std::string print_program(const Program& program);
std::string print_expr(const Expr& expr);
// One-line rendering of a statement; compound statements render their
// header only, e.g. `while (i < n)`.
std::string print_stmt_header(const Stmt& stmt);

}  // namespace mend::lang
