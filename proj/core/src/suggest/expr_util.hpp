#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mend/lang/ast.hpp"

namespace mend::suggest::detail {

lang::ExprPtr make_int(std::int64_t v);
lang::ExprPtr make_var(const std::string& name);
lang::ExprPtr make_nil();
lang::ExprPtr make_binary(lang::BinaryOp op, lang::ExprPtr lhs, lang::ExprPtr rhs);
lang::ExprPtr make_unary(lang::UnaryOp op, lang::ExprPtr operand);
lang::ExprPtr make_len(lang::ExprPtr arg);
lang::ExprPtr with_op(const lang::Expr& e, lang::BinaryOp op);
lang::ExprPtr with_operands(const lang::Expr& e, std::vector<lang::ExprPtr> operands);
lang::StmtPtr make_assign(const std::string& name, lang::ExprPtr value);

// `e + k` with constant folding of `(a + c) + k`, `(a - c) + k` and
// literals.
lang::ExprPtr add_constant(const lang::ExprPtr& e, std::int64_t k);

// Pre-order walk over the statement's own expressions (not nested bodies).
void for_each_expr(const lang::Stmt& s, const std::function<void(const lang::ExprPtr&)>& fn);
void for_each_subexpr(const lang::ExprPtr& e, const std::function<void(const lang::ExprPtr&)>& fn);

// Expressions used as a branch condition of `s`, including operands of
// && / || / ! in that condition.
bool is_condition_stmt(const lang::Stmt& s);

std::string describe(const lang::Expr& e);

}  // namespace mend::suggest::detail
