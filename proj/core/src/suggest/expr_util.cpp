#include "suggest/expr_util.hpp"

#include "mend/lang/printer.hpp"

namespace mend::suggest::detail {

using lang::BinaryOp;
using lang::Expr;
using lang::ExprKind;
using lang::ExprPtr;

ExprPtr make_int(std::int64_t v) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Int;
  e->int_value = v;
  return e;
}

ExprPtr make_var(const std::string& name) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Var;
  e->text = name;
  return e;
}

ExprPtr make_nil() {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Nil;
  return e;
}

ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Binary;
  e->binary_op = op;
  e->operands = {std::move(lhs), std::move(rhs)};
  return e;
}

ExprPtr make_unary(lang::UnaryOp op, ExprPtr operand) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Unary;
  e->unary_op = op;
  e->operands = {std::move(operand)};
  return e;
}

ExprPtr make_len(ExprPtr arg) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Len;
  e->operands = {std::move(arg)};
  return e;
}

ExprPtr with_op(const Expr& e, BinaryOp op) {
  auto c = std::make_shared<Expr>(e);
  c->binary_op = op;
  return c;
}

ExprPtr with_operands(const Expr& e, std::vector<ExprPtr> operands) {
  auto c = std::make_shared<Expr>(e);
  c->operands = std::move(operands);
  return c;
}

lang::StmtPtr make_assign(const std::string& name, ExprPtr value) {
  auto s = std::make_shared<lang::Stmt>();
  s->kind = lang::StmtKind::Assign;
  s->name = name;
  s->exprs = {std::move(value)};
  return s;
}

ExprPtr add_constant(const ExprPtr& e, std::int64_t k) {
  if (k == 0) return e;
  if (e->kind == ExprKind::Int) return make_int(e->int_value + k);
  if (e->kind == ExprKind::Binary && (e->binary_op == BinaryOp::Add || e->binary_op == BinaryOp::Sub) &&
      e->operands[1]->kind == ExprKind::Int) {
    const std::int64_t c = e->binary_op == BinaryOp::Add ? e->operands[1]->int_value : -e->operands[1]->int_value;
    const std::int64_t folded = c + k;
    if (folded == 0) return e->operands[0];
    if (folded > 0) return make_binary(BinaryOp::Add, e->operands[0], make_int(folded));
    return make_binary(BinaryOp::Sub, e->operands[0], make_int(-folded));
  }
  return k > 0 ? make_binary(BinaryOp::Add, e, make_int(k)) : make_binary(BinaryOp::Sub, e, make_int(-k));
}

void for_each_subexpr(const ExprPtr& e, const std::function<void(const ExprPtr&)>& fn) {
  fn(e);
  for (const auto& o : e->operands) for_each_subexpr(o, fn);
}

void for_each_expr(const lang::Stmt& s, const std::function<void(const ExprPtr&)>& fn) {
  for (const auto& e : s.exprs) for_each_subexpr(e, fn);
}

bool is_condition_stmt(const lang::Stmt& s) {
  return s.is_compound() || s.kind == lang::StmtKind::Assert;
}

std::string describe(const Expr& e) { return lang::print_expr(e); }

}  // namespace mend::suggest::detail
