#include "mend/lang/printer.hpp"
#include "mend/suggest/suggest.hpp"
#include "suggest/expr_util.hpp"

namespace mend::suggest {

using lang::BinaryOp;
using lang::EditKind;
using lang::ExprKind;
using lang::ExprPtr;
using lang::StmtKind;
using lang::UnaryOp;

namespace {

bool returns_value(const lang::Stmt& s) {
  if (s.kind == StmtKind::Return) return !s.exprs.empty();
  for (const auto& b : s.body) {
    if (returns_value(*b)) return true;
  }
  for (const auto& b : s.orelse) {
    if (returns_value(*b)) return true;
  }
  return false;
}

bool pure_call(const lang::Program& program, const lang::Expr& call) {
  if (call.text == "abs" || call.text == "min" || call.text == "max") return true;
  const auto* fn = program.find_function(call.text);
  if (!fn) return false;
  for (const auto& s : fn->body) {
    if (returns_value(*s)) return true;
  }
  return false;
}

class Smell : public Suggester {
 public:
  std::string id() const override { return "smell"; }
  double tier() const override { return 0.95; }
  std::string summary() const override {
    return "code smells: == used as assignment, && / || confusion, misplaced !, discarded results";
  }

  std::vector<Proposal> generate(const SuggestContext& ctx) const override {
    std::vector<Proposal> out;
    for (const auto* s : ctx.statements) {
      if (s->kind == StmtKind::ExprStmt) statement_smells(ctx, *s, out);
      if (detail::is_condition_stmt(*s)) condition_smells(*s, out);
    }
    return out;
  }

 private:
  static void statement_smells(const SuggestContext& ctx, const lang::Stmt& s, std::vector<Proposal>& out) {
    const auto& e = *s.value();
    if (e.kind == ExprKind::Binary && e.binary_op == BinaryOp::Eq && e.operands[0]->kind == ExprKind::Var) {
      lang::Edit edit{EditKind::ReplaceStmt, s.id, nullptr,
                      detail::make_assign(e.operands[0]->text, e.operands[1])};
      out.push_back({edit, "replaced == with = in `" + lang::print_stmt_header(s) + "`", {}});
    }
    if (e.kind == ExprKind::Call && !e.operands.empty() && e.operands[0]->kind == ExprKind::Var &&
        pure_call(ctx.program, e)) {
      const std::string& target = e.operands[0]->text;
      lang::Edit edit{EditKind::ReplaceStmt, s.id, nullptr,
                      detail::make_assign(target, std::make_shared<lang::Expr>(e))};
      out.push_back({edit, "assigned the discarded result of " + e.text + " to " + target, {}});
    }
  }

  static void condition_smells(const lang::Stmt& s, std::vector<Proposal>& out) {
    detail::for_each_subexpr(s.condition(), [&](const ExprPtr& e) {
      if (e->kind == ExprKind::Binary && lang::is_logical(e->binary_op)) {
        const BinaryOp flipped = e->binary_op == BinaryOp::And ? BinaryOp::Or : BinaryOp::And;
        out.push_back({lang::Edit{EditKind::ReplaceExpr, e->id, detail::with_op(*e, flipped), nullptr},
                       "replaced " + std::string(lang::to_string(e->binary_op)) + " with " +
                           std::string(lang::to_string(flipped)),
                       {}});
      }
      if (e->kind == ExprKind::Binary && (e->binary_op == BinaryOp::Eq || e->binary_op == BinaryOp::Ne) &&
          e->operands[0]->kind == ExprKind::Unary && e->operands[0]->unary_op == UnaryOp::Not) {
        auto inner = detail::with_operands(*e, {e->operands[0]->operands[0], e->operands[1]});
        auto fixed = detail::make_unary(UnaryOp::Not, inner);
        out.push_back({lang::Edit{EditKind::ReplaceExpr, e->id, fixed, nullptr},
                       "applied ! to the whole comparison `" + detail::describe(*fixed) + "`",
                       {}});
      }
      if (e->kind == ExprKind::Unary && e->unary_op == UnaryOp::Not) {
        out.push_back({lang::Edit{EditKind::ReplaceExpr, e->id, e->operands[0], nullptr},
                       "removed the negation in `" + detail::describe(*e) + "`",
                       {}});
      }
    });
  }
};

}  // namespace

std::shared_ptr<const Suggester> make_smell() { return std::make_shared<Smell>(); }

}  // namespace mend::suggest
