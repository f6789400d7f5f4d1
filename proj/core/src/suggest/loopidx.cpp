#include "mend/lang/printer.hpp"
#include "mend/suggest/suggest.hpp"
#include "suggest/expr_util.hpp"

namespace mend::suggest {

using lang::BinaryOp;
using lang::EditKind;
using lang::ExprKind;
using lang::StmtKind;

namespace {

class LoopIdx : public Suggester {
 public:
  std::string id() const override { return "loopidx"; }
  double tier() const override { return 0.80; }
  std::string summary() const override {
    return "off-by-one variants of a for loop's start, bound and step";
  }

  std::vector<Proposal> generate(const SuggestContext& ctx) const override {
    std::vector<Proposal> out;
    for (const auto* s : ctx.statements) {
      if (s->kind != StmtKind::For) continue;
      start_variants(*s, out);
      bound_variants(*s, out);
      step_variants(*s, out);
    }
    return out;
  }

 private:
  static void start_variants(const lang::Stmt& loop, std::vector<Proposal>& out) {
    const auto& init = *loop.init;
    if (init.kind != StmtKind::Let && init.kind != StmtKind::Assign) return;
    const auto& value = init.value();
    std::vector<lang::ExprPtr> alts;
    if (value->kind == ExprKind::Int && (value->int_value == 0 || value->int_value == 1)) {
      alts.push_back(detail::make_int(1 - value->int_value));
    } else {
      alts.push_back(detail::add_constant(value, 1));
      alts.push_back(detail::add_constant(value, -1));
    }
    for (auto& alt : alts) {
      auto repl = std::make_shared<lang::Stmt>(init);
      repl->exprs = {alt};
      out.push_back({lang::Edit{EditKind::ReplaceStmt, init.id, nullptr, repl},
                     "loop starts at " + detail::describe(*alt) + " instead of " + detail::describe(*value),
                     {}});
    }
  }

  static void bound_variants(const lang::Stmt& loop, std::vector<Proposal>& out) {
    const auto& cond = loop.condition();
    if (cond->kind != ExprKind::Binary || !lang::is_relational(cond->binary_op)) return;
    const std::string before = detail::describe(*cond);
    BinaryOp flipped = cond->binary_op;
    switch (cond->binary_op) {
      case BinaryOp::Lt: flipped = BinaryOp::Le; break;
      case BinaryOp::Le: flipped = BinaryOp::Lt; break;
      case BinaryOp::Gt: flipped = BinaryOp::Ge; break;
      case BinaryOp::Ge: flipped = BinaryOp::Gt; break;
      default: break;
    }
    if (flipped != cond->binary_op) {
      auto repl = detail::with_op(*cond, flipped);
      out.push_back({lang::Edit{EditKind::ReplaceExpr, cond->id, repl, nullptr},
                     "loop bound `" + detail::describe(*repl) + "` instead of `" + before + "`",
                     {}});
    }
    for (std::int64_t k : {1, -1}) {
      auto repl = detail::with_operands(*cond, {cond->operands[0], detail::add_constant(cond->operands[1], k)});
      out.push_back({lang::Edit{EditKind::ReplaceExpr, cond->id, repl, nullptr},
                     "loop bound `" + detail::describe(*repl) + "` instead of `" + before + "`",
                     {}});
    }
  }

  static void step_variants(const lang::Stmt& loop, std::vector<Proposal>& out) {
    const auto& step = *loop.step;
    if (step.kind != StmtKind::Assign) return;
    const auto& v = step.value();
    if (v->kind != ExprKind::Binary || (v->binary_op != BinaryOp::Add && v->binary_op != BinaryOp::Sub)) return;
    const BinaryOp other = v->binary_op == BinaryOp::Add ? BinaryOp::Sub : BinaryOp::Add;
    auto repl = std::make_shared<lang::Stmt>(step);
    repl->exprs = {detail::with_op(*v, other)};
    out.push_back({lang::Edit{EditKind::ReplaceStmt, step.id, nullptr, repl},
                   "loop step `" + lang::print_expr(*repl->exprs[0]) + "` instead of `" + detail::describe(*v) + "`",
                   {}});
  }
};

}  // namespace

std::shared_ptr<const Suggester> make_loopidx() { return std::make_shared<LoopIdx>(); }

}  // namespace mend::suggest
