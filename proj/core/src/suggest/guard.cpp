#include "mend/lang/printer.hpp"
#include "mend/suggest/suggest.hpp"
#include "suggest/expr_util.hpp"

namespace mend::suggest {

using lang::BinaryOp;
using lang::EditKind;
using lang::ExprPtr;
using interp::ErrorKind;

namespace {

class Guard : public Suggester {
 public:
  std::string id() const override { return "guard"; }
  double tier() const override { return 0.90; }
  std::string summary() const override {
    return "avoid an exception by guarding the failing statement or tightening an enclosing condition";
  }

  std::vector<Proposal> generate(const SuggestContext& ctx) const override {
    std::vector<Proposal> out;
    const auto& spec = ctx.spec;
    if (spec.kind != problem::ProblemKind::Exception || !spec.error) return out;
    if (ctx.location.function != spec.stop_function || ctx.location.line != spec.stop_line) return out;
    const lang::Stmt* stop = ctx.index.stmt(spec.stop_stmt);
    if (!stop) return out;
    ExprPtr g = guard_expr(ctx, *spec.error);
    if (!g) return out;
    const std::string gtext = detail::describe(*g);

    if (!stop->is_compound()) {
      // A for-header init/step cannot be wrapped.
      const auto* loc = ctx.index.find(stop->id);
      const bool header = loc && loc->parent && loc->parent->kind == lang::StmtKind::For &&
                          (loc->parent->init.get() == stop || loc->parent->step.get() == stop);
      if (!header) {
        out.push_back({lang::Edit{EditKind::WrapStmtInGuard, stop->id, g, nullptr},
                       "guarded `" + lang::print_stmt_header(*stop) + "` with if (" + gtext + ")",
                       {}});
      }
    } else {
      const auto& cond = stop->condition();
      auto e = detail::make_binary(BinaryOp::And, g, cond);
      out.push_back({lang::Edit{EditKind::ReplaceExpr, cond->id, e, nullptr},
                     "added " + gtext + " to the condition `" + detail::describe(*cond) + "`",
                     {}});
    }
    for (const auto* enclosing : ctx.index.enclosing(stop->id)) {
      if (enclosing == stop) continue;
      const auto& cond = enclosing->condition();
      auto e = detail::make_binary(BinaryOp::And, cond, g);
      out.push_back({lang::Edit{EditKind::ReplaceExpr, cond->id, e, nullptr},
                     "added " + gtext + " to the enclosing condition `" + detail::describe(*cond) + "`",
                     enclosing->line});
    }
    return out;
  }

 private:
  static ExprPtr node(const SuggestContext& ctx, lang::NodeId id) {
    const auto* loc = ctx.index.find(id);
    if (!loc || !loc->expr) return nullptr;
    // Shared ownership is not tracked by the index; copy the node.
    return std::make_shared<lang::Expr>(*loc->expr);
  }

  static ExprPtr guard_expr(const SuggestContext& ctx, const interp::RuntimeError& err) {
    switch (err.kind) {
      case ErrorKind::IndexOutOfBounds: {
        if (err.operands.size() != 2) return nullptr;
        auto base = node(ctx, err.operands[0]);
        auto index = node(ctx, err.operands[1]);
        if (!base || !index) return nullptr;
        if (err.index < 0) return detail::make_binary(BinaryOp::Ge, index, detail::make_int(0));
        return detail::make_binary(BinaryOp::Lt, index, detail::make_len(base));
      }
      case ErrorKind::NilAccess: {
        auto e = node(ctx, err.node);
        return e ? detail::make_binary(BinaryOp::Ne, e, detail::make_nil()) : nullptr;
      }
      case ErrorKind::DivByZero: {
        if (err.operands.empty()) return nullptr;
        auto d = node(ctx, err.operands[0]);
        return d ? detail::make_binary(BinaryOp::Ne, d, detail::make_int(0)) : nullptr;
      }
      default: return nullptr;
    }
  }
};

}  // namespace

std::shared_ptr<const Suggester> make_guard() { return std::make_shared<Guard>(); }

}  // namespace mend::suggest
