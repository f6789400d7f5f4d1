#include "mend/suggest/suggest.hpp"
#include "suggest/expr_util.hpp"

namespace mend::suggest {

using lang::EditKind;
using lang::ExprKind;
using lang::StmtKind;

namespace {

class VarSub : public Suggester {
 public:
  std::string id() const override { return "varsub"; }
  double tier() const override { return 0.80; }
  std::string summary() const override {
    return "replace a variable or function with another accessible one of the same type";
  }

  std::vector<Proposal> generate(const SuggestContext& ctx) const override {
    std::vector<Proposal> out;
    for (const auto* s : ctx.statements) {
      detail::for_each_expr(*s, [&](const lang::ExprPtr& e) {
        if (e->kind == ExprKind::Var) substitute_use(ctx, *e, out);
        if (e->kind == ExprKind::Call) substitute_callee(ctx, *e, out);
      });
      if (s->kind == StmtKind::Assign) substitute_target(ctx, *s, out);
    }
    return out;
  }

 private:
  static void substitute_use(const SuggestContext& ctx, const lang::Expr& e, std::vector<Proposal>& out) {
    auto kind = ctx.variables.find(e.text);
    if (kind == ctx.variables.end()) return;
    for (const auto& [name, k] : ctx.variables) {
      if (name == e.text || k != kind->second) continue;
      out.push_back({lang::Edit{EditKind::ReplaceExpr, e.id, detail::make_var(name), nullptr},
                     "used " + name + " instead of " + e.text,
                     {}});
    }
  }

  static void substitute_target(const SuggestContext& ctx, const lang::Stmt& s, std::vector<Proposal>& out) {
    auto kind = ctx.variables.find(s.name);
    if (kind == ctx.variables.end()) return;
    for (const auto& [name, k] : ctx.variables) {
      if (name == s.name || k != kind->second) continue;
      out.push_back({lang::Edit{EditKind::ReplaceStmt, s.id, nullptr, detail::make_assign(name, s.value())},
                     "assigned to " + name + " instead of " + s.name,
                     {}});
    }
  }

  static void substitute_callee(const SuggestContext& ctx, const lang::Expr& e, std::vector<Proposal>& out) {
    if (!ctx.program.find_function(e.text)) return;
    for (const auto& fn : ctx.program.functions) {
      if (fn->name == e.text || fn->params.size() != e.operands.size()) continue;
      auto repl = std::make_shared<lang::Expr>(e);
      repl->text = fn->name;
      out.push_back({lang::Edit{EditKind::ReplaceExpr, e.id, repl, nullptr},
                     "called " + fn->name + " instead of " + e.text,
                     {}});
    }
  }
};

}  // namespace

std::shared_ptr<const Suggester> make_varsub() { return std::make_shared<VarSub>(); }

}  // namespace mend::suggest
