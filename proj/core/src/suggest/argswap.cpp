#include "mend/suggest/suggest.hpp"
#include "suggest/expr_util.hpp"

namespace mend::suggest {

using interp::ValueKind;
using lang::ExprKind;

namespace {

std::optional<ValueKind> static_kind(const SuggestContext& ctx, const lang::Expr& e) {
  switch (e.kind) {
    case ExprKind::Int:
    case ExprKind::Len: return ValueKind::Int;
    case ExprKind::Bool: return ValueKind::Bool;
    case ExprKind::Str: return ValueKind::Str;
    case ExprKind::Array: return ValueKind::Array;
    case ExprKind::Nil: return ValueKind::Nil;
    case ExprKind::Var: {
      auto it = ctx.variables.find(e.text);
      if (it == ctx.variables.end()) return std::nullopt;
      return it->second;
    }
    case ExprKind::Unary: return e.unary_op == lang::UnaryOp::Neg ? ValueKind::Int : ValueKind::Bool;
    case ExprKind::Binary:
      if (lang::is_relational(e.binary_op) || lang::is_logical(e.binary_op)) return ValueKind::Bool;
      return static_kind(ctx, *e.operands[0]);
    default: return std::nullopt;
  }
}

class ArgSwap : public Suggester {
 public:
  std::string id() const override { return "argswap"; }
  double tier() const override { return 0.80; }
  std::string summary() const override { return "swap two call arguments of the same type"; }

  std::vector<Proposal> generate(const SuggestContext& ctx) const override {
    std::vector<Proposal> out;
    for (const auto* s : ctx.statements) {
      detail::for_each_expr(*s, [&](const lang::ExprPtr& e) {
        if (e->kind != ExprKind::Call || e->operands.size() < 2) return;
        auto kinds = argument_kinds(ctx, *e);
        for (std::size_t i = 0; i < e->operands.size(); ++i) {
          for (std::size_t j = i + 1; j < e->operands.size(); ++j) {
            if (!kinds[i] || kinds[i] != kinds[j]) continue;
            if (lang::same_structure(*e->operands[i], *e->operands[j])) continue;
            auto ops = e->operands;
            std::swap(ops[i], ops[j]);
            auto repl = detail::with_operands(*e, std::move(ops));
            out.push_back({lang::Edit{lang::EditKind::ReplaceExpr, e->id, repl, nullptr},
                           "swapped arguments " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                               " in `" + detail::describe(*e) + "`",
                           {}});
          }
        }
      });
    }
    return out;
  }

 private:
  static std::vector<std::optional<ValueKind>> argument_kinds(const SuggestContext& ctx, const lang::Expr& call) {
    std::vector<std::optional<ValueKind>> kinds(call.operands.size());
    auto it = ctx.call_args.find(call.id);
    if (it != ctx.call_args.end() && it->second.size() == kinds.size()) {
      for (std::size_t i = 0; i < kinds.size(); ++i) kinds[i] = it->second[i];
      return kinds;
    }
    for (std::size_t i = 0; i < kinds.size(); ++i) kinds[i] = static_kind(ctx, *call.operands[i]);
    return kinds;
  }
};

}  // namespace

std::shared_ptr<const Suggester> make_argswap() { return std::make_shared<ArgSwap>(); }

}  // namespace mend::suggest
