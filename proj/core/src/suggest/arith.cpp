#include "mend/suggest/suggest.hpp"
#include "suggest/expr_util.hpp"

namespace mend::suggest {

using lang::BinaryOp;

namespace {

class Arith : public Suggester {
 public:
  std::string id() const override { return "arith"; }
  double tier() const override { return 0.75; }
  std::string summary() const override {
    return "replace an arithmetic operator, or swap the operands of -, / and %";
  }

  std::vector<Proposal> generate(const SuggestContext& ctx) const override {
    static constexpr BinaryOp kOps[] = {BinaryOp::Add, BinaryOp::Sub, BinaryOp::Mul, BinaryOp::Div,
                                        BinaryOp::Mod};
    std::vector<Proposal> out;
    for (const auto* s : ctx.statements) {
      detail::for_each_expr(*s, [&](const lang::ExprPtr& e) {
        if (e->kind != lang::ExprKind::Binary || !lang::is_arithmetic(e->binary_op)) return;
        const std::string before = detail::describe(*e);
        const BinaryOp op = e->binary_op;
        if (op == BinaryOp::Sub || op == BinaryOp::Div || op == BinaryOp::Mod) {
          auto swapped = detail::with_operands(*e, {e->operands[1], e->operands[0]});
          out.push_back({lang::Edit{lang::EditKind::ReplaceExpr, e->id, swapped, nullptr},
                         "swapped the operands of `" + before + "`",
                         {}});
        }
        for (auto alt : kOps) {
          if (alt == op) continue;
          auto repl = detail::with_op(*e, alt);
          out.push_back({lang::Edit{lang::EditKind::ReplaceExpr, e->id, repl, nullptr},
                         "replaced `" + before + "` with `" + detail::describe(*repl) + "`",
                         {}});
        }
      });
    }
    return out;
  }
};

}  // namespace

std::shared_ptr<const Suggester> make_arith() { return std::make_shared<Arith>(); }

}  // namespace mend::suggest
