#include "mend/suggest/suggest.hpp"
#include "suggest/expr_util.hpp"

namespace mend::suggest {

using lang::BinaryOp;

namespace {

class Relop : public Suggester {
 public:
  std::string id() const override { return "relop"; }
  double tier() const override { return 0.80; }
  std::string summary() const override { return "replace a relational operator with another one"; }

  std::vector<Proposal> generate(const SuggestContext& ctx) const override {
    static constexpr BinaryOp kOps[] = {BinaryOp::Lt, BinaryOp::Le, BinaryOp::Gt,
                                        BinaryOp::Ge, BinaryOp::Eq, BinaryOp::Ne};
    std::vector<Proposal> out;
    for (const auto* s : ctx.statements) {
      detail::for_each_expr(*s, [&](const lang::ExprPtr& e) {
        if (e->kind != lang::ExprKind::Binary || !lang::is_relational(e->binary_op)) return;
        for (auto op : kOps) {
          if (op == e->binary_op) continue;
          auto repl = detail::with_op(*e, op);
          out.push_back({lang::Edit{lang::EditKind::ReplaceExpr, e->id, repl, nullptr},
                         "replaced `" + detail::describe(*e) + "` with `" + detail::describe(*repl) + "`",
                         {}});
        }
      });
    }
    return out;
  }
};

}  // namespace

std::shared_ptr<const Suggester> make_relop() { return std::make_shared<Relop>(); }

}  // namespace mend::suggest
