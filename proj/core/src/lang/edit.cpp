#include "mend/lang/edit.hpp"

#include "lang/ast_build.hpp"

namespace mend::lang {

namespace {

enum class Slot { Block, ForInit, ForStep };

class Rewriter {
 public:
  Rewriter(const Edit& edit, NodeId next) : edit_(edit), next_(next) {}

  std::vector<StmtPtr> block(const std::vector<StmtPtr>& stmts, bool& changed) {
    std::vector<StmtPtr> out;
    out.reserve(stmts.size() + 1);
    for (const auto& s : stmts) {
      if (s->id == edit_.target) {
        changed = true;
        place_in_block(s, out);
      } else {
        auto r = stmt(s, Slot::Block);
        if (r != s) changed = true;
        out.push_back(std::move(r));
      }
    }
    return out;
  }

  bool found() const { return found_; }
  NodeId next() const { return next_; }
  std::vector<std::pair<NodeId, NodeId>> aliases;

 private:
  void place_in_block(const StmtPtr& target, std::vector<StmtPtr>& out) {
    found_ = true;
    switch (edit_.kind) {
      case EditKind::ReplaceStmt:
        out.push_back(fresh_simple(*target));
        return;
      case EditKind::InsertStmtBefore:
        out.push_back(fresh_simple(*target, /*alias=*/false));
        out.push_back(target);
        return;
      case EditKind::WrapStmtInGuard: {
        if (!edit_.expr) throw ApplyError("guard edit without a condition");
        auto guard = std::make_shared<Stmt>();
        guard->kind = StmtKind::If;
        guard->id = next_++;
        guard->line = target->line;
        guard->end_line = target->end_line;
        guard->exprs.push_back(detail::clone_fresh(*edit_.expr, next_, target->line));
        guard->body.push_back(target);
        out.push_back(std::move(guard));
        return;
      }
      case EditKind::ReplaceExpr:
        throw ApplyError("node " + std::to_string(edit_.target) + " is a statement, not an expression");
    }
  }

  StmtPtr fresh_simple(const Stmt& target, bool alias = true) {
    if (!edit_.stmt) throw ApplyError("statement edit without a statement");
    if (edit_.stmt->is_compound()) throw ApplyError("replacement statement must be simple");
    if (edit_.kind == EditKind::ReplaceStmt && target.is_compound()) {
      throw ApplyError("cannot replace a compound statement");
    }
    auto s = detail::clone_fresh(*edit_.stmt, next_, target.line);
    if (alias) aliases.emplace_back(s->id, target.id);
    return s;
  }

  StmtPtr header_slot(const StmtPtr& s, Slot slot) {
    if (s->id != edit_.target) return stmt(s, slot);
    found_ = true;
    if (edit_.kind != EditKind::ReplaceStmt) {
      throw ApplyError("for-header statements only support replacement");
    }
    if (!edit_.stmt) throw ApplyError("statement edit without a statement");
    StmtKind k = edit_.stmt->kind;
    bool ok = k == StmtKind::Assign || k == StmtKind::IndexAssign ||
              (slot == Slot::ForInit && k == StmtKind::Let);
    if (!ok) throw ApplyError("replacement is not valid in a for header");
    return fresh_simple(*s);
  }

  StmtPtr stmt(const StmtPtr& s, Slot) {
    bool changed = false;
    std::vector<ExprPtr> exprs;
    exprs.reserve(s->exprs.size());
    for (const auto& e : s->exprs) {
      auto r = expr(e, s->line);
      if (r != e) changed = true;
      exprs.push_back(std::move(r));
    }
    StmtPtr init = s->init ? header_slot(s->init, Slot::ForInit) : nullptr;
    StmtPtr step = s->step ? header_slot(s->step, Slot::ForStep) : nullptr;
    if (init != s->init || step != s->step) changed = true;
    auto body = block(s->body, changed);
    auto orelse = block(s->orelse, changed);
    if (!changed) return s;
    auto copy = std::make_shared<Stmt>(*s);
    copy->exprs = std::move(exprs);
    copy->init = std::move(init);
    copy->step = std::move(step);
    copy->body = std::move(body);
    copy->orelse = std::move(orelse);
    return copy;
  }

  ExprPtr expr(const ExprPtr& e, int line) {
    if (e->id == edit_.target) {
      found_ = true;
      if (edit_.kind != EditKind::ReplaceExpr) {
        throw ApplyError("node " + std::to_string(edit_.target) + " is an expression, not a statement");
      }
      if (!edit_.expr) throw ApplyError("expression edit without an expression");
      return detail::clone_fresh(*edit_.expr, next_, e->line > 0 ? e->line : line);
    }
    bool changed = false;
    std::vector<ExprPtr> ops;
    ops.reserve(e->operands.size());
    for (const auto& o : e->operands) {
      auto r = expr(o, line);
      if (r != o) changed = true;
      ops.push_back(std::move(r));
    }
    if (!changed) return e;
    auto copy = std::make_shared<Expr>(*e);
    copy->operands = std::move(ops);
    return copy;
  }

  const Edit& edit_;
  NodeId next_;
  bool found_ = false;
};

}  // namespace

AppliedEdit apply_edit_detailed(const Ast& ast, const Edit& edit) {
  if (!ast) throw ApplyError("no program");
  Rewriter rw(edit, ast->next_id);
  auto prog = std::make_shared<Program>();
  prog->functions.reserve(ast->functions.size());
  for (const auto& fn : ast->functions) {
    if (rw.found()) {
      prog->functions.push_back(fn);
      continue;
    }
    bool changed = false;
    auto body = rw.block(fn->body, changed);
    if (!changed) {
      prog->functions.push_back(fn);
      continue;
    }
    auto copy = std::make_shared<Function>(*fn);
    copy->body = std::move(body);
    prog->functions.push_back(std::move(copy));
  }
  if (!rw.found()) throw ApplyError("node " + std::to_string(edit.target) + " not found");
  prog->next_id = rw.next();
  return AppliedEdit{std::move(prog), std::move(rw.aliases)};
}

Ast apply_edit(const Ast& ast, const Edit& edit) { return apply_edit_detailed(ast, edit).ast; }

std::string_view to_string(EditKind kind) {
  switch (kind) {
    case EditKind::ReplaceExpr: return "replace-expr";
    case EditKind::ReplaceStmt: return "replace-stmt";
    case EditKind::InsertStmtBefore: return "insert-stmt-before";
    case EditKind::WrapStmtInGuard: return "wrap-stmt-in-guard";
  }
  return "?";
}

}  // namespace mend::lang
