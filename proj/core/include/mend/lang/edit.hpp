#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mend/lang/ast.hpp"

namespace mend::lang {

enum class EditKind { ReplaceExpr, ReplaceStmt, InsertStmtBefore, WrapStmtInGuard };

// A single-statement AST edit. Replacement fragments may carry any ids; they
// are re-numbered when applied.
struct Edit {
  EditKind kind = EditKind::ReplaceExpr;
  NodeId target = kNoNode;
  // ReplaceExpr: the new expression. WrapStmtInGuard: the guard condition.
  ExprPtr expr;
  // ReplaceStmt and InsertStmtBefore: the new statement (never compound).
  StmtPtr stmt;
};

class ApplyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AppliedEdit {
  Ast ast;
  // (new id, original id) pairs for statements that replace an original one.
  std::vector<std::pair<NodeId, NodeId>> aliases;
};

// Untouched subtrees are shared with `ast` (pointer-identical); the edited
// subtree gets fresh ids continuing from ast->next_id. Throws ApplyError.
AppliedEdit apply_edit_detailed(const Ast& ast, const Edit& edit);
Ast apply_edit(const Ast& ast, const Edit& edit);

std::string_view to_string(EditKind kind);

}  // namespace mend::lang
