#pragma once

#include "mend/lang/ast.hpp"

// Helpers for code that builds fresh trees. The const_casts inside are only
// valid on nodes the caller allocated itself and has not shared yet.
namespace mend::lang::detail {

// Pre-order numbering starting at `next`; returns the next unused id.
NodeId assign_ids(Program& program, NodeId next);
NodeId assign_ids(Expr& expr, NodeId next);
NodeId assign_ids(Stmt& stmt, NodeId next);

// Deep copy with fresh pre-order ids. When `line` > 0 every copied node is
// placed on that line.
std::shared_ptr<Expr> clone_fresh(const Expr& expr, NodeId& next, int line);
std::shared_ptr<Stmt> clone_fresh(const Stmt& stmt, NodeId& next, int line);

}  // namespace mend::lang::detail
