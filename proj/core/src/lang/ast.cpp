#include "mend/lang/ast.hpp"

#include <algorithm>

#include "lang/ast_build.hpp"

namespace mend::lang {

const Function* Program::find_function(std::string_view name) const {
  for (const auto& fn : functions) {
    if (fn->name == name) return fn.get();
  }
  return nullptr;
}

namespace {

class Indexer {
 public:
  Indexer(std::unordered_map<NodeId, NodeLocation>& nodes,
          std::vector<std::pair<const Function*, const Stmt*>>& stmts)
      : nodes_(nodes), stmts_(stmts) {}

  void function(const Function& fn) {
    fn_ = &fn;
    NodeLocation loc;
    loc.function = &fn;
    nodes_[fn.id] = loc;
    for (const auto& s : fn.body) stmt(*s, nullptr);
  }

 private:
  void stmt(const Stmt& s, const Stmt* parent) {
    NodeLocation loc;
    loc.function = fn_;
    loc.stmt = &s;
    loc.owner = &s;
    loc.parent = parent;
    nodes_[s.id] = loc;
    stmts_.emplace_back(fn_, &s);
    // For headers belong to the loop; their parent is the loop itself.
    if (s.init) stmt(*s.init, &s);
    for (const auto& e : s.exprs) expr(*e, s, parent);
    if (s.step) stmt(*s.step, &s);
    for (const auto& b : s.body) stmt(*b, &s);
    for (const auto& b : s.orelse) stmt(*b, &s);
  }

  void expr(const Expr& e, const Stmt& owner, const Stmt* parent) {
    NodeLocation loc;
    loc.function = fn_;
    loc.expr = &e;
    loc.owner = &owner;
    loc.parent = parent;
    nodes_[e.id] = loc;
    for (const auto& o : e.operands) expr(*o, owner, parent);
  }

  std::unordered_map<NodeId, NodeLocation>& nodes_;
  std::vector<std::pair<const Function*, const Stmt*>>& stmts_;
  const Function* fn_ = nullptr;
};

template <typename T>
bool same_list(const std::vector<std::shared_ptr<const T>>& a,
               const std::vector<std::shared_ptr<const T>>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!same_structure(*a[i], *b[i])) return false;
  }
  return true;
}

bool same_opt(const StmtPtr& a, const StmtPtr& b) {
  if (!a || !b) return !a && !b;
  return same_structure(*a, *b);
}

NodeId number_expr(const Expr& e, NodeId next) {
  auto& m = const_cast<Expr&>(e);
  m.id = next++;
  for (const auto& o : e.operands) next = number_expr(*o, next);
  return next;
}

NodeId number_stmt(const Stmt& s, NodeId next) {
  auto& m = const_cast<Stmt&>(s);
  m.id = next++;
  if (s.init) next = number_stmt(*s.init, next);
  for (const auto& e : s.exprs) next = number_expr(*e, next);
  if (s.step) next = number_stmt(*s.step, next);
  for (const auto& b : s.body) next = number_stmt(*b, next);
  for (const auto& b : s.orelse) next = number_stmt(*b, next);
  return next;
}

void max_in(const Expr& e, NodeId& best) {
  best = std::max(best, e.id);
  for (const auto& o : e.operands) max_in(*o, best);
}

void max_in(const Stmt& s, NodeId& best) {
  best = std::max(best, s.id);
  if (s.init) max_in(*s.init, best);
  for (const auto& e : s.exprs) max_in(*e, best);
  if (s.step) max_in(*s.step, best);
  for (const auto& b : s.body) max_in(*b, best);
  for (const auto& b : s.orelse) max_in(*b, best);
}

}  // namespace

NodeIndex::NodeIndex(const Program& program) {
  Indexer indexer(nodes_, stmts_);
  for (const auto& fn : program.functions) indexer.function(*fn);
}

const NodeLocation* NodeIndex::find(NodeId id) const {
  auto it = nodes_.find(id);
  return it == nodes_.end() ? nullptr : &it->second;
}

const Stmt* NodeIndex::stmt(NodeId id) const {
  const auto* loc = find(id);
  return loc ? loc->stmt : nullptr;
}

const Expr* NodeIndex::expr(NodeId id) const {
  const auto* loc = find(id);
  return loc ? loc->expr : nullptr;
}

std::vector<const Stmt*> NodeIndex::statements_on_line(std::string_view function, int line) const {
  std::vector<const Stmt*> out;
  for (const auto& [fn, s] : stmts_) {
    if (fn->name == function && s->line == line) out.push_back(s);
  }
  return out;
}

std::vector<const Stmt*> NodeIndex::enclosing(NodeId id) const {
  std::vector<const Stmt*> out;
  const auto* loc = find(id);
  if (!loc) return out;
  const Stmt* parent = loc->parent;
  if (loc->stmt == nullptr && loc->owner && loc->owner->is_compound()) {
    // An expression in a header: the header statement itself governs it.
    parent = loc->owner;
  }
  while (parent) {
    out.push_back(parent);
    const auto* ploc = find(parent->id);
    parent = ploc ? ploc->parent : nullptr;
  }
  return out;
}

bool same_structure(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case ExprKind::Int: return a.int_value == b.int_value;
    case ExprKind::Bool: return a.bool_value == b.bool_value;
    case ExprKind::Str: return a.text == b.text;
    case ExprKind::Nil: return true;
    case ExprKind::Var: return a.text == b.text;
    case ExprKind::Call: return a.text == b.text && same_list(a.operands, b.operands);
    case ExprKind::Unary: return a.unary_op == b.unary_op && same_list(a.operands, b.operands);
    case ExprKind::Binary: return a.binary_op == b.binary_op && same_list(a.operands, b.operands);
    case ExprKind::Array:
    case ExprKind::Index:
    case ExprKind::Len: return same_list(a.operands, b.operands);
  }
  return false;
}

bool same_structure(const Stmt& a, const Stmt& b) {
  return a.kind == b.kind && a.name == b.name && same_list(a.exprs, b.exprs) &&
         same_list(a.body, b.body) && same_list(a.orelse, b.orelse) && same_opt(a.init, b.init) &&
         same_opt(a.step, b.step);
}

bool same_structure(const Program& a, const Program& b) {
  if (a.functions.size() != b.functions.size()) return false;
  for (std::size_t i = 0; i < a.functions.size(); ++i) {
    const auto& fa = *a.functions[i];
    const auto& fb = *b.functions[i];
    if (fa.name != fb.name || fa.params != fb.params || !same_list(fa.body, fb.body)) return false;
  }
  return true;
}

NodeId max_node_id(const Program& program) {
  NodeId best = kNoNode;
  for (const auto& fn : program.functions) {
    best = std::max(best, fn->id);
    for (const auto& s : fn->body) max_in(*s, best);
  }
  return best;
}

std::string_view to_string(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Mod: return "%";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::And: return "&&";
    case BinaryOp::Or: return "||";
  }
  return "?";
}

std::string_view to_string(UnaryOp op) { return op == UnaryOp::Neg ? "-" : "!"; }

std::string_view to_string(StmtKind kind) {
  switch (kind) {
    case StmtKind::Let: return "let";
    case StmtKind::Assign: return "assign";
    case StmtKind::IndexAssign: return "indexed-assign";
    case StmtKind::If: return "if";
    case StmtKind::While: return "while";
    case StmtKind::For: return "for";
    case StmtKind::Return: return "return";
    case StmtKind::Assert: return "assert";
    case StmtKind::Print: return "print";
    case StmtKind::ExprStmt: return "expression";
  }
  return "?";
}

bool is_relational(BinaryOp op) {
  switch (op) {
    case BinaryOp::Lt:
    case BinaryOp::Le:
    case BinaryOp::Gt:
    case BinaryOp::Ge:
    case BinaryOp::Eq:
    case BinaryOp::Ne: return true;
    default: return false;
  }
}

bool is_arithmetic(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add:
    case BinaryOp::Sub:
    case BinaryOp::Mul:
    case BinaryOp::Div:
    case BinaryOp::Mod: return true;
    default: return false;
  }
}

bool is_logical(BinaryOp op) { return op == BinaryOp::And || op == BinaryOp::Or; }

namespace detail {

NodeId assign_ids(Program& program, NodeId next) {
  for (const auto& fn : program.functions) {
    const_cast<Function&>(*fn).id = next++;
    for (const auto& s : fn->body) next = number_stmt(*s, next);
  }
  return next;
}

NodeId assign_ids(Expr& expr, NodeId next) { return number_expr(expr, next); }
NodeId assign_ids(Stmt& stmt, NodeId next) { return number_stmt(stmt, next); }

std::shared_ptr<Expr> clone_fresh(const Expr& expr, NodeId& next, int line) {
  auto copy = std::make_shared<Expr>(expr);
  copy->id = next++;
  if (line > 0) {
    copy->line = line;
    copy->column = 0;
    copy->end_column = 0;
  }
  for (auto& o : copy->operands) o = clone_fresh(*o, next, line);
  return copy;
}

std::shared_ptr<Stmt> clone_fresh(const Stmt& stmt, NodeId& next, int line) {
  auto copy = std::make_shared<Stmt>(stmt);
  copy->id = next++;
  if (line > 0) {
    copy->line = line;
    copy->end_line = line;
  }
  if (copy->init) copy->init = clone_fresh(*copy->init, next, line);
  for (auto& e : copy->exprs) e = clone_fresh(*e, next, line);
  if (copy->step) copy->step = clone_fresh(*copy->step, next, line);
  for (auto& b : copy->body) b = clone_fresh(*b, next, line);
  for (auto& b : copy->orelse) b = clone_fresh(*b, next, line);
  return copy;
}

}  // namespace detail

}  // namespace mend::lang
