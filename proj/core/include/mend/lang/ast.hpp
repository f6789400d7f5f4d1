#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace mend::lang {

// Node ids are assigned in pre-order at parse time. Edits hand out fresh ids
// continuing from Program::next_id.
using NodeId = std::int64_t;
inline constexpr NodeId kNoNode = -1;

enum class BinaryOp { Add, Sub, Mul, Div, Mod, Lt, Le, Gt, Ge, Eq, Ne, And, Or };
enum class UnaryOp { Neg, Not };

enum class ExprKind { Int, Bool, Str, Nil, Array, Var, Call, Index, Len, Unary, Binary };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  NodeId id = kNoNode;
  int line = 0;
  int column = 0;
  int end_column = 0;
  ExprKind kind = ExprKind::Nil;
  std::int64_t int_value = 0;
  bool bool_value = false;
  // Identifier for Var and Call, literal contents for Str.
  std::string text;
  BinaryOp binary_op = BinaryOp::Add;
  UnaryOp unary_op = UnaryOp::Neg;
  // Array: elements. Call: arguments. Index: {base, index}. Len: {arg}.
  // Unary: {operand}. Binary: {lhs, rhs}.
  std::vector<ExprPtr> operands;
};

enum class StmtKind { Let, Assign, IndexAssign, If, While, For, Return, Assert, Print, ExprStmt };

struct Stmt;
using StmtPtr = std::shared_ptr<const Stmt>;

struct Stmt {
  NodeId id = kNoNode;
  int line = 0;
  // Line of the closing brace for compound statements, `line` otherwise.
  int end_line = 0;
  StmtKind kind = StmtKind::ExprStmt;
  // Let / Assign target.
  std::string name;
  // Let, Assign, Print, ExprStmt: {value}. IndexAssign: {base, index, value}.
  // If, While, For, Assert: {condition}. Return: {} or {value}.
  std::vector<ExprPtr> exprs;
  std::vector<StmtPtr> body;
  std::vector<StmtPtr> orelse;
  // For only.
  StmtPtr init;
  StmtPtr step;

  bool is_compound() const {
    return kind == StmtKind::If || kind == StmtKind::While || kind == StmtKind::For;
  }
  const ExprPtr& condition() const { return exprs.front(); }
  const ExprPtr& value() const { return exprs.back(); }
};

struct Function {
  NodeId id = kNoNode;
  int line = 0;
  int end_line = 0;
  std::string name;
  std::vector<std::string> params;
  std::vector<StmtPtr> body;
};
using FunctionPtr = std::shared_ptr<const Function>;

struct Program {
  std::vector<FunctionPtr> functions;
  NodeId next_id = 0;

  const Function* find_function(std::string_view name) const;
};

// Immutable after construction; share freely.
using Ast = std::shared_ptr<const Program>;

// Where a node lives. Exactly one of stmt/expr is set.
struct NodeLocation {
  const Function* function = nullptr;
  const Stmt* stmt = nullptr;
  const Expr* expr = nullptr;
  // Statement owning `expr`, or the statement itself.
  const Stmt* owner = nullptr;
  // Enclosing compound statement (If/While/For) of `owner`, if any.
  const Stmt* parent = nullptr;
};

// Id -> node lookup over one Program. Holds raw pointers into the program,
// which must outlive the index.
class NodeIndex {
 public:
  explicit NodeIndex(const Program& program);

  const NodeLocation* find(NodeId id) const;
  const Stmt* stmt(NodeId id) const;
  const Expr* expr(NodeId id) const;
  // Statements whose own line (header for compound statements) is `line`.
  std::vector<const Stmt*> statements_on_line(std::string_view function, int line) const;
  // Innermost-first chain of compound statements enclosing `id`.
  std::vector<const Stmt*> enclosing(NodeId id) const;

 private:
  std::unordered_map<NodeId, NodeLocation> nodes_;
  std::vector<std::pair<const Function*, const Stmt*>> stmts_;
};

// Structural equality ignoring node ids and source positions.
bool same_structure(const Expr& a, const Expr& b);
bool same_structure(const Stmt& a, const Stmt& b);
bool same_structure(const Program& a, const Program& b);

// Largest id used anywhere in the program, or kNoNode for an empty program.
NodeId max_node_id(const Program& program);

std::string_view to_string(BinaryOp op);
std::string_view to_string(UnaryOp op);
std::string_view to_string(StmtKind kind);
bool is_relational(BinaryOp op);
bool is_arithmetic(BinaryOp op);
bool is_logical(BinaryOp op);

}  // namespace mend::lang
