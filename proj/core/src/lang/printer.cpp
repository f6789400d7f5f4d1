#include "mend/lang/printer.hpp"

#include <sstream>

namespace mend::lang {

namespace {

int precedence(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Binary:
      switch (e.binary_op) {
        case BinaryOp::Or: return 1;
        case BinaryOp::And: return 2;
        case BinaryOp::Eq:
        case BinaryOp::Ne: return 3;
        case BinaryOp::Lt:
        case BinaryOp::Le:
        case BinaryOp::Gt:
        case BinaryOp::Ge: return 4;
        case BinaryOp::Add:
        case BinaryOp::Sub: return 5;
        default: return 6;
      }
    case ExprKind::Unary: return 7;
    default: return 8;
  }
}

void quote(std::ostream& os, const std::string& s) {
  os << '"';
  for (char c : s) {
    switch (c) {
      case '\n': os << "\\n"; break;
      case '\t': os << "\\t"; break;
      case '"': os << "\\\""; break;
      case '\\': os << "\\\\"; break;
      default: os << c;
    }
  }
  os << '"';
}

void emit(std::ostream& os, const Expr& e, int min_prec);

void emit_list(std::ostream& os, const std::vector<ExprPtr>& items) {
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) os << ", ";
    emit(os, *items[i], 0);
  }
}

void emit(std::ostream& os, const Expr& e, int min_prec) {
  const int prec = precedence(e);
  const bool parens = prec < min_prec;
  if (parens) os << '(';
  switch (e.kind) {
    case ExprKind::Int: os << e.int_value; break;
    case ExprKind::Bool: os << (e.bool_value ? "true" : "false"); break;
    case ExprKind::Str: quote(os, e.text); break;
    case ExprKind::Nil: os << "nil"; break;
    case ExprKind::Var: os << e.text; break;
    case ExprKind::Array:
      os << '[';
      emit_list(os, e.operands);
      os << ']';
      break;
    case ExprKind::Call:
      os << e.text << '(';
      emit_list(os, e.operands);
      os << ')';
      break;
    case ExprKind::Len:
      os << "len(";
      emit(os, *e.operands[0], 0);
      os << ')';
      break;
    case ExprKind::Index:
      emit(os, *e.operands[0], 8);
      os << '[';
      emit(os, *e.operands[1], 0);
      os << ']';
      break;
    case ExprKind::Unary:
      os << to_string(e.unary_op);
      emit(os, *e.operands[0], 7);
      break;
    case ExprKind::Binary:
      emit(os, *e.operands[0], prec);
      os << ' ' << to_string(e.binary_op) << ' ';
      emit(os, *e.operands[1], prec + 1);
      break;
  }
  if (parens) os << ')';
}

// Simple statement text without the trailing semicolon.
void emit_simple(std::ostream& os, const Stmt& s) {
  switch (s.kind) {
    case StmtKind::Let:
      os << "let " << s.name << " = ";
      emit(os, *s.value(), 0);
      break;
    case StmtKind::Assign:
      os << s.name << " = ";
      emit(os, *s.value(), 0);
      break;
    case StmtKind::IndexAssign:
      emit(os, *s.exprs[0], 8);
      os << '[';
      emit(os, *s.exprs[1], 0);
      os << "] = ";
      emit(os, *s.exprs[2], 0);
      break;
    case StmtKind::Return:
      os << "return";
      if (!s.exprs.empty()) {
        os << ' ';
        emit(os, *s.value(), 0);
      }
      break;
    case StmtKind::Assert:
      os << "assert(";
      emit(os, *s.condition(), 0);
      os << ')';
      break;
    case StmtKind::Print:
      os << "print(";
      emit(os, *s.value(), 0);
      os << ')';
      break;
    case StmtKind::ExprStmt: emit(os, *s.value(), 0); break;
    default: break;
  }
}

void emit_header(std::ostream& os, const Stmt& s) {
  switch (s.kind) {
    case StmtKind::If:
      os << "if (";
      emit(os, *s.condition(), 0);
      os << ')';
      break;
    case StmtKind::While:
      os << "while (";
      emit(os, *s.condition(), 0);
      os << ')';
      break;
    case StmtKind::For:
      os << "for (";
      emit_simple(os, *s.init);
      os << "; ";
      emit(os, *s.condition(), 0);
      os << "; ";
      emit_simple(os, *s.step);
      os << ')';
      break;
    default: emit_simple(os, s); break;
  }
}

void indent(std::ostream& os, int depth) {
  for (int i = 0; i < depth; ++i) os << "  ";
}

void emit_block(std::ostream& os, const std::vector<StmtPtr>& body, int depth);

void emit_if_tail(std::ostream& os, const Stmt& s, int depth) {
  emit_block(os, s.body, depth + 1);
  indent(os, depth);
  os << '}';
  if (s.orelse.empty()) {
    os << '\n';
    return;
  }
  if (s.orelse.size() == 1 && s.orelse[0]->kind == StmtKind::If) {
    const Stmt& nested = *s.orelse[0];
    os << " else ";
    emit_header(os, nested);
    os << " {\n";
    emit_if_tail(os, nested, depth);
    return;
  }
  os << " else {\n";
  emit_block(os, s.orelse, depth + 1);
  indent(os, depth);
  os << "}\n";
}

void emit_stmt(std::ostream& os, const Stmt& s, int depth) {
  indent(os, depth);
  emit_header(os, s);
  if (!s.is_compound()) {
    os << ";\n";
    return;
  }
  os << " {\n";
  if (s.kind == StmtKind::If) {
    emit_if_tail(os, s, depth);
    return;
  }
  emit_block(os, s.body, depth + 1);
  indent(os, depth);
  os << "}\n";
}

void emit_block(std::ostream& os, const std::vector<StmtPtr>& body, int depth) {
  for (const auto& s : body) emit_stmt(os, *s, depth);
}

}  // namespace

std::string print_program(const Program& program) {
  std::ostringstream os;
  for (std::size_t i = 0; i < program.functions.size(); ++i) {
    const auto& fn = *program.functions[i];
    if (i) os << '\n';
    os << "fn " << fn.name << '(';
    for (std::size_t p = 0; p < fn.params.size(); ++p) {
      if (p) os << ", ";
      os << fn.params[p];
    }
    os << ") {\n";
    emit_block(os, fn.body, 1);
    os << "}\n";
  }
  return os.str();
}

std::string print_expr(const Expr& expr) {
  std::ostringstream os;
  emit(os, expr, 0);
  return os.str();
}

std::string print_stmt_header(const Stmt& stmt) {
  std::ostringstream os;
  emit_header(os, stmt);
  if (!stmt.is_compound()) os << ';';
  return os.str();
}

}  // namespace mend::lang
