#include "mend/lang/parser.hpp"

#include <set>

#include "lang/ast_build.hpp"
#include "lang/lexer.hpp"

namespace mend::lang {

ParseError::ParseError(int line, int column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ":" + std::to_string(column) + ": " +
                         message),
      line_(line),
      column_(column),
      detail_(message) {}

namespace {

using detail::Tok;
using detail::Token;
using MutExpr = std::shared_ptr<Expr>;
using MutStmt = std::shared_ptr<Stmt>;

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  std::shared_ptr<Program> program() {
    auto prog = std::make_shared<Program>();
    std::set<std::string> names;
    while (!at(Tok::End)) {
      auto fn = function();
      if (!names.insert(fn->name).second) {
        throw ParseError(fn->line, 1, "duplicate function '" + fn->name + "'");
      }
      prog->functions.push_back(std::move(fn));
    }
    return prog;
  }

  MutExpr lone_expression() {
    auto e = expression();
    expect(Tok::End);
    return e;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  bool at(Tok k) const { return cur().kind == k; }

  const Token& take() {
    const Token& t = toks_[pos_];
    if (t.kind != Tok::End) ++pos_;
    return t;
  }

  bool accept(Tok k) {
    if (!at(k)) return false;
    take();
    return true;
  }

  const Token& expect(Tok k) {
    if (!at(k)) {
      throw ParseError(cur().line, cur().column,
                       "expected " + std::string(detail::token_name(k)) + ", found " +
                           std::string(detail::token_name(cur().kind)));
    }
    return take();
  }

  std::shared_ptr<Function> function() {
    const Token& kw = expect(Tok::Fn);
    auto fn = std::make_shared<Function>();
    fn->line = kw.line;
    fn->name = expect(Tok::Ident).text;
    expect(Tok::LParen);
    std::set<std::string> seen;
    if (!at(Tok::RParen)) {
      do {
        const Token& p = expect(Tok::Ident);
        if (!seen.insert(p.text).second) {
          throw ParseError(p.line, p.column, "duplicate parameter '" + p.text + "'");
        }
        fn->params.push_back(p.text);
      } while (accept(Tok::Comma));
    }
    expect(Tok::RParen);
    fn->end_line = block(fn->body);
    return fn;
  }

  // Returns the line of the closing brace.
  int block(std::vector<StmtPtr>& out) {
    expect(Tok::LBrace);
    while (!at(Tok::RBrace)) {
      if (at(Tok::End)) throw ParseError(cur().line, cur().column, "unterminated block");
      out.push_back(statement());
    }
    return take().line;
  }

  MutStmt make_stmt(StmtKind kind, const Token& first) {
    auto s = std::make_shared<Stmt>();
    s->kind = kind;
    s->line = first.line;
    s->end_line = first.line;
    return s;
  }

  MutStmt statement() {
    const Token& first = cur();
    switch (first.kind) {
      case Tok::Let: {
        take();
        auto s = make_stmt(StmtKind::Let, first);
        s->name = expect(Tok::Ident).text;
        expect(Tok::Assign);
        s->exprs.push_back(expression());
        expect(Tok::Semi);
        return s;
      }
      case Tok::If: return if_statement();
      case Tok::While: {
        take();
        auto s = make_stmt(StmtKind::While, first);
        expect(Tok::LParen);
        s->exprs.push_back(expression());
        expect(Tok::RParen);
        s->end_line = block(s->body);
        return s;
      }
      case Tok::For: {
        take();
        auto s = make_stmt(StmtKind::For, first);
        expect(Tok::LParen);
        s->init = for_clause(/*allow_let=*/true);
        expect(Tok::Semi);
        s->exprs.push_back(expression());
        expect(Tok::Semi);
        s->step = for_clause(/*allow_let=*/false);
        expect(Tok::RParen);
        s->end_line = block(s->body);
        return s;
      }
      case Tok::Return: {
        take();
        auto s = make_stmt(StmtKind::Return, first);
        if (!at(Tok::Semi)) s->exprs.push_back(expression());
        expect(Tok::Semi);
        return s;
      }
      case Tok::Assert:
      case Tok::Print: {
        take();
        auto s = make_stmt(first.kind == Tok::Assert ? StmtKind::Assert : StmtKind::Print, first);
        expect(Tok::LParen);
        s->exprs.push_back(expression());
        expect(Tok::RParen);
        expect(Tok::Semi);
        return s;
      }
      default: {
        auto s = simple_assignment_or_expr(first);
        expect(Tok::Semi);
        return s;
      }
    }
  }

  MutStmt simple_assignment_or_expr(const Token& first) {
    auto lhs = expression();
    if (!accept(Tok::Assign)) {
      auto s = make_stmt(StmtKind::ExprStmt, first);
      s->exprs.push_back(std::move(lhs));
      return s;
    }
    auto rhs = expression();
    if (lhs->kind == ExprKind::Var) {
      auto s = make_stmt(StmtKind::Assign, first);
      s->name = lhs->text;
      s->exprs.push_back(std::move(rhs));
      return s;
    }
    if (lhs->kind == ExprKind::Index) {
      auto s = make_stmt(StmtKind::IndexAssign, first);
      s->exprs = {lhs->operands[0], lhs->operands[1], std::move(rhs)};
      return s;
    }
    throw ParseError(first.line, first.column, "invalid assignment target");
  }

  MutStmt for_clause(bool allow_let) {
    const Token& first = cur();
    if (at(Tok::Let)) {
      if (!allow_let) throw ParseError(first.line, first.column, "'let' not allowed here");
      take();
      auto s = make_stmt(StmtKind::Let, first);
      s->name = expect(Tok::Ident).text;
      expect(Tok::Assign);
      s->exprs.push_back(expression());
      return s;
    }
    auto s = simple_assignment_or_expr(first);
    if (s->kind != StmtKind::Assign && s->kind != StmtKind::IndexAssign) {
      throw ParseError(first.line, first.column, "expected an assignment in for header");
    }
    return s;
  }

  MutStmt if_statement() {
    const Token& first = expect(Tok::If);
    auto s = make_stmt(StmtKind::If, first);
    expect(Tok::LParen);
    s->exprs.push_back(expression());
    expect(Tok::RParen);
    s->end_line = block(s->body);
    if (accept(Tok::Else)) {
      if (at(Tok::If)) {
        auto nested = if_statement();
        s->end_line = nested->end_line;
        s->orelse.push_back(std::move(nested));
      } else {
        s->end_line = block(s->orelse);
      }
    }
    return s;
  }

  MutExpr make_expr(ExprKind kind, const Token& at_tok) {
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->line = at_tok.line;
    e->column = at_tok.column;
    e->end_column = at_tok.end_column;
    return e;
  }

  MutExpr binary(BinaryOp op, MutExpr lhs, MutExpr rhs, const Token& op_tok) {
    auto e = make_expr(ExprKind::Binary, op_tok);
    e->line = lhs->line;
    e->column = lhs->column;
    e->end_column = rhs->end_column;
    e->binary_op = op;
    e->operands = {std::move(lhs), std::move(rhs)};
    return e;
  }

  MutExpr expression() { return logical_or(); }

  MutExpr logical_or() {
    auto lhs = logical_and();
    while (at(Tok::OrOr)) {
      const Token& op = take();
      lhs = binary(BinaryOp::Or, lhs, logical_and(), op);
    }
    return lhs;
  }

  MutExpr logical_and() {
    auto lhs = equality();
    while (at(Tok::AndAnd)) {
      const Token& op = take();
      lhs = binary(BinaryOp::And, lhs, equality(), op);
    }
    return lhs;
  }

  MutExpr equality() {
    auto lhs = relational();
    while (at(Tok::Eq) || at(Tok::Ne)) {
      const Token& op = take();
      lhs = binary(op.kind == Tok::Eq ? BinaryOp::Eq : BinaryOp::Ne, lhs, relational(), op);
    }
    return lhs;
  }

  MutExpr relational() {
    auto lhs = additive();
    for (;;) {
      BinaryOp op;
      switch (cur().kind) {
        case Tok::Lt: op = BinaryOp::Lt; break;
        case Tok::Le: op = BinaryOp::Le; break;
        case Tok::Gt: op = BinaryOp::Gt; break;
        case Tok::Ge: op = BinaryOp::Ge; break;
        default: return lhs;
      }
      const Token& tok = take();
      lhs = binary(op, lhs, additive(), tok);
    }
  }

  MutExpr additive() {
    auto lhs = multiplicative();
    while (at(Tok::Plus) || at(Tok::Minus)) {
      const Token& op = take();
      lhs = binary(op.kind == Tok::Plus ? BinaryOp::Add : BinaryOp::Sub, lhs, multiplicative(), op);
    }
    return lhs;
  }

  MutExpr multiplicative() {
    auto lhs = unary();
    for (;;) {
      BinaryOp op;
      switch (cur().kind) {
        case Tok::Star: op = BinaryOp::Mul; break;
        case Tok::Slash: op = BinaryOp::Div; break;
        case Tok::Percent: op = BinaryOp::Mod; break;
        default: return lhs;
      }
      const Token& tok = take();
      lhs = binary(op, lhs, unary(), tok);
    }
  }

  MutExpr unary() {
    if (at(Tok::Minus) || at(Tok::Bang)) {
      const Token& op = take();
      auto e = make_expr(ExprKind::Unary, op);
      e->unary_op = op.kind == Tok::Minus ? UnaryOp::Neg : UnaryOp::Not;
      auto operand = unary();
      e->end_column = operand->end_column;
      e->operands.push_back(std::move(operand));
      return e;
    }
    return postfix();
  }

  MutExpr postfix() {
    auto e = primary();
    while (at(Tok::LBracket)) {
      take();
      auto idx = make_expr(ExprKind::Index, cur());
      idx->line = e->line;
      idx->column = e->column;
      auto index = expression();
      idx->end_column = expect(Tok::RBracket).end_column;
      idx->operands = {std::move(e), std::move(index)};
      e = std::move(idx);
    }
    return e;
  }

  std::vector<ExprPtr> call_args() {
    std::vector<ExprPtr> args;
    expect(Tok::LParen);
    if (!at(Tok::RParen)) {
      do {
        args.push_back(expression());
      } while (accept(Tok::Comma));
    }
    return args;
  }

  MutExpr primary() {
    const Token& tok = cur();
    switch (tok.kind) {
      case Tok::Int: {
        take();
        auto e = make_expr(ExprKind::Int, tok);
        e->int_value = tok.int_value;
        return e;
      }
      case Tok::True:
      case Tok::False: {
        take();
        auto e = make_expr(ExprKind::Bool, tok);
        e->bool_value = tok.kind == Tok::True;
        return e;
      }
      case Tok::Str: {
        take();
        auto e = make_expr(ExprKind::Str, tok);
        e->text = tok.text;
        return e;
      }
      case Tok::Nil: take(); return make_expr(ExprKind::Nil, tok);
      case Tok::Len: {
        take();
        auto e = make_expr(ExprKind::Len, tok);
        expect(Tok::LParen);
        e->operands.push_back(expression());
        e->end_column = expect(Tok::RParen).end_column;
        return e;
      }
      case Tok::Ident: {
        take();
        if (at(Tok::LParen)) {
          auto e = make_expr(ExprKind::Call, tok);
          e->text = tok.text;
          e->operands = call_args();
          e->end_column = expect(Tok::RParen).end_column;
          return e;
        }
        auto e = make_expr(ExprKind::Var, tok);
        e->text = tok.text;
        return e;
      }
      case Tok::LParen: {
        take();
        auto e = expression();
        expect(Tok::RParen);
        return e;
      }
      case Tok::LBracket: {
        take();
        auto e = make_expr(ExprKind::Array, tok);
        if (!at(Tok::RBracket)) {
          do {
            e->operands.push_back(expression());
          } while (accept(Tok::Comma));
        }
        e->end_column = expect(Tok::RBracket).end_column;
        return e;
      }
      default:
        throw ParseError(tok.line, tok.column,
                         "expected an expression, found " + std::string(detail::token_name(tok.kind)));
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Ast parse(std::string_view source) {
  Parser parser(detail::tokenize(source));
  auto prog = parser.program();
  prog->next_id = detail::assign_ids(*prog, 0);
  return prog;
}

ExprPtr parse_expression(std::string_view source, NodeId first_id) {
  Parser parser(detail::tokenize(source));
  auto e = parser.lone_expression();
  detail::assign_ids(*e, first_id);
  return e;
}

}  // namespace mend::lang
