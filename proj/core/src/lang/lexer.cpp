#include "lang/lexer.hpp"

#include <cctype>
#include <limits>
#include <unordered_map>

#include "mend/lang/parser.hpp"

namespace mend::lang::detail {

namespace {

const std::unordered_map<std::string_view, Tok>& keywords() {
  static const std::unordered_map<std::string_view, Tok> table = {
      {"fn", Tok::Fn},         {"let", Tok::Let},       {"if", Tok::If},
      {"else", Tok::Else},     {"while", Tok::While},   {"for", Tok::For},
      {"return", Tok::Return}, {"assert", Tok::Assert}, {"print", Tok::Print},
      {"true", Tok::True},     {"false", Tok::False},   {"nil", Tok::Nil},
      {"len", Tok::Len},
  };
  return table;
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token tok;
      tok.line = line_;
      tok.column = column_;
      if (pos_ >= src_.size()) {
        tok.kind = Tok::End;
        tok.end_column = column_;
        out.push_back(std::move(tok));
        return out;
      }
      char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        lex_word(tok);
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        lex_int(tok);
      } else if (c == '"') {
        lex_string(tok);
      } else {
        lex_punct(tok);
      }
      tok.end_column = column_;
      out.push_back(std::move(tok));
    }
  }

 private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else {
        return;
      }
    }
  }

  void lex_word(Token& tok) {
    std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      advance();
    }
    tok.text = std::string(src_.substr(start, pos_ - start));
    auto it = keywords().find(tok.text);
    tok.kind = it == keywords().end() ? Tok::Ident : it->second;
  }

  void lex_int(Token& tok) {
    std::size_t start = pos_;
    std::uint64_t value = 0;
    constexpr auto kMax = static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max());
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      value = value * 10 + static_cast<std::uint64_t>(src_[pos_] - '0');
      if (value > kMax) throw ParseError(tok.line, tok.column, "integer literal out of range");
      advance();
    }
    if (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_') {
      throw ParseError(line_, column_, "malformed number");
    }
    tok.kind = Tok::Int;
    tok.int_value = static_cast<std::int64_t>(value);
    tok.text = std::string(src_.substr(start, pos_ - start));
  }

  void lex_string(Token& tok) {
    advance();  // opening quote
    std::string value;
    for (;;) {
      if (pos_ >= src_.size() || src_[pos_] == '\n') {
        throw ParseError(tok.line, tok.column, "unterminated string literal");
      }
      char c = src_[pos_];
      if (c == '"') {
        advance();
        break;
      }
      if (c == '\\') {
        advance();
        char e = peek();
        switch (e) {
          case 'n': value.push_back('\n'); break;
          case 't': value.push_back('\t'); break;
          case '"': value.push_back('"'); break;
          case '\\': value.push_back('\\'); break;
          default: throw ParseError(line_, column_, "unknown escape sequence");
        }
        advance();
        continue;
      }
      value.push_back(c);
      advance();
    }
    tok.kind = Tok::Str;
    tok.text = std::move(value);
  }

  void lex_punct(Token& tok) {
    char c = peek();
    char n = peek(1);
    auto two = [&](Tok kind) {
      advance();
      advance();
      tok.kind = kind;
    };
    auto one = [&](Tok kind) {
      advance();
      tok.kind = kind;
    };
    switch (c) {
      case '(': one(Tok::LParen); break;
      case ')': one(Tok::RParen); break;
      case '{': one(Tok::LBrace); break;
      case '}': one(Tok::RBrace); break;
      case '[': one(Tok::LBracket); break;
      case ']': one(Tok::RBracket); break;
      case ',': one(Tok::Comma); break;
      case ';': one(Tok::Semi); break;
      case '+': one(Tok::Plus); break;
      case '-': one(Tok::Minus); break;
      case '*': one(Tok::Star); break;
      case '/': one(Tok::Slash); break;
      case '%': one(Tok::Percent); break;
      case '=': n == '=' ? two(Tok::Eq) : one(Tok::Assign); break;
      case '!': n == '=' ? two(Tok::Ne) : one(Tok::Bang); break;
      case '<': n == '=' ? two(Tok::Le) : one(Tok::Lt); break;
      case '>': n == '=' ? two(Tok::Ge) : one(Tok::Gt); break;
      case '&':
        if (n != '&') throw ParseError(line_, column_, "expected '&&'");
        two(Tok::AndAnd);
        break;
      case '|':
        if (n != '|') throw ParseError(line_, column_, "expected '||'");
        two(Tok::OrOr);
        break;
      default:
        throw ParseError(line_, column_, std::string("unexpected character '") + c + "'");
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

}  // namespace

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

std::string_view token_name(Tok kind) {
  switch (kind) {
    case Tok::End: return "end of input";
    case Tok::Ident: return "identifier";
    case Tok::Int: return "integer";
    case Tok::Str: return "string";
    case Tok::Fn: return "'fn'";
    case Tok::Let: return "'let'";
    case Tok::If: return "'if'";
    case Tok::Else: return "'else'";
    case Tok::While: return "'while'";
    case Tok::For: return "'for'";
    case Tok::Return: return "'return'";
    case Tok::Assert: return "'assert'";
    case Tok::Print: return "'print'";
    case Tok::True: return "'true'";
    case Tok::False: return "'false'";
    case Tok::Nil: return "'nil'";
    case Tok::Len: return "'len'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Comma: return "','";
    case Tok::Semi: return "';'";
    case Tok::Assign: return "'='";
    case Tok::Eq: return "'=='";
    case Tok::Ne: return "'!='";
    case Tok::Lt: return "'<'";
    case Tok::Le: return "'<='";
    case Tok::Gt: return "'>'";
    case Tok::Ge: return "'>='";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Slash: return "'/'";
    case Tok::Percent: return "'%'";
    case Tok::Bang: return "'!'";
    case Tok::AndAnd: return "'&&'";
    case Tok::OrOr: return "'||'";
  }
  return "?";
}

}  // namespace mend::lang::detail
