#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mend::lang::detail {

enum class Tok {
  End,
  Ident,
  Int,
  Str,
  // keywords
  Fn, Let, If, Else, While, For, Return, Assert, Print, True, False, Nil, Len,
  // punctuation
  LParen, RParen, LBrace, RBrace, LBracket, RBracket, Comma, Semi,
  Assign, Eq, Ne, Lt, Le, Gt, Ge, Plus, Minus, Star, Slash, Percent, Bang, AndAnd, OrOr,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::int64_t int_value = 0;
  int line = 1;
  int column = 1;
  int end_column = 1;
};

// Throws ParseError on bad characters, unterminated strings, or integer
// literals that overflow int64.
std::vector<Token> tokenize(std::string_view source);

std::string_view token_name(Tok kind);

}  // namespace mend::lang::detail
