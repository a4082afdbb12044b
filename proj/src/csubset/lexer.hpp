#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace invclust::csubset {

enum class TokenKind { Identifier, Keyword, IntLiteral, FloatLiteral, StringLiteral, Punct, End };

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;  // decoded contents for string literals
  std::int64_t int_value = 0;
  double float_value = 0.0;
  int line = 1;
  int col = 1;

  bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
  bool is_punct(std::string_view t) const { return is(TokenKind::Punct, t); }
  bool is_keyword(std::string_view t) const { return is(TokenKind::Keyword, t); }
};

// Splits source text into tokens. Comments and `#include` lines are dropped;
// the final token is always End. Throws SyntaxError / UnsupportedFeature.
std::vector<Token> lex(std::string_view text);

}  // namespace invclust::csubset
