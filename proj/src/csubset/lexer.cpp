#include "lexer.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <unordered_set>

#include "invclust/errors.hpp"

namespace invclust::csubset {
namespace {

const std::unordered_set<std::string_view>& keywords() {
  static const std::unordered_set<std::string_view> set = {
      "int",   "double", "float",  "void",     "if",       "else",    "while",  "for",
      "return", "struct", "union", "enum",     "switch",   "case",    "default", "do",
      "goto",  "break",  "continue", "typedef", "char",    "long",    "short",  "unsigned",
      "signed", "const", "static", "extern",   "sizeof",   "volatile", "register", "auto"};
  return set;
}

// Longest first so that maximal munch works with a linear scan.
constexpr std::array<std::string_view, 48> kPuncts = {
    "<<=", ">>=", "...", "->", "++", "--", "<<", ">>", "<=", ">=", "==", "!=",
    "&&",  "||",  "+=",  "-=", "*=", "/=", "%=", "&=", "|=", "^=", "+",  "-",
    "*",   "/",   "%",   "<",  ">",  "=",  "!",  "&",  "|",  "^",  "~",  "?",
    ":",   ";",   ",",   ".",  "(",  ")",  "[",  "]",  "{",  "}",  "#",  "\\"};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_trivia();
      if (at_end()) break;
      out.push_back(next());
    }
    Token end;
    end.kind = TokenKind::End;
    end.line = line_;
    end.col = col_;
    out.push_back(end);
    return out;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
      line_start_ = true;
    } else if (!std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      line_start_ = false;
      ++col_;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_trivia() {
    while (!at_end()) {
      char c = peek();
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (!at_end() && peek() != '\n') advance();
      } else if (c == '/' && peek(1) == '*') {
        int line = line_, col = col_;
        advance();
        advance();
        while (!at_end() && !(peek() == '*' && peek(1) == '/')) advance();
        if (at_end()) throw SyntaxError(line, col, "unterminated comment");
        advance();
        advance();
      } else if (c == '#' && line_start_) {
        directive();
      } else {
        break;
      }
    }
  }

  void directive() {
    int line = line_;
    advance();  // '#'
    while (!at_end() && (peek() == ' ' || peek() == '\t')) advance();
    std::string name;
    while (!at_end() && std::isalpha(static_cast<unsigned char>(peek()))) {
      name += peek();
      advance();
    }
    if (name != "include") throw UnsupportedFeature("preprocessor directive #" + name, line);
    while (!at_end() && peek() != '\n') advance();
  }

  Token next() {
    Token tok;
    tok.line = line_;
    tok.col = col_;
    char c = peek();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
        tok.text += peek();
        advance();
      }
      tok.kind = keywords().count(tok.text) ? TokenKind::Keyword : TokenKind::Identifier;
      return tok;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      return number(tok);
    }
    if (c == '"') return string_literal(tok);
    if (c == '\'') throw UnsupportedFeature("character literal", line_);
    for (auto p : kPuncts) {
      if (text_.substr(pos_, p.size()) == p) {
        for (std::size_t i = 0; i < p.size(); ++i) advance();
        tok.kind = TokenKind::Punct;
        tok.text = std::string(p);
        return tok;
      }
    }
    throw SyntaxError(line_, col_, std::string("unexpected character '") + c + "'");
  }

  Token number(Token tok) {
    std::size_t start = pos_;
    bool is_float = false;
    bool hex = false;
    if (peek() == '0' && (peek(1) == 'x' || peek(1) == 'X')) {
      hex = true;
      advance();
      advance();
      while (std::isxdigit(static_cast<unsigned char>(peek()))) advance();
    } else {
      while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
      if (peek() == '.') {
        is_float = true;
        advance();
        while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
      }
      if (peek() == 'e' || peek() == 'E') {
        std::size_t save_pos = pos_;
        int save_col = col_;
        advance();
        if (peek() == '+' || peek() == '-') advance();
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
          is_float = true;
          while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
        } else {
          pos_ = save_pos;
          col_ = save_col;
        }
      }
    }
    std::string lexeme(text_.substr(start, pos_ - start));
    if (is_float && (peek() == 'f' || peek() == 'F')) advance();
    if (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
      if (peek() == 'l' || peek() == 'L' || peek() == 'u' || peek() == 'U')
        throw UnsupportedFeature("integer literal suffix", tok.line);
      throw SyntaxError(line_, col_, "malformed number '" + lexeme + "'");
    }
    tok.text = lexeme;
    if (is_float) {
      tok.kind = TokenKind::FloatLiteral;
      tok.float_value = std::strtod(lexeme.c_str(), nullptr);
      return tok;
    }
    tok.kind = TokenKind::IntLiteral;
    int base = 10;
    std::string_view digits = lexeme;
    if (hex) {
      base = 16;
      digits.remove_prefix(2);
    } else if (digits.size() > 1 && digits[0] == '0') {
      base = 8;
      digits.remove_prefix(1);
    }
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value, base);
    if (ec != std::errc() || ptr != digits.data() + digits.size())
      throw SyntaxError(tok.line, tok.col, "integer literal out of range: " + lexeme);
    tok.int_value = value;
    return tok;
  }

  Token string_literal(Token tok) {
    advance();  // opening quote
    std::string value;
    while (true) {
      if (at_end() || peek() == '\n') throw SyntaxError(tok.line, tok.col, "unterminated string literal");
      char c = peek();
      if (c == '"') {
        advance();
        break;
      }
      if (c == '\\') {
        advance();
        char e = peek();
        switch (e) {
          case 'n': value += '\n'; break;
          case 't': value += '\t'; break;
          case 'r': value += '\r'; break;
          case '\\': value += '\\'; break;
          case '"': value += '"'; break;
          case '\'': value += '\''; break;
          case '0': value += '\0'; break;
          default:
            throw SyntaxError(line_, col_, std::string("unknown escape sequence '\\") + e + "'");
        }
        advance();
        continue;
      }
      value += c;
      advance();
    }
    tok.kind = TokenKind::StringLiteral;
    tok.text = std::move(value);
    return tok;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  bool line_start_ = true;
};

}  // namespace

std::vector<Token> lex(std::string_view text) { return Lexer(text).run(); }

}  // namespace invclust::csubset
