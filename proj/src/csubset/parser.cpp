#include <stdexcept>

#include "invclust/csubset.hpp"
#include "invclust/format.hpp"
#include "lexer.hpp"

namespace invclust {
namespace {

using csubset::Token;
using csubset::TokenKind;

bool is_type_keyword(const Token& tok) {
  return tok.kind == TokenKind::Keyword &&
         (tok.text == "int" || tok.text == "double" || tok.text == "float" || tok.text == "void");
}

// Keywords that only appear in constructs outside the subset.
std::optional<std::string> unsupported_keyword(const Token& tok) {
  if (tok.kind != TokenKind::Keyword) return std::nullopt;
  static const std::pair<std::string_view, std::string_view> table[] = {
      {"struct", "struct"},          {"union", "union"},
      {"enum", "enum"},              {"switch", "switch statement"},
      {"case", "switch statement"},  {"default", "switch statement"},
      {"do", "do-while loop"},       {"goto", "goto statement"},
      {"break", "break statement"},  {"continue", "continue statement"},
      {"typedef", "typedef"},        {"char", "type char"},
      {"long", "type long"},         {"short", "type short"},
      {"unsigned", "unsigned type"}, {"signed", "signed type qualifier"},
      {"const", "const qualifier"},  {"static", "static storage"},
      {"extern", "extern storage"},  {"sizeof", "sizeof operator"},
      {"volatile", "volatile qualifier"}, {"register", "register storage"},
      {"auto", "auto storage"}};
  for (const auto& [kw, what] : table)
    if (tok.text == kw) return std::string(what);
  return std::nullopt;
}

Node make(NodeKind kind, int line) {
  Node n;
  n.kind = kind;
  n.line = line;
  return n;
}

Node as_block(Node stmt) {
  if (stmt.kind == NodeKind::Block) return stmt;
  Node block = make(NodeKind::Block, stmt.line);
  block.children.push_back(std::move(stmt));
  return block;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  SyntaxTree translation_unit() {
    Node root = make(NodeKind::TranslationUnit, 1);
    if (cur().kind == TokenKind::End) throw SyntaxError(1, 1, "expected a function definition");
    while (cur().kind != TokenKind::End) {
      if (auto fn = external_declaration()) root.children.push_back(std::move(*fn));
    }
    return SyntaxTree{std::move(root)};
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  const Token& look(std::size_t ahead) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  Token take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const Token& tok, const std::string& message) const {
    throw SyntaxError(tok.line, tok.col, message);
  }

  std::string describe(const Token& tok) const {
    switch (tok.kind) {
      case TokenKind::End: return "end of input";
      case TokenKind::StringLiteral: return "string literal";
      default: return "'" + tok.text + "'";
    }
  }

  void expect_punct(std::string_view p) {
    if (!cur().is_punct(p)) fail(cur(), "expected '" + std::string(p) + "' but found " + describe(cur()));
    take();
  }

  bool accept_punct(std::string_view p) {
    if (cur().is_punct(p)) {
      take();
      return true;
    }
    return false;
  }

  std::string expect_identifier() {
    reject_unsupported(cur());
    if (cur().kind != TokenKind::Identifier) fail(cur(), "expected identifier but found " + describe(cur()));
    return take().text;
  }

  void reject_unsupported(const Token& tok) const {
    if (auto what = unsupported_keyword(tok)) throw UnsupportedFeature(*what, tok.line);
    if (tok.is_punct("->")) throw UnsupportedFeature("pointer member access", tok.line);
    if (tok.is_punct("?")) throw UnsupportedFeature("conditional operator", tok.line);
  }

  std::string type_specifier() {
    reject_unsupported(cur());
    if (!is_type_keyword(cur())) fail(cur(), "expected type name but found " + describe(cur()));
    std::string type = take().text;
    if (cur().is_punct("*")) throw UnsupportedFeature("pointer type", cur().line);
    return type;
  }

  // Function definitions; prototypes are consumed and dropped.
  std::optional<Node> external_declaration() {
    int line = cur().line;
    std::string type = type_specifier();
    std::string name = expect_identifier();
    if (!cur().is_punct("(")) {
      if (cur().is_punct(";") || cur().is_punct("=") || cur().is_punct(",") || cur().is_punct("["))
        throw UnsupportedFeature("global variable", line);
      fail(cur(), "expected '(' after function name");
    }
    take();
    Node fn = make(NodeKind::FunctionDef, line);
    fn.identifier = name;
    fn.type_name = type;
    if (cur().is_keyword("void") && look(1).is_punct(")")) {
      take();
    } else if (!cur().is_punct(")")) {
      do {
        Node param = make(NodeKind::Param, cur().line);
        param.type_name = type_specifier();
        if (*param.type_name == "void") fail(cur(), "parameter of type void");
        param.identifier = expect_identifier();
        if (cur().is_punct("[")) throw UnsupportedFeature("array parameter", cur().line);
        fn.children.push_back(std::move(param));
      } while (accept_punct(","));
    }
    expect_punct(")");
    if (accept_punct(";")) return std::nullopt;
    if (!cur().is_punct("{")) fail(cur(), "expected function body");
    fn.children.push_back(block());
    return fn;
  }

  Node block() {
    Node blk = make(NodeKind::Block, cur().line);
    expect_punct("{");
    while (!cur().is_punct("}")) {
      if (cur().kind == TokenKind::End) fail(cur(), "expected '}' before end of input");
      statement_into(blk.children);
    }
    take();
    return blk;
  }

  // Parses one statement, appending zero or more nodes (declarations with
  // several declarators expand to several nodes; ';' alone to none).
  void statement_into(std::vector<Node>& out) {
    const Token& tok = cur();
    reject_unsupported(tok);
    if (is_type_keyword(tok)) {
      declaration_into(out);
      expect_punct(";");
      return;
    }
    if (tok.is_punct(";")) {
      take();
      return;
    }
    out.push_back(statement());
  }

  Node statement() {
    const Token& tok = cur();
    reject_unsupported(tok);
    int line = tok.line;
    if (tok.is_punct("{")) return block();
    if (is_type_keyword(tok)) fail(tok, "declaration is not allowed here");
    if (tok.is_keyword("if")) {
      take();
      Node node = make(NodeKind::If, line);
      expect_punct("(");
      node.children.push_back(expression());
      expect_punct(")");
      node.children.push_back(body());
      if (cur().is_keyword("else")) {
        take();
        node.children.push_back(body());
      }
      return node;
    }
    if (tok.is_keyword("while")) {
      take();
      Node node = make(NodeKind::While, line);
      expect_punct("(");
      node.children.push_back(expression());
      expect_punct(")");
      node.children.push_back(body());
      return node;
    }
    if (tok.is_keyword("for")) return for_statement();
    if (tok.is_keyword("return")) {
      take();
      Node node = make(NodeKind::Return, line);
      if (!cur().is_punct(";")) node.children.push_back(expression());
      expect_punct(";");
      return node;
    }
    if (tok.is_keyword("else")) fail(tok, "'else' without matching 'if'");
    Node node = simple_statement();
    expect_punct(";");
    return node;
  }

  Node body() {
    if (is_type_keyword(cur())) fail(cur(), "declaration is not allowed as a control body");
    if (cur().is_punct(";")) {
      Node empty = make(NodeKind::Block, cur().line);
      take();
      return empty;
    }
    return as_block(statement());
  }

  Node for_statement() {
    Node node = make(NodeKind::For, cur().line);
    take();
    expect_punct("(");
    if (cur().is_punct(";")) {
      node.children.push_back(make(NodeKind::Block, cur().line));
    } else if (is_type_keyword(cur())) {
      std::vector<Node> decls;
      declaration_into(decls);
      if (decls.size() != 1) throw UnsupportedFeature("multiple declarations in for initializer", node.line);
      node.children.push_back(std::move(decls.front()));
    } else {
      node.children.push_back(simple_statement());
    }
    if (cur().is_punct(",")) throw UnsupportedFeature("comma operator", cur().line);
    expect_punct(";");
    node.children.push_back(cur().is_punct(";") ? make(NodeKind::Block, cur().line) : expression());
    expect_punct(";");
    node.children.push_back(cur().is_punct(")") ? make(NodeKind::Block, cur().line) : simple_statement());
    if (cur().is_punct(",")) throw UnsupportedFeature("comma operator", cur().line);
    expect_punct(")");
    node.children.push_back(body());
    return node;
  }

  void declaration_into(std::vector<Node>& out) {
    std::string type = type_specifier();
    if (type == "void") fail(cur(), "variable of type void");
    do {
      if (cur().is_punct("*")) throw UnsupportedFeature("pointer type", cur().line);
      int line = cur().line;
      std::string name = expect_identifier();
      if (cur().is_punct("[")) {
        take();
        Node arr = make(NodeKind::ArrayDecl, line);
        arr.identifier = name;
        arr.type_name = type;
        if (cur().kind != TokenKind::IntLiteral) {
          if (cur().is_punct("]")) throw UnsupportedFeature("array without explicit size", line);
          throw UnsupportedFeature("variable-length array", line);
        }
        Token size = take();
        if (size.int_value <= 0) fail(size, "array size must be positive");
        Node lit = make(NodeKind::Literal, size.line);
        lit.literal = LiteralValue{size.int_value};
        arr.children.push_back(std::move(lit));
        expect_punct("]");
        if (cur().is_punct("[")) throw UnsupportedFeature("multi-dimensional array", line);
        if (accept_punct("=")) {
          expect_punct("{");
          if (!cur().is_punct("}")) {
            do {
              arr.children.push_back(expression());
            } while (accept_punct(",") && !cur().is_punct("}"));
          }
          expect_punct("}");
          if (arr.children.size() - 1 > static_cast<std::size_t>(size.int_value))
            fail(size, "too many array initializers");
        }
        out.push_back(std::move(arr));
        continue;
      }
      Node decl = make(NodeKind::Decl, line);
      decl.identifier = name;
      decl.type_name = type;
      if (accept_punct("=")) {
        if (cur().is_punct("{")) throw UnsupportedFeature("brace initializer for scalar", line);
        decl.children.push_back(expression());
      }
      out.push_back(std::move(decl));
    } while (accept_punct(","));
  }

  static bool is_assign_op(const Token& tok) {
    if (tok.kind != TokenKind::Punct) return false;
    return tok.text == "=" || tok.text == "+=" || tok.text == "-=" || tok.text == "*=" ||
           tok.text == "/=" || tok.text == "%=";
  }

  // Assignment, ++/--, call, scanf or printf, without the trailing ';'.
  Node simple_statement() {
    const Token& tok = cur();
    int line = tok.line;
    reject_unsupported(tok);
    if (tok.is_punct("++") || tok.is_punct("--")) {
      Node node = make(NodeKind::UnaryOp, line);
      node.op = take().text;
      node.children.push_back(lvalue());
      return node;
    }
    if (tok.is_punct("*")) throw UnsupportedFeature("pointer dereference", line);
    if (tok.kind != TokenKind::Identifier) fail(tok, "expected statement but found " + describe(tok));
    if (look(1).is_punct("(")) {
      if (tok.text == "scanf") return scanf_call();
      if (tok.text == "printf") return printf_call();
      Node call = call_expression();
      if (!cur().is_punct(";") && !cur().is_punct(")"))
        throw UnsupportedFeature("call result used in expression statement", line);
      return call;
    }
    Node target = lvalue();
    if (cur().is_punct("++") || cur().is_punct("--")) {
      Node node = make(NodeKind::UnaryOp, line);
      node.op = take().text;
      node.children.push_back(std::move(target));
      return node;
    }
    if (is_assign_op(cur())) {
      Node node = make(NodeKind::Assign, line);
      node.op = take().text;
      node.children.push_back(std::move(target));
      node.children.push_back(expression());
      if (is_assign_op(cur())) throw UnsupportedFeature("chained assignment", line);
      return node;
    }
    if (cur().kind == TokenKind::Punct && cur().text.size() == 2 && cur().text.back() == '=' &&
        cur().text != "==" && cur().text != "!=" && cur().text != "<=" && cur().text != ">=")
      throw UnsupportedFeature("compound assignment '" + cur().text + "'", line);
    fail(cur(), "expected assignment but found " + describe(cur()));
  }

  Node lvalue() {
    int line = cur().line;
    if (cur().is_punct("*")) throw UnsupportedFeature("pointer dereference", line);
    Node ref = make(NodeKind::IdentifierRef, line);
    ref.identifier = expect_identifier();
    if (!cur().is_punct("[")) return ref;
    take();
    Node index = make(NodeKind::ArrayIndex, line);
    index.children.push_back(std::move(ref));
    index.children.push_back(expression());
    expect_punct("]");
    if (cur().is_punct("[")) throw UnsupportedFeature("multi-dimensional array", line);
    return index;
  }

  Node scanf_call() {
    Node node = make(NodeKind::Scanf, cur().line);
    take();
    expect_punct("(");
    if (cur().kind != TokenKind::StringLiteral) throw UnsupportedFeature("scanf without literal format", node.line);
    std::string format = take().text;
    std::vector<FormatPiece> pieces;
    try {
      pieces = parse_scanf_format(format);
    } catch (const std::invalid_argument& e) {
      throw UnsupportedFeature(std::string("scanf format: ") + e.what(), node.line);
    }
    node.literal = LiteralValue{format};
    while (accept_punct(",")) {
      if (!cur().is_punct("&")) throw UnsupportedFeature("scanf target without '&'", cur().line);
      take();
      node.children.push_back(lvalue());
    }
    expect_punct(")");
    if (node.children.size() != conversion_count(pieces))
      throw UnsupportedFeature("scanf format/argument count mismatch", node.line);
    return node;
  }

  Node printf_call() {
    Node node = make(NodeKind::Printf, cur().line);
    take();
    expect_punct("(");
    if (cur().kind != TokenKind::StringLiteral) throw UnsupportedFeature("printf without literal format", node.line);
    std::string format = take().text;
    while (cur().kind == TokenKind::StringLiteral) format += take().text;
    std::vector<FormatPiece> pieces;
    try {
      pieces = parse_printf_format(format);
    } catch (const std::invalid_argument& e) {
      throw UnsupportedFeature(std::string("printf format: ") + e.what(), node.line);
    }
    node.literal = LiteralValue{format};
    while (accept_punct(",")) node.children.push_back(expression());
    expect_punct(")");
    if (node.children.size() != conversion_count(pieces))
      throw UnsupportedFeature("printf format/argument count mismatch", node.line);
    return node;
  }

  Node call_expression() {
    Node call = make(NodeKind::Call, cur().line);
    call.identifier = take().text;
    if (*call.identifier == "scanf" || *call.identifier == "printf")
      throw UnsupportedFeature(*call.identifier + " inside an expression", call.line);
    expect_punct("(");
    if (!cur().is_punct(")")) {
      do {
        call.children.push_back(expression());
      } while (accept_punct(","));
    }
    expect_punct(")");
    return call;
  }

  // Precedence climbing over the binary operators of the subset.
  static int precedence(const Token& tok) {
    if (tok.kind != TokenKind::Punct) return -1;
    const std::string& t = tok.text;
    if (t == "||") return 1;
    if (t == "&&") return 2;
    if (t == "==" || t == "!=") return 3;
    if (t == "<" || t == "<=" || t == ">" || t == ">=") return 4;
    if (t == "+" || t == "-") return 5;
    if (t == "*" || t == "/" || t == "%") return 6;
    return -1;
  }

  void reject_unsupported_operator(const Token& tok) const {
    if (tok.kind != TokenKind::Punct) return;
    const std::string& t = tok.text;
    if (t == "&" || t == "|" || t == "^" || t == "<<" || t == ">>" || t == "~")
      throw UnsupportedFeature("bitwise operator '" + t + "'", tok.line);
    if (t == "?") throw UnsupportedFeature("conditional operator", tok.line);
    if (t == "=" || t == "+=" || t == "-=" || t == "*=" || t == "/=" || t == "%=" || t == "<<=" ||
        t == ">>=" || t == "&=" || t == "|=" || t == "^=")
      throw UnsupportedFeature("assignment inside an expression", tok.line);
    if (t == "++" || t == "--") throw UnsupportedFeature("increment inside an expression", tok.line);
    if (t == ",") return;  // argument separator; callers decide
    if (t == "." || t == "->") throw UnsupportedFeature("member access", tok.line);
  }

  Node expression(int min_prec = 1) {
    Node lhs = unary();
    while (true) {
      reject_unsupported_operator(cur());
      int prec = precedence(cur());
      if (prec < min_prec) break;
      Node node = make(NodeKind::BinaryOp, cur().line);
      node.op = take().text;
      Node rhs = expression(prec + 1);
      node.children.push_back(std::move(lhs));
      node.children.push_back(std::move(rhs));
      lhs = std::move(node);
    }
    return lhs;
  }

  Node unary() {
    const Token& tok = cur();
    if (tok.is_punct("-") || tok.is_punct("!")) {
      Node node = make(NodeKind::UnaryOp, tok.line);
      node.op = take().text;
      node.children.push_back(unary());
      return node;
    }
    if (tok.is_punct("+")) {
      take();
      return unary();
    }
    if (tok.is_punct("++") || tok.is_punct("--"))
      throw UnsupportedFeature("increment inside an expression", tok.line);
    if (tok.is_punct("&")) throw UnsupportedFeature("address-of outside scanf", tok.line);
    if (tok.is_punct("*")) throw UnsupportedFeature("pointer dereference", tok.line);
    if (tok.is_punct("~")) throw UnsupportedFeature("bitwise operator '~'", tok.line);
    return postfix();
  }

  Node postfix() {
    const Token& tok = cur();
    reject_unsupported(tok);
    int line = tok.line;
    Node node;
    if (tok.kind == TokenKind::IntLiteral) {
      node = make(NodeKind::Literal, line);
      node.literal = LiteralValue{take().int_value};
    } else if (tok.kind == TokenKind::FloatLiteral) {
      node = make(NodeKind::Literal, line);
      node.literal = LiteralValue{take().float_value};
    } else if (tok.kind == TokenKind::StringLiteral) {
      throw UnsupportedFeature("string literal outside printf/scanf", line);
    } else if (tok.is_punct("(")) {
      take();
      if (is_type_keyword(cur())) throw UnsupportedFeature("cast expression", line);
      node = expression();
      expect_punct(")");
    } else if (tok.kind == TokenKind::Identifier) {
      if (look(1).is_punct("(")) {
        node = call_expression();
      } else {
        node = lvalue();
      }
    } else if (tok.kind == TokenKind::Keyword) {
      fail(tok, "unexpected keyword " + describe(tok) + " in expression");
    } else {
      fail(tok, "expected expression but found " + describe(tok));
    }
    reject_unsupported_operator(cur());
    return node;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

SyntaxTree parse(std::string_view text) {
  return Parser(csubset::lex(text)).translation_unit();
}

}  // namespace invclust
