#include <charconv>
#include <cmath>

#include "invclust/csubset.hpp"

namespace invclust {
namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\0': out += "\\0"; break;
      default: out += c;
    }
  }
  return out;
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "1e999" : "-1e999";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, ptr);
  if (s.find_first_of(".en") == std::string::npos) s += ".0";
  return s;
}

int precedence(const Node& expr) {
  if (expr.kind == NodeKind::UnaryOp) return 7;
  if (expr.kind != NodeKind::BinaryOp) return 8;
  const std::string& op = *expr.op;
  if (op == "||") return 1;
  if (op == "&&") return 2;
  if (op == "==" || op == "!=") return 3;
  if (op == "<" || op == "<=" || op == ">" || op == ">=") return 4;
  if (op == "+" || op == "-") return 5;
  return 6;
}

void emit_expression(const Node& expr, std::string& out);

void emit_operand(const Node& expr, bool parens, std::string& out) {
  if (parens) out += '(';
  emit_expression(expr, out);
  if (parens) out += ')';
}

void emit_expression(const Node& expr, std::string& out) {
  switch (expr.kind) {
    case NodeKind::Literal:
      if (const auto* i = std::get_if<std::int64_t>(&*expr.literal)) {
        out += std::to_string(*i);
      } else if (const auto* d = std::get_if<double>(&*expr.literal)) {
        out += format_double(*d);
      } else {
        out += '"' + escape(std::get<std::string>(*expr.literal)) + '"';
      }
      return;
    case NodeKind::IdentifierRef:
      out += *expr.identifier;
      return;
    case NodeKind::ArrayIndex:
      emit_expression(expr.children[0], out);
      out += '[';
      emit_expression(expr.children[1], out);
      out += ']';
      return;
    case NodeKind::Call:
      out += *expr.identifier;
      out += '(';
      for (std::size_t i = 0; i < expr.children.size(); ++i) {
        if (i) out += ", ";
        emit_expression(expr.children[i], out);
      }
      out += ')';
      return;
    case NodeKind::UnaryOp: {
      const Node& operand = expr.children[0];
      out += *expr.op;
      emit_operand(operand, precedence(operand) <= 7, out);
      return;
    }
    case NodeKind::BinaryOp: {
      int prec = precedence(expr);
      emit_operand(expr.children[0], precedence(expr.children[0]) < prec, out);
      out += ' ';
      out += *expr.op;
      out += ' ';
      emit_operand(expr.children[1], precedence(expr.children[1]) <= prec, out);
      return;
    }
    default:
      out += "/*?*/";
  }
}

class Printer {
 public:
  std::string take() { return std::move(out_); }

  void unit(const Node& root) {
    for (std::size_t i = 0; i < root.children.size(); ++i) {
      if (i) out_ += '\n';
      statement(root.children[i], 0);
    }
  }

  void statement(const Node& node, int depth) {
    switch (node.kind) {
      case NodeKind::TranslationUnit:
        unit(node);
        return;
      case NodeKind::FunctionDef: {
        indent(depth);
        out_ += *node.type_name + ' ' + *node.identifier + '(';
        for (std::size_t i = 0; i + 1 < node.children.size(); ++i) {
          if (i) out_ += ", ";
          out_ += *node.children[i].type_name + ' ' + *node.children[i].identifier;
        }
        out_ += ") ";
        braced(node.children.back(), depth);
        out_ += '\n';
        return;
      }
      case NodeKind::If: {
        indent(depth);
        if_chain(node, depth);
        out_ += '\n';
        return;
      }
      case NodeKind::While:
        indent(depth);
        out_ += "while (" + expression(node.children[0]) + ") ";
        braced(node.children[1], depth);
        out_ += '\n';
        return;
      case NodeKind::For:
        indent(depth);
        out_ += "for (" + clause(node.children[0]) + "; " + clause(node.children[1]) + "; " +
                clause(node.children[2]) + ") ";
        braced(node.children[3], depth);
        out_ += '\n';
        return;
      case NodeKind::Block:
        indent(depth);
        braced(node, depth);
        out_ += '\n';
        return;
      default:
        indent(depth);
        out_ += simple(node) + ";\n";
    }
  }

 private:
  void indent(int depth) { out_.append(static_cast<std::size_t>(depth) * 2, ' '); }

  void braced(const Node& block, int depth) {
    out_ += "{\n";
    for (const auto& child : block.children) statement(child, depth + 1);
    indent(depth);
    out_ += '}';
  }

  void if_chain(const Node& node, int depth) {
    out_ += "if (" + expression(node.children[0]) + ") ";
    braced(node.children[1], depth);
    if (node.children.size() < 3) return;
    const Node& alt = node.children[2];
    if (alt.children.size() == 1 && alt.children[0].kind == NodeKind::If) {
      out_ += " else ";
      if_chain(alt.children[0], depth);
    } else {
      out_ += " else ";
      braced(alt, depth);
    }
  }

  static std::string expression(const Node& expr) {
    std::string s;
    emit_expression(expr, s);
    return s;
  }

  std::string clause(const Node& node) {
    if (is_empty_clause(node)) return "";
    if (node.kind == NodeKind::BinaryOp || node.kind == NodeKind::Literal ||
        node.kind == NodeKind::IdentifierRef || node.kind == NodeKind::Call ||
        node.kind == NodeKind::ArrayIndex || (node.kind == NodeKind::UnaryOp && (*node.op == "-" || *node.op == "!")))
      return expression(node);
    return simple(node);
  }

  static std::string simple(const Node& node) {
    switch (node.kind) {
      case NodeKind::Decl: {
        std::string s = *node.type_name + ' ' + *node.identifier;
        if (!node.children.empty()) s += " = " + expression(node.children[0]);
        return s;
      }
      case NodeKind::ArrayDecl: {
        std::string s = *node.type_name + ' ' + *node.identifier + '[' + expression(node.children[0]) + ']';
        if (node.children.size() > 1) {
          s += " = {";
          for (std::size_t i = 1; i < node.children.size(); ++i) {
            if (i > 1) s += ", ";
            s += expression(node.children[i]);
          }
          s += '}';
        }
        return s;
      }
      case NodeKind::Assign:
        return expression(node.children[0]) + ' ' + *node.op + ' ' + expression(node.children[1]);
      case NodeKind::UnaryOp:
        if (*node.op == "++" || *node.op == "--") return expression(node.children[0]) + *node.op;
        return expression(node);
      case NodeKind::Return:
        return node.children.empty() ? "return" : "return " + expression(node.children[0]);
      case NodeKind::Scanf:
      case NodeKind::Printf: {
        std::string s = node.kind == NodeKind::Scanf ? "scanf(\"" : "printf(\"";
        s += escape(std::get<std::string>(*node.literal)) + '"';
        for (const auto& arg : node.children) s += (node.kind == NodeKind::Scanf ? ", &" : ", ") + expression(arg);
        return s + ')';
      }
      case NodeKind::Param:
        return *node.type_name + ' ' + *node.identifier;
      default:
        return expression(node);
    }
  }

  std::string out_;
};

}  // namespace

std::string unparse_expression(const Node& expr) {
  std::string s;
  emit_expression(expr, s);
  return s;
}

std::string unparse(const Node& node) {
  Printer printer;
  printer.statement(node, 0);
  return printer.take();
}

std::string unparse(const SyntaxTree& tree) { return unparse(tree.root); }

}  // namespace invclust
