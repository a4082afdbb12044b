#include "invclust/syntax_tree.hpp"

namespace invclust {

std::string_view kind_name(NodeKind kind) {
  switch (kind) {
    case NodeKind::TranslationUnit: return "translation_unit";
    case NodeKind::FunctionDef: return "function_def";
    case NodeKind::Param: return "param";
    case NodeKind::Decl: return "decl";
    case NodeKind::Assign: return "assign";
    case NodeKind::BinaryOp: return "binary_op";
    case NodeKind::UnaryOp: return "unary_op";
    case NodeKind::If: return "if";
    case NodeKind::While: return "while";
    case NodeKind::For: return "for";
    case NodeKind::Block: return "block";
    case NodeKind::Call: return "call";
    case NodeKind::Return: return "return";
    case NodeKind::Scanf: return "scanf";
    case NodeKind::Printf: return "printf";
    case NodeKind::IdentifierRef: return "identifier_ref";
    case NodeKind::Literal: return "literal";
    case NodeKind::ArrayDecl: return "array_decl";
    case NodeKind::ArrayIndex: return "array_index";
  }
  return "?";
}

bool has_identifier(NodeKind kind) {
  switch (kind) {
    case NodeKind::Decl:
    case NodeKind::Param:
    case NodeKind::FunctionDef:
    case NodeKind::IdentifierRef:
    case NodeKind::ArrayDecl:
    case NodeKind::Call:
      return true;
    default:
      return false;
  }
}

bool Node::operator==(const Node& other) const {
  return kind == other.kind && identifier == other.identifier && type_name == other.type_name &&
         op == other.op && literal == other.literal && children == other.children;
}

std::size_t Node::size() const {
  std::size_t total = 1;
  for (const auto& child : children) total += child.size();
  return total;
}

bool is_empty_clause(const Node& node) {
  return node.kind == NodeKind::Block && node.children.empty();
}

}  // namespace invclust
