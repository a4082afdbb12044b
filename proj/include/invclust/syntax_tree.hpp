#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace invclust {

enum class NodeKind {
  TranslationUnit,
  FunctionDef,
  Param,
  Decl,
  Assign,
  BinaryOp,
  UnaryOp,
  If,
  While,
  For,
  Block,
  Call,
  Return,
  Scanf,
  Printf,
  IdentifierRef,
  Literal,
  ArrayDecl,
  ArrayIndex,
};

std::string_view kind_name(NodeKind kind);

// True for the kinds that carry an `identifier`.
bool has_identifier(NodeKind kind);

// Literal payload: integer and floating constants, plus the format string of
// scanf/printf nodes.
using LiteralValue = std::variant<std::int64_t, double, std::string>;

// One syntax tree node. The position of a child encodes its grammatical role:
//
//   function_def   params..., body block              (type_name = return type)
//   decl           [initializer]
//   array_decl     size literal, [initializer elements...]
//   assign         target (identifier_ref | array_index), value   (op: = += -= ...)
//   binary_op      lhs, rhs                            (op)
//   unary_op       operand                             (op: - ! ++ --)
//   if             cond, then block, [else block]
//   while          cond, body block
//   for            init, cond, step, body block        (absent parts are empty blocks)
//   call           args...
//   return         [value]
//   scanf/printf   targets/args...                     (literal = format string)
//   array_index    identifier_ref, index
//
// `line` is diagnostic metadata and does not take part in equality.
struct Node {
  NodeKind kind = NodeKind::Block;
  std::optional<std::string> identifier;
  std::optional<std::string> type_name;
  std::optional<std::string> op;
  std::optional<LiteralValue> literal;
  std::vector<Node> children;
  int line = 0;

  bool operator==(const Node& other) const;

  std::size_t size() const;
};

struct SyntaxTree {
  Node root;

  bool operator==(const SyntaxTree& other) const { return root == other.root; }
};

// An empty block stands in for an omitted for-loop clause.
bool is_empty_clause(const Node& node);

}  // namespace invclust
