#pragma once

#include <cstddef>
#include <string>

#include "invclust/syntax_tree.hpp"

namespace invclust {

inline constexpr const char* kAnonymousId = "ID";

struct AASTString {
  std::string text;
  std::size_t node_count = 0;
};

// Replaces every variable and function identifier with "ID". Types, operators
// and literals are kept.
SyntaxTree anonymize(const SyntaxTree& tree);

// Pre-order serialisation `kind(field:value,...,child,...)`. Fields are
// id, type, op and val; scanf/printf formats are reduced to their conversion
// skeleton so that output text cannot leak identifiers.
AASTString serialize_aast(const SyntaxTree& tree);
std::string serialize_node(const Node& node);

}  // namespace invclust
