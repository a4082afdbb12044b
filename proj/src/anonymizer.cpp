#include "invclust/anonymizer.hpp"

#include <charconv>

#include "invclust/format.hpp"

namespace invclust {
namespace {

void strip(Node& node) {
  if (has_identifier(node.kind)) node.identifier = kAnonymousId;
  for (auto& child : node.children) strip(child);
}

std::string literal_text(const Node& node) {
  const LiteralValue& value = *node.literal;
  if (const auto* i = std::get_if<std::int64_t>(&value)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&value)) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, *d);
    return std::string(buf, ptr);
  }
  return format_skeleton(std::get<std::string>(value));
}

void emit(const Node& node, std::string& out) {
  out += kind_name(node.kind);
  out += '(';
  bool first = true;
  auto field = [&](const char* key, const std::string& value) {
    if (!first) out += ',';
    first = false;
    out += key;
    out += ':';
    out += value;
  };
  if (node.identifier) field("id", *node.identifier);
  if (node.type_name) field("type", *node.type_name);
  if (node.op) field("op", *node.op);
  if (node.literal) field(node.kind == NodeKind::Literal ? "val" : "fmt", literal_text(node));
  for (const auto& child : node.children) {
    if (!first) out += ',';
    first = false;
    emit(child, out);
  }
  out += ')';
}

}  // namespace

SyntaxTree anonymize(const SyntaxTree& tree) {
  SyntaxTree out = tree;
  strip(out.root);
  return out;
}

std::string serialize_node(const Node& node) {
  std::string out;
  emit(node, out);
  return out;
}

AASTString serialize_aast(const SyntaxTree& tree) {
  return {serialize_node(tree.root), tree.root.size()};
}

}  // namespace invclust
