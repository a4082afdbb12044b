#pragma once

#include <string>
#include <string_view>

#include "invclust/errors.hpp"
#include "invclust/syntax_tree.hpp"

namespace invclust {

// One submission of a corpus.
struct SourceProgram {
  std::string id;
  std::string label;  // assignment; may be empty for incorrect submissions
  std::string text;
};

// Parses the supported C subset. Throws SyntaxError on malformed input and
// UnsupportedFeature on constructs outside the subset (pointers, structs,
// switch, ...).
//
// `#include` lines are skipped; every other preprocessor directive is
// rejected.
SyntaxTree parse(std::string_view text);
inline SyntaxTree parse(const SourceProgram& source) { return parse(source.text); }

// Canonical rendering: 2-space indent, one statement per line, braces on
// every control body. Accepts a whole tree or any statement/expression node.
std::string unparse(const SyntaxTree& tree);
std::string unparse(const Node& node);

// Renders just an expression node, parenthesised where precedence requires.
std::string unparse_expression(const Node& expr);

}  // namespace invclust
