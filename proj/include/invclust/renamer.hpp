#pragma once

#include <string>
#include <vector>

#include "invclust/syntax_tree.hpp"

namespace invclust {

struct RenameEntry {
  std::string original_name;
  std::vector<int> scope_path;  // child indices from the root to the declaring scope
  std::string new_name;

  bool operator==(const RenameEntry&) const = default;
};

// Entries are listed in the order their names were handed out.
struct RenameMap {
  std::vector<RenameEntry> entries;

  // First entry with the given original name, or nullptr.
  const RenameEntry* find(const std::string& original) const;
};

struct RenameResult {
  SyntaxTree tree;
  RenameMap map;
};

// Renames every variable to <type><k>: "int" for int, "float" for double and
// float, with one counter per type. Counters follow the first value-binding
// in program-text order (initializer, assignment, scanf target, ++/--,
// parameter binding); variables that are never bound come afterwards in
// declaration order. Function names are kept.
//
// Throws UnresolvedIdentifier for references (or calls) without a visible
// declaration.
RenameResult rename(const SyntaxTree& tree);

// True iff the renamed trees are structurally equal.
bool alpha_equivalent(const SyntaxTree& a, const SyntaxTree& b);

}  // namespace invclust
