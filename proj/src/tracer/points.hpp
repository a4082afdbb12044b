#pragma once

#include <unordered_map>
#include <vector>

#include "invclust/tracer.hpp"

namespace invclust {

// Program points keyed by the node that opens them: function_def nodes for
// entry/exit, body blocks for everything else.
struct PointTable {
  std::unordered_map<const Node*, ProgramPoint> entry;
  std::unordered_map<const Node*, ProgramPoint> exit;
  std::unordered_map<const Node*, ProgramPoint> blocks;
  std::vector<ProgramPoint> order;
};

PointTable build_point_table(const SyntaxTree& tree);

}  // namespace invclust
