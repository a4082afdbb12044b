#pragma once

#include <map>
#include <string>
#include <vector>

#include "invclust/tracer.hpp"

namespace invclust {

// Template families, Daikon-style. Rendered forms:
//   eq-const     "x == c"
//   lower-bound  "x >= c"      c = observed minimum
//   upper-bound  "x <= c"      c = observed maximum
//   sign         "x > 0", "x >= 0", "x < 0", "x <= 0", "x != 0"
//   var-eq       "x == y"      operands in lexicographic order
//   var-lt       "x < y"
//   var-le       "x <= y"
//   const-diff   "x == y + c"  x < y lexicographically, integers only, 0 < |c| <= 100
enum class InvariantKind { EqConst, LowerBound, UpperBound, Sign, VarEq, VarLt, VarLe, ConstDiff };

inline constexpr int kMinSamplesDefault = 2;
inline constexpr std::int64_t kConstDiffLimit = 100;

struct InvariantSet {
  // point id -> sorted, duplicate-free invariant strings
  std::map<std::string, std::vector<std::string>> by_point;

  bool operator==(const InvariantSet&) const = default;
};

// Emits every template instance that holds on all snapshots of each point
// with at least `min_samples` snapshots, minus the implied facts:
//   x == c        drops x's bounds and signs
//   x == y        drops x <= y, y <= x and the zero constant difference
//   x > 0 / x < 0 drops x >= 0 / x <= 0 and x != 0
// Only variables bound in every snapshot of a point are considered.
InvariantSet detect(const TraceLog& log, int min_samples = kMinSamplesDefault);

// Invariants of one point, from its snapshots.
std::vector<std::string> detect_point(const std::vector<Snapshot>& samples);

// Point ids in a and b related by `point_map` (a-id -> b-id) carry identical
// lists. Throws UnmappedPoint when a point of either side is not covered.
bool invariants_equal_modulo_rename(const InvariantSet& a, const InvariantSet& b,
                                    const std::map<std::string, std::string>& point_map);

// Pairs points with identical ids (ids encode kind and ordinal).
std::map<std::string, std::string> identity_point_map(const InvariantSet& a, const InvariantSet& b);

// "<point-id>\n<inv>\n<inv>\n..." in sorted point order.
std::string flatten(const InvariantSet& set);

}  // namespace invclust
