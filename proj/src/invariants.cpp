#include "invclust/invariants.hpp"

#include <algorithm>
#include <set>

#include "invclust/errors.hpp"

namespace invclust {
namespace {

struct Column {
  std::string name;
  bool integral = true;
  std::vector<Number> values;
};

bool less(const Number& a, const Number& b) {
  if (std::holds_alternative<std::int64_t>(a) && std::holds_alternative<std::int64_t>(b))
    return std::get<std::int64_t>(a) < std::get<std::int64_t>(b);
  return to_double(a) < to_double(b);
}

bool equal(const Number& a, const Number& b) { return !less(a, b) && !less(b, a); }

int sign_of(const Number& v) {
  double d = to_double(v);
  return d > 0 ? 1 : d < 0 ? -1 : 0;
}

void unary_facts(const Column& col, std::set<std::string>& out) {
  const auto& vals = col.values;
  auto [lo_it, hi_it] = std::minmax_element(vals.begin(), vals.end(), less);
  const Number lo = *lo_it, hi = *hi_it;
  const std::string& x = col.name;
  if (equal(lo, hi)) {
    out.insert(x + " == " + format_number(lo));
    return;
  }
  out.insert(x + " >= " + format_number(lo));
  out.insert(x + " <= " + format_number(hi));
  bool positive = sign_of(lo) > 0;
  bool negative = sign_of(hi) < 0;
  bool has_zero = std::any_of(vals.begin(), vals.end(), [](const Number& v) { return sign_of(v) == 0; });
  if (positive) out.insert(x + " > 0");
  if (sign_of(lo) >= 0 && !positive) out.insert(x + " >= 0");
  if (negative) out.insert(x + " < 0");
  if (sign_of(hi) <= 0 && !negative) out.insert(x + " <= 0");
  if (!has_zero && !positive && !negative) out.insert(x + " != 0");
}

void binary_facts(const Column& a, const Column& b, std::set<std::string>& out) {
  // a.name < b.name lexicographically.
  const std::size_t n = a.values.size();
  bool eq = true, lt = true, gt = true, le = true, ge = true;
  for (std::size_t i = 0; i < n; ++i) {
    const Number& x = a.values[i];
    const Number& y = b.values[i];
    bool x_lt = less(x, y), y_lt = less(y, x);
    eq = eq && !x_lt && !y_lt;
    lt = lt && x_lt;
    gt = gt && y_lt;
    le = le && !y_lt;
    ge = ge && !x_lt;
  }
  const std::string& x = a.name;
  const std::string& y = b.name;
  if (eq) {
    out.insert(x + " == " + y);
    return;
  }
  if (lt) out.insert(x + " < " + y);
  if (gt) out.insert(y + " < " + x);
  if (le) out.insert(x + " <= " + y);
  if (ge) out.insert(y + " <= " + x);

  if (!a.integral || !b.integral) return;
  std::int64_t diff = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t d;
    if (__builtin_sub_overflow(std::get<std::int64_t>(a.values[i]), std::get<std::int64_t>(b.values[i]), &d))
      return;
    if (i == 0) {
      diff = d;
    } else if (d != diff) {
      return;
    }
  }
  if (diff != 0 && diff >= -kConstDiffLimit && diff <= kConstDiffLimit)
    out.insert(x + " == " + y + " + " + std::to_string(diff));
}

}  // namespace

std::vector<std::string> detect_point(const std::vector<Snapshot>& samples) {
  if (samples.empty()) return {};
  // Variables bound in every snapshot (std::map keeps them sorted).
  std::vector<Column> columns;
  for (const auto& [name, value] : samples.front()) {
    bool everywhere = std::all_of(samples.begin(), samples.end(),
                                  [&](const Snapshot& s) { return s.count(name) > 0; });
    if (!everywhere) continue;
    Column col;
    col.name = name;
    for (const auto& s : samples) {
      const Number& v = s.at(name);
      col.integral = col.integral && std::holds_alternative<std::int64_t>(v);
      col.values.push_back(v);
    }
    columns.push_back(std::move(col));
  }

  std::set<std::string> facts;
  for (const auto& col : columns) unary_facts(col, facts);
  for (std::size_t i = 0; i < columns.size(); ++i)
    for (std::size_t j = i + 1; j < columns.size(); ++j) binary_facts(columns[i], columns[j], facts);
  return {facts.begin(), facts.end()};
}

InvariantSet detect(const TraceLog& log, int min_samples) {
  InvariantSet set;
  for (const auto& [point, samples] : log.samples) {
    if (static_cast<int>(samples.size()) < min_samples) continue;
    set.by_point[point] = detect_point(samples);
  }
  return set;
}

bool invariants_equal_modulo_rename(const InvariantSet& a, const InvariantSet& b,
                                    const std::map<std::string, std::string>& point_map) {
  std::set<std::string> covered_b;
  for (const auto& [point, invs] : a.by_point) {
    auto it = point_map.find(point);
    if (it == point_map.end()) throw UnmappedPoint(point);
    covered_b.insert(it->second);
  }
  for (const auto& [point, invs] : b.by_point)
    if (!covered_b.count(point)) throw UnmappedPoint(point);
  for (const auto& [pa, pb] : point_map) {
    auto ia = a.by_point.find(pa);
    auto ib = b.by_point.find(pb);
    if (ia == a.by_point.end() || ib == b.by_point.end()) throw UnmappedPoint(ia == a.by_point.end() ? pa : pb);
    if (ia->second != ib->second) return false;
  }
  return true;
}

std::map<std::string, std::string> identity_point_map(const InvariantSet& a, const InvariantSet& b) {
  std::map<std::string, std::string> map;
  for (const auto& [point, invs] : a.by_point)
    if (b.by_point.count(point)) map.emplace(point, point);
  return map;
}

std::string flatten(const InvariantSet& set) {
  std::string out;
  for (const auto& [point, invs] : set.by_point) {
    out += point;
    out += '\n';
    for (const auto& inv : invs) {
      out += inv;
      out += '\n';
    }
  }
  return out;
}

}  // namespace invclust
