#include "oracles.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace testsupport {

using invclust::Number;
using invclust::Snapshot;

namespace {

bool is_int(const Number& v) { return std::holds_alternative<std::int64_t>(v); }

Number parse_constant(const std::string& text) {
  if (text.find_first_of(".eEn") != std::string::npos) return std::stod(text);
  return static_cast<std::int64_t>(std::stoll(text));
}

bool looks_numeric(const std::string& text) {
  return !text.empty() && (std::isdigit(static_cast<unsigned char>(text[0])) || text[0] == '-');
}

// -1, 0 or 1
int compare(const Number& a, const Number& b) {
  if (is_int(a) && is_int(b)) {
    auto x = std::get<std::int64_t>(a), y = std::get<std::int64_t>(b);
    return x < y ? -1 : x > y ? 1 : 0;
  }
  double x = invclust::to_double(a), y = invclust::to_double(b);
  return x < y ? -1 : x > y ? 1 : 0;
}

bool apply_op(const std::string& op, int cmp) {
  if (op == "==") return cmp == 0;
  if (op == "!=") return cmp != 0;
  if (op == "<") return cmp < 0;
  if (op == "<=") return cmp <= 0;
  if (op == ">") return cmp > 0;
  if (op == ">=") return cmp >= 0;
  throw std::invalid_argument("bad operator " + op);
}

std::vector<std::string> words(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

bool holds_everywhere(const std::string& inv, const std::vector<Snapshot>& samples) {
  for (const auto& s : samples)
    if (!holds(inv, s)) return false;
  return true;
}

}  // namespace

bool holds(const std::string& invariant, const Snapshot& snapshot) {
  auto w = words(invariant);
  if (w.size() == 5) {  // x == y + c
    std::int64_t x = std::get<std::int64_t>(snapshot.at(w[0]));
    std::int64_t y = std::get<std::int64_t>(snapshot.at(w[2]));
    return x == y + std::stoll(w[4]);
  }
  if (w.size() != 3) throw std::invalid_argument("cannot parse invariant: " + invariant);
  const Number& lhs = snapshot.at(w[0]);
  Number rhs = looks_numeric(w[2]) ? parse_constant(w[2]) : snapshot.at(w[2]);
  return apply_op(w[1], compare(lhs, rhs));
}

std::set<std::string> all_template_instances(const std::vector<Snapshot>& samples) {
  std::set<std::string> out;
  if (samples.empty()) return out;
  std::vector<std::string> vars;
  for (const auto& [name, value] : samples.front()) {
    bool everywhere = true;
    for (const auto& s : samples) everywhere = everywhere && s.count(name);
    if (everywhere) vars.push_back(name);
  }
  auto integral = [&](const std::string& v) {
    for (const auto& s : samples)
      if (!is_int(s.at(v))) return false;
    return true;
  };
  auto try_add = [&](const std::string& inv) {
    if (holds_everywhere(inv, samples)) out.insert(inv);
  };

  for (const auto& x : vars) {
    for (const auto& s : samples) {
      std::string c = invclust::format_number(s.at(x));
      try_add(x + " == " + c);
      try_add(x + " >= " + c);
      try_add(x + " <= " + c);
    }
    for (const char* op : {" > 0", " >= 0", " < 0", " <= 0", " != 0"}) try_add(x + op);
  }
  for (const auto& x : vars)
    for (const auto& y : vars) {
      if (x == y) continue;
      if (x < y) try_add(x + " == " + y);
      try_add(x + " < " + y);
      try_add(x + " <= " + y);
      if (x < y && integral(x) && integral(y)) {
        std::int64_t c = std::get<std::int64_t>(samples[0].at(x)) - std::get<std::int64_t>(samples[0].at(y));
        if (c != 0 && std::llabs(c) <= 100) try_add(x + " == " + y + " + " + std::to_string(c));
      }
    }
  return out;
}

std::set<std::string> suppress(const std::set<std::string>& instances) {
  std::set<std::string> out = instances;
  for (const auto& inv : instances) {
    auto w = words(inv);
    if (w.size() != 3) continue;
    const std::string &x = w[0], &op = w[1], &rhs = w[2];
    if (op == "==" && looks_numeric(rhs)) {
      for (auto it = out.begin(); it != out.end();) {
        auto v = words(*it);
        bool unary = v.size() == 3 && v[0] == x && looks_numeric(v[2]) && *it != inv;
        it = unary ? out.erase(it) : std::next(it);
      }
    } else if (op == "==") {
      out.erase(x + " <= " + rhs);
      out.erase(rhs + " <= " + x);
      out.erase(x + " == " + rhs + " + 0");
    } else if (op == ">" && rhs == "0") {
      out.erase(x + " >= 0");
      out.erase(x + " != 0");
    } else if (op == "<" && rhs == "0") {
      out.erase(x + " <= 0");
      out.erase(x + " != 0");
    }
  }
  return out;
}

double exhaustive_min_sse(const std::vector<std::vector<double>>& points, std::size_t k) {
  const std::size_t n = points.size();
  const std::size_t dim = points.empty() ? 0 : points[0].size();
  std::vector<std::size_t> labels(n, 0);
  double best = std::numeric_limits<double>::infinity();
  // Restricted growth strings enumerate each set partition exactly once.
  auto evaluate = [&] {
    std::vector<std::vector<double>> sums(k, std::vector<double>(dim, 0.0));
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      ++counts[labels[i]];
      for (std::size_t d = 0; d < dim; ++d) sums[labels[i]][d] += points[i][d];
    }
    double sse = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t d = 0; d < dim; ++d) {
        double diff = points[i][d] - sums[labels[i]][d] / static_cast<double>(counts[labels[i]]);
        sse += diff * diff;
      }
    best = std::min(best, sse);
  };
  auto recurse = [&](auto&& self, std::size_t i, std::size_t used) -> void {
    if (n - i < k - used) return;
    if (i == n) {
      if (used == k) evaluate();
      return;
    }
    for (std::size_t c = 0; c <= std::min(used, k - 1); ++c) {
      labels[i] = c;
      self(self, i + 1, std::max(used, c + 1));
    }
  };
  recurse(recurse, 0, 0);
  return best;
}

double euclidean(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

std::string brute_closest(const invclust::FeatureVector& query, const std::vector<invclust::FeatureVector>& candidates) {
  std::string best;
  double best_d = std::numeric_limits<double>::infinity();
  for (const auto& c : candidates) {
    double d = euclidean(query.values, c.values);
    if (d < best_d || (d == best_d && c.program_id < best)) {
      best_d = d;
      best = c.program_id;
    }
  }
  return best;
}

}  // namespace testsupport
