#include <doctest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "invclust/csubset.hpp"
#include "invclust/invariants.hpp"
#include "invclust/renamer.hpp"
#include "oracles.hpp"
#include "program_gen.hpp"

using namespace invclust;

namespace {

Snapshot snap(std::initializer_list<std::pair<const std::string, std::int64_t>> values) {
  Snapshot s;
  for (const auto& [k, v] : values) s[k] = Number{v};
  return s;
}

TraceLog log_of(const std::string& point, std::vector<Snapshot> samples) {
  TraceLog log;
  log.kinds[point] = PointKind::LoopBody;
  log.samples[point] = std::move(samples);
  return log;
}

InvariantSet invariants_of(const std::string& src, std::initializer_list<long> ns) {
  SyntaxTree tree = rename(parse(src)).tree;
  auto suite = testsupport::sum_suite(ns);
  return detect(run_suite(tree, suite).log);
}

}  // namespace

TEST_CASE("a constant is reported alone") {
  auto invs = detect_point({snap({{"x", 7}}), snap({{"x", 7}}), snap({{"x", 7}})});
  CHECK(invs == std::vector<std::string>{"x == 7"});
}

TEST_CASE("two variables stepping together") {
  auto invs = detect_point({snap({{"x", 1}, {"y", 2}}), snap({{"x", 2}, {"y", 3}})});
  CHECK(std::count(invs.begin(), invs.end(), "x < y") == 1);
  CHECK(std::count(invs.begin(), invs.end(), "x == y + -1") == 1);
  // No suppression of the weak order by the strict one.
  CHECK(std::count(invs.begin(), invs.end(), "x <= y") == 1);
  CHECK(std::count(invs.begin(), invs.end(), "x >= 1") == 1);
  CHECK(std::count(invs.begin(), invs.end(), "y <= 3") == 1);
  CHECK(std::count(invs.begin(), invs.end(), "x > 0") == 1);
}

TEST_CASE("equal variables drop the weak order") {
  auto invs = detect_point({snap({{"a", 1}, {"b", 1}}), snap({{"a", 5}, {"b", 5}})});
  CHECK(std::count(invs.begin(), invs.end(), "a == b") == 1);
  CHECK(std::count(invs.begin(), invs.end(), "a <= b") == 0);
  CHECK(std::count(invs.begin(), invs.end(), "b <= a") == 0);
}

TEST_CASE("reals take no constant difference") {
  Snapshot a{{"x", Number{1.5}}, {"y", Number{2.5}}};
  Snapshot b{{"x", Number{3.5}}, {"y", Number{4.5}}};
  auto invs = detect_point({a, b});
  for (const auto& inv : invs) CHECK(inv.find(" + ") == std::string::npos);
  CHECK(std::count(invs.begin(), invs.end(), "x < y") == 1);
  CHECK(std::count(invs.begin(), invs.end(), "x >= 1.5") == 1);
}

TEST_CASE("points under the sample threshold are skipped") {
  CHECK(detect(log_of("p", {snap({{"x", 1}})})).by_point.empty());
  CHECK(detect(log_of("p", {snap({{"x", 1}})}), 1).by_point.at("p") == std::vector<std::string>{"x == 1"});
}

TEST_CASE("flatten") {
  InvariantSet set;
  set.by_point["main/loop1"] = {"int1 > 0"};
  CHECK(flatten(set) == testsupport::read_golden("flatten_one.txt"));
  CHECK(flatten(InvariantSet{}) == "");
}

TEST_CASE("detection ignores sample order") {
  std::mt19937_64 gen(41);
  std::vector<Snapshot> samples;
  for (int i = 0; i < 12; ++i)
    samples.push_back(snap({{"a", testsupport::uniform_int(gen, 0, 9)}, {"b", testsupport::uniform_int(gen, 5, 9)}}));
  auto reference = detect_point(samples);
  for (int trial = 0; trial < 20; ++trial) {
    std::shuffle(samples.begin(), samples.end(), gen);
    CHECK(detect_point(samples) == reference);
  }
}

TEST_CASE("equality modulo renaming") {
  auto left = invariants_of(testsupport::kLeftProgram, {1, 2, 5});
  CHECK(invariants_equal_modulo_rename(left, left, identity_point_map(left, left)));

  InvariantSet changed = left;
  changed.by_point.at("main/loop1").back() += "0";
  CHECK_FALSE(invariants_equal_modulo_rename(left, changed, identity_point_map(left, changed)));

  InvariantSet extra = left;
  extra.by_point["main/loop2"] = {"int0 > 0"};
  CHECK_THROWS_AS(invariants_equal_modulo_rename(left, extra, identity_point_map(left, extra)), UnmappedPoint);
}

TEST_CASE("a while loop and its for-loop conversion agree") {
  const char* w =
      "int main() { int n, s = 0, i; scanf(\"%d\", &n); i = 1;"
      " while (i <= n) { s = s + i; i++; } printf(\"%d\\n\", s); }";
  const char* f =
      "int main() { int total = 0, k, m; scanf(\"%d\", &m);"
      " for (k = 1; k <= m; k++) { total = total + k; } printf(\"%d\\n\", total); }";
  auto a = invariants_of(w, {1, 2, 5});
  auto b = invariants_of(f, {1, 2, 5});
  CHECK(invariants_equal_modulo_rename(a, b, identity_point_map(a, b)));
  CHECK(a == b);
}

TEST_CASE("soundness and maximality against the oracle") {
  std::mt19937_64 gen(42);
  int points_checked = 0;
  for (int trial = 0; trial < 80; ++trial) {
    auto tmpl = testsupport::random_program(gen);
    std::string src = testsupport::instantiate(tmpl, testsupport::random_names(gen, tmpl.vars));
    auto suite = testsupport::random_suite(gen, 4);
    TraceLog log = run_suite(rename(parse(src)).tree, suite).log;
    InvariantSet set = detect(log);
    CAPTURE(src);
    for (const auto& [point, invs] : set.by_point) {
      const auto& samples = log.samples.at(point);
      for (const auto& inv : invs)
        for (const auto& s : samples) CHECK(testsupport::holds(inv, s));
      auto expected = testsupport::suppress(testsupport::all_template_instances(samples));
      CHECK(std::set<std::string>(invs.begin(), invs.end()) == expected);
      ++points_checked;
    }
  }
  CHECK(points_checked > 100);
}

TEST_CASE("invariants of a union hold on each part") {
  std::mt19937_64 gen(43);
  for (int trial = 0; trial < 30; ++trial) {
    auto tmpl = testsupport::random_program(gen);
    SyntaxTree tree = rename(parse(testsupport::instantiate(tmpl, testsupport::random_names(gen, tmpl.vars)))).tree;
    auto suite = testsupport::random_suite(gen, 4);
    TraceLog first = run_suite(tree, std::span(suite).first(2)).log;
    TraceLog both = run_suite(tree, suite).log;
    for (const auto& [point, invs] : detect(both).by_point) {
      if (!first.samples.count(point)) continue;
      for (const auto& inv : invs)
        for (const auto& s : first.samples.at(point)) CHECK(testsupport::holds(inv, s));
    }
  }
}
