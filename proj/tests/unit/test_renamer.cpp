#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "invclust/csubset.hpp"
#include "invclust/renamer.hpp"
#include "invclust/tracer.hpp"
#include "program_gen.hpp"

using namespace invclust;

namespace {

std::map<std::string, std::string> simple_map(const RenameMap& map) {
  std::map<std::string, std::string> out;
  for (const auto& e : map.entries) out[e.original_name] = e.new_name;
  return out;
}

}  // namespace

TEST_CASE("left example mapping") {
  auto r = rename(parse(testsupport::kLeftProgram));
  CHECK(simple_map(r.map) == std::map<std::string, std::string>{{"sum", "int0"}, {"n", "int1"}, {"i", "int2"}});
}

TEST_CASE("right example mapping") {
  auto r = rename(parse(testsupport::kRightProgram));
  CHECK(simple_map(r.map) == std::map<std::string, std::string>{{"s", "int0"}, {"n", "int1"}, {"j", "int2"}});
}

TEST_CASE("double assigned first becomes float0") {
  auto r = rename(parse("int main() { double x; int k; x = 1.5; k = 2; }"));
  CHECK(simple_map(r.map) == std::map<std::string, std::string>{{"x", "float0"}, {"k", "int0"}});
  CHECK(unparse(r.tree) ==
        "int main() {\n"
        "  double float0;\n"
        "  int int0;\n"
        "  float0 = 1.5;\n"
        "  int0 = 2;\n"
        "}\n");
}

TEST_CASE("float shares the real bucket") {
  auto r = rename(parse("int main() { float a = 1; double b = 2; }"));
  CHECK(simple_map(r.map) == std::map<std::string, std::string>{{"a", "float0"}, {"b", "float1"}});
}

TEST_CASE("never-bound variables come last in declaration order") {
  auto r = rename(parse("int main() { int u; int v; int w; int a[3]; w = 1; a[0] = w; printf(\"%d\", w); }"));
  auto m = simple_map(r.map);
  CHECK(m["w"] == "int0");
  CHECK(m["a"] == "int1");
  CHECK(m["u"] == "int2");
  CHECK(m["v"] == "int3");
}

TEST_CASE("parameters bind at their declaration and counters span the unit") {
  auto r = rename(parse("int f(int p, int q) { int t = p + q; return t; }\n"
                        "int main() { int x; scanf(\"%d\", &x); printf(\"%d\", f(x, x)); }"));
  auto m = simple_map(r.map);
  CHECK(m["p"] == "int0");
  CHECK(m["q"] == "int1");
  CHECK(m["t"] == "int2");
  CHECK(m["x"] == "int3");
  CHECK(unparse(r.tree).find("int f(int int0, int int1)") != std::string::npos);
}

TEST_CASE("shadowing gets a fresh counter") {
  auto r = rename(parse("int main() { int x = 1; if (x > 0) { int x = 2; x = x + 1; } x = 3; }"));
  REQUIRE(r.map.entries.size() == 2);
  CHECK(r.map.entries[0].new_name == "int0");
  CHECK(r.map.entries[1].new_name == "int1");
  CHECK(r.map.entries[0].scope_path != r.map.entries[1].scope_path);
  CHECK(unparse(r.tree).find("int int1 = 2;") != std::string::npos);
  CHECK(unparse(r.tree).find("int1 = int1 + 1;") != std::string::npos);
  CHECK(unparse(r.tree).find("int0 = 3;") != std::string::npos);
}

TEST_CASE("initializer refers to the outer variable") {
  auto r = rename(parse("int main() { int x = 1; { int x = x + 1; printf(\"%d\", x); } }"));
  CHECK(unparse(r.tree).find("int int1 = int0 + 1;") != std::string::npos);
}

TEST_CASE("unresolved identifiers") {
  CHECK_THROWS_AS(rename(parse("int main() { x = 1; }")), UnresolvedIdentifier);
  CHECK_THROWS_AS(rename(parse("int main() { int y = g(1); }")), UnresolvedIdentifier);
  try {
    rename(parse("int main() {\n  int a = 0;\n  a = b;\n}"));
  } catch (const UnresolvedIdentifier& e) {
    CHECK(e.name() == "b");
    CHECK(e.line() == 3);
  }
}

TEST_CASE("alpha equivalence") {
  const char* p = "int main() { int x = 1; int y; y = x + 2; printf(\"%d\", y); }";
  const char* q = "int main() { int a = 1; int b; b = a + 2; printf(\"%d\", b); }";
  CHECK(alpha_equivalent(parse(p), parse(q)));
  CHECK(alpha_equivalent(parse(p), parse(p)));
  CHECK_FALSE(alpha_equivalent(parse(testsupport::kLeftProgram), parse(testsupport::kRightProgram)));
}

TEST_CASE("idempotence and alpha invariance on random programs") {
  std::mt19937_64 gen(21);
  for (int trial = 0; trial < 150; ++trial) {
    auto tmpl = testsupport::random_program(gen);
    std::string p = testsupport::instantiate(tmpl, testsupport::random_names(gen, tmpl.vars));
    std::string q = testsupport::instantiate(tmpl, testsupport::random_names(gen, tmpl.vars));
    CAPTURE(p);
    auto rp = rename(parse(p));
    auto rq = rename(parse(q));
    CHECK(rename(rp.tree).tree == rp.tree);
    CHECK(rp.tree == rq.tree);
    CHECK(unparse(rp.tree) == unparse(rq.tree));
    std::vector<std::string> np, nq;
    for (const auto& e : rp.map.entries) np.push_back(e.new_name);
    for (const auto& e : rq.map.entries) nq.push_back(e.new_name);
    CHECK(np == nq);
  }
}

TEST_CASE("renaming preserves traces modulo the map") {
  std::mt19937_64 gen(22);
  for (int trial = 0; trial < 60; ++trial) {
    auto tmpl = testsupport::random_program(gen);
    std::string p = testsupport::instantiate(tmpl, testsupport::random_names(gen, tmpl.vars));
    auto suite = testsupport::random_suite(gen, 3);
    SyntaxTree original = parse(p);
    auto renamed = rename(original);
    auto map = simple_map(renamed.map);
    SuiteRun a = run_suite(original, suite);
    SuiteRun b = run_suite(renamed.tree, suite);
    CAPTURE(p);
    CHECK(a.log.outputs == b.log.outputs);
    REQUIRE(a.log.samples.size() == b.log.samples.size());
    for (const auto& [point, samples] : a.log.samples) {
      const auto& other = b.log.samples.at(point);
      REQUIRE(samples.size() == other.size());
      for (std::size_t i = 0; i < samples.size(); ++i) {
        Snapshot translated;
        for (const auto& [name, value] : samples[i]) translated[name == "return" ? name : map.at(name)] = value;
        CHECK(translated == other[i]);
      }
    }
  }
}
