// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "invclust/corpus.hpp"
#include "oracles.hpp"
#include "program_gen.hpp"

using namespace invclust;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void report(int number, bool ok, const std::string& detail) {
  std::printf("criterion %d: %s  %s\n", number, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

std::map<std::string, std::string> labels_of(const Corpus& corpus) {
  std::map<std::string, std::string> out;
  for (const auto& [label, a] : corpus.assignments)
    for (const auto& p : a.programs) out[p.id] = label;
  return out;
}

void criterion1() {
  auto start = Clock::now();
  auto suite = testsupport::sum_suite({1, 2, 5});
  SyntaxTree left = parse(testsupport::kLeftProgram);
  SyntaxTree right = parse(testsupport::kRightProgram);

  bool a = serialize_aast(anonymize(left)).text != serialize_aast(anonymize(right)).text &&
           !alpha_equivalent(left, right);

  SyntaxTree rl = rename(left).tree, rr = rename(right).tree;
  InvariantSet il = detect(run_suite(rl, suite).log);
  InvariantSet ir = detect(run_suite(rr, suite).log);
  const std::vector<std::string> required{"int1 > 0", "int0 >= 0", "int2 >= 0", "int2 <= int1"};
  auto contains_required = [&](const InvariantSet& s) {
    auto it = s.by_point.find("main/loop1");
    if (it == s.by_point.end()) return false;
    for (const auto& r : required)
      if (std::find(it->second.begin(), it->second.end(), r) == it->second.end()) return false;
    return true;
  };
  bool b_required = contains_required(il) && contains_required(ir);
  bool b_identical = il.by_point.count("main/loop1") && ir.by_point.count("main/loop1") &&
                     il.by_point.at("main/loop1") == ir.by_point.at("main/loop1");

  std::vector<std::string> docs{flatten(il), flatten(ir)};
  Vocabulary vocab = build_vocab(docs, Mode::Inv);
  bool c = vectorize(docs[0], vocab).values == vectorize(docs[1], vocab).values;

  double t = seconds_since(start);
  auto word = [](bool ok) { return ok ? "pass" : "fail"; };
  report(1, a && b_required && b_identical && c && t < 1.0,
         std::string("(a) aast differ: ") + word(a) + "; (b) required four present: " + word(b_required) +
             "; (b) loop-body sets identical: " + word(b_identical) + "; (c) inv vectors identical: " + word(c) +
             "; " + fmt(t) + " s");
}

void criterion2() {
  std::vector<std::string> docs{"a a", "e i", "a e i o u", "o i"};
  Vocabulary vocab = build_vocab(docs, Mode::Syntax, 1);
  auto v = vectorize("a i a u", vocab).values;
  bool ok = vocab.segments[0].grams == std::vector<std::string>{"a", "e", "i", "o", "u"} &&
            v == std::vector<double>{0.5, 0.0, 0.25, 0.0, 0.25};
  report(2, ok, "vector exact");
}

std::vector<double> purities(const Corpus& corpus, Mode mode, std::size_t k) {
  std::vector<double> out;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    PipelineOptions options;
    options.mode = mode;
    options.k = k;
    options.seed = seed;
    out.push_back(run_pipeline(corpus, options).purity);
  }
  return out;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (double x : v) s += (s.empty() ? "" : ",") + fmt(x);
  return s;
}

void criterion3() {
  auto start = Clock::now();
  Corpus corpus = generate_synthetic_corpus(0, 3, 10);
  auto p = purities(corpus, Mode::AastInv, 3);
  long perfect = std::count(p.begin(), p.end(), 1.0);
  double t = seconds_since(start);
  report(3, perfect >= 4 && t < 30.0, "purity per seed [" + join(p) + "], " + fmt(t) + " s");
}

void criterion4() {
  auto start = Clock::now();
  Corpus corpus = generate_synthetic_corpus(0, 7, 10);
  std::size_t conversions = 0, reversals = 0;
  for (const auto& [id, tags] : corpus.mutations) {
    conversions += std::count(tags.begin(), tags.end(), "while-for");
    reversals += std::count(tags.begin(), tags.end(), "reverse");
  }
  auto both = purities(corpus, Mode::AastInv, 7);
  auto syntax = purities(corpus, Mode::Syntax, 7);
  double mb = 0, ms = 0;
  for (double x : both) mb += x / 5;
  for (double x : syntax) ms += x / 5;
  double t = seconds_since(start);
  report(4, conversions > 0 && reversals > 0 && mb >= ms && t < 60.0,
         "mean aast+inv " + fmt(mb) + " vs syntax " + fmt(ms) + ", " + fmt(t) + " s");
}

void criterion5() {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  int matched = 0;
  const int instances = 50;
  for (int trial = 0; trial < instances; ++trial) {
    std::size_t n = testsupport::uniform_int(gen, 3, 8);
    std::size_t d = testsupport::uniform_int(gen, 1, 3);
    std::size_t k = testsupport::uniform_int(gen, 1, 3);
    std::vector<FeatureVector> pts;
    std::vector<std::vector<double>> raw;
    for (std::size_t i = 0; i < n; ++i) {
      FeatureVector v{"p" + std::to_string(i), {}};
      for (std::size_t j = 0; j < d; ++j) v.values.push_back(coord(gen));
      raw.push_back(v.values);
      pts.push_back(std::move(v));
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      KMeansOptions options;
      options.seed = seed;
      best = std::min(best, kmeans(pts, k, options).sse);
    }
    if (std::fabs(best - testsupport::exhaustive_min_sse(raw, k)) <= 1e-9) ++matched;
  }
  report(5, matched == instances, std::to_string(matched) + "/" + std::to_string(instances) + " at the optimum");
}

void criterion6() {
  std::mt19937_64 gen(6);
  int agree = 0, ties = 0;
  for (int trial = 0; trial < 100; ++trial) {
    int dim = testsupport::uniform_int(gen, 1, 3);
    int count = testsupport::uniform_int(gen, 1, 12);
    auto grid_point = [&] {
      std::vector<double> v;
      for (int d = 0; d < dim; ++d) v.push_back(testsupport::uniform_int(gen, -2, 2));
      return v;
    };
    std::vector<FeatureVector> candidates;
    std::set<std::string> used;
    while (static_cast<int>(candidates.size()) < count) {
      std::string id = "c" + std::to_string(testsupport::uniform_int(gen, 0, 999));
      if (used.insert(id).second) candidates.push_back({id, grid_point()});
    }
    FeatureVector query{"q", grid_point()};
    std::string expected = testsupport::brute_closest(query, candidates);
    double best = testsupport::euclidean(query.values, candidates[0].values);
    for (const auto& c : candidates) best = std::min(best, testsupport::euclidean(query.values, c.values));
    int at_best = 0;
    for (const auto& c : candidates) at_best += testsupport::euclidean(query.values, c.values) == best;
    ties += at_best > 1;
    if (closest_program(query, candidates).id == expected) ++agree;
  }
  report(6, agree == 100, std::to_string(agree) + "/100 agree, " + std::to_string(ties) + " with ties");
}

void criterion7() {
  std::mt19937_64 gen(7);
  int sound = 0, maximal = 0, points = 0;
  for (int trial = 0; trial < 100; ++trial) {
    auto tmpl = testsupport::random_program(gen);
    std::string src = testsupport::instantiate(tmpl, testsupport::random_names(gen, tmpl.vars));
    auto suite = testsupport::random_suite(gen, testsupport::uniform_int(gen, 2, 5));
    TraceLog log = run_suite(rename(parse(src)).tree, suite).log;
    for (const auto& [point, invs] : detect(log).by_point) {
      ++points;
      const auto& samples = log.samples.at(point);
      bool ok = true;
      for (const auto& inv : invs)
        for (const auto& s : samples) ok = ok && testsupport::holds(inv, s);
      sound += ok;
      auto expected = testsupport::suppress(testsupport::all_template_instances(samples));
      std::set<std::string> got(invs.begin(), invs.end());
      maximal += std::includes(got.begin(), got.end(), expected.begin(), expected.end());
    }
  }
  report(7, sound == points && maximal == points,
         std::to_string(points) + " points: " + std::to_string(sound) + " sound, " + std::to_string(maximal) +
             " maximal");
}

std::uint64_t fnv1a(std::uint64_t h, const std::string& bytes) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t tree_hash(const fs::path& root) {
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(root))
    if (e.is_regular_file()) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& f : files) {
    std::ifstream in(f, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    h = fnv1a(h, fs::relative(f, root).generic_string());
    h = fnv1a(h, std::string(1, '\0'));
    h = fnv1a(h, ss.str());
  }
  return h;
}

void criterion8() {
  testsupport::TempDir corpus_dir("accept_corpus"), out1("accept_out1"), out2("accept_out2");
  write_corpus(generate_synthetic_corpus(0, 3, 10), corpus_dir.path);
  PipelineOptions options;
  options.threads = 1;
  write_artifacts(run_pipeline(ingest(corpus_dir.path), options), out1.path);
  options.threads = 4;
  write_artifacts(run_pipeline(ingest(corpus_dir.path), options), out2.path);
  std::uint64_t h1 = tree_hash(out1.path), h2 = tree_hash(out2.path);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h1));
  report(8, h1 == h2, std::string("output tree hash ") + buf + (h1 == h2 ? " twice" : " vs different"));
}

void criterion9() {
  std::mt19937_64 gen(9);
  int same = 0;
  for (int trial = 0; trial < 100; ++trial) {
    auto tmpl = testsupport::random_program(gen);
    auto names = testsupport::random_names(gen, tmpl.vars);
    auto permuted = names;
    do std::shuffle(permuted.begin(), permuted.end(), gen);
    while (permuted == names && names.size() > 1);
    std::string a = unparse(rename(parse(testsupport::instantiate(tmpl, names))).tree);
    std::string b = unparse(rename(parse(testsupport::instantiate(tmpl, permuted))).tree);
    std::vector<std::string> docs{a, b};
    Vocabulary vocab = build_vocab(docs, Mode::Syntax);
    if (a == b && vectorize(a, vocab) == vectorize(b, vocab)) ++same;
  }
  report(9, same == 100, std::to_string(same) + "/100 identical");
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
