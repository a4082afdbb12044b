#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "invclust/corpus.hpp"
#include "invclust/errors.hpp"

namespace invclust {

namespace fs = std::filesystem;

namespace {

double uniform01(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

std::size_t pick(std::mt19937_64& gen, std::size_t n) {
  return std::min(n - 1, static_cast<std::size_t>(uniform01(gen) * static_cast<double>(n)));
}

bool coin(std::mt19937_64& gen) { return uniform01(gen) < 0.5; }

template <typename T>
void shuffle(std::vector<T>& items, std::mt19937_64& gen) {
  for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[pick(gen, i)]);
}

struct Var {
  std::string role;
  std::string type;  // "int" or "double"
  std::string init;  // empty: no initializer
};

// A counted loop over {i} from `low` to {n}; the body may be reversed.
struct Family {
  std::string name;
  std::vector<Var> vars;
  std::vector<std::string> prelude;
  std::string low;
  std::vector<std::string> body;           // canonical operand order
  std::vector<std::string> body_commuted;  // + and * operands swapped
  std::vector<std::string> epilogue;
  std::map<std::string, std::string> base_names;
  std::function<std::vector<TestCase>()> tests;
};

std::string substitute(std::string text, const std::map<std::string, std::string>& names) {
  for (const auto& [role, name] : names) {
    std::string key = "{" + role + "}";
    for (std::size_t pos; (pos = text.find(key)) != std::string::npos;) text.replace(pos, key.size(), name);
  }
  return text;
}

std::string num(std::int64_t v) { return std::to_string(v); }

std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::vector<TestCase> cases(const std::vector<std::pair<std::string, std::string>>& io) {
  std::vector<TestCase> out;
  for (const auto& [in, expected] : io) out.push_back({in, expected});
  return out;
}

std::string join(const std::vector<std::int64_t>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? " " : "") + num(xs[i]);
  return s;
}

std::vector<Family> families() {
  std::vector<Family> fams;

  fams.push_back({"sum",
                  {{"n", "int", ""}, {"acc", "int", "0"}, {"i", "int", ""}},
                  {"scanf(\"%d\", &{n});"},
                  "1",
                  {"{acc} = {acc} + {i};"},
                  {"{acc} = {i} + {acc};"},
                  {"printf(\"%d\\n\", {acc});"},
                  {{"n", "n"}, {"acc", "sum"}, {"i", "i"}},
                  [] {
                    std::vector<std::pair<std::string, std::string>> io;
                    for (std::int64_t n : {1, 2, 5, 10}) io.emplace_back(num(n) + "\n", num(n * (n + 1) / 2) + "\n");
                    return cases(io);
                  }});

  fams.push_back({"max",
                  {{"n", "int", ""}, {"best", "int", ""}, {"x", "int", ""}, {"i", "int", ""}},
                  {"scanf(\"%d\", &{n});", "scanf(\"%d\", &{best});"},
                  "2",
                  {"scanf(\"%d\", &{x});", "if ({x} > {best}) {", "  {best} = {x};", "}"},
                  {"scanf(\"%d\", &{x});", "if ({best} < {x}) {", "  {best} = {x};", "}"},
                  {"printf(\"%d\\n\", {best});"},
                  {{"n", "n"}, {"best", "max"}, {"x", "x"}, {"i", "i"}},
                  [] {
                    std::vector<std::vector<std::int64_t>> seqs = {{3, 1, 2}, {-4, -2, -9, -1}, {7, 7}, {1, 5, 3, 9, 2}};
                    std::vector<std::pair<std::string, std::string>> io;
                    for (const auto& s : seqs)
                      io.emplace_back(num(s.size()) + "\n" + join(s) + "\n", num(*std::max_element(s.begin(), s.end())) + "\n");
                    return cases(io);
                  }});

  fams.push_back({"power",
                  {{"b", "int", ""}, {"n", "int", ""}, {"acc", "int", "1"}, {"i", "int", ""}},
                  {"scanf(\"%d\", &{b});", "scanf(\"%d\", &{n});"},
                  "1",
                  {"{acc} = {acc} * {b};"},
                  {"{acc} = {b} * {acc};"},
                  {"printf(\"%d\\n\", {acc});"},
                  {{"b", "base"}, {"n", "e"}, {"acc", "result"}, {"i", "i"}},
                  [] {
                    std::vector<std::pair<std::int64_t, std::int64_t>> in = {{2, 10}, {3, 4}, {7, 2}, {-2, 5}};
                    std::vector<std::pair<std::string, std::string>> io;
                    for (auto [b, e] : in) {
                      std::int64_t r = 1;
                      for (std::int64_t i = 0; i < e; ++i) r *= b;
                      io.emplace_back(num(b) + " " + num(e) + "\n", num(r) + "\n");
                    }
                    return cases(io);
                  }});

  fams.push_back({"factorial",
                  {{"n", "int", ""}, {"acc", "int", "1"}, {"i", "int", ""}},
                  {"scanf(\"%d\", &{n});"},
                  "1",
                  {"{acc} = {acc} * {i};"},
                  {"{acc} = {i} * {acc};"},
                  {"printf(\"%d\\n\", {acc});"},
                  {{"n", "n"}, {"acc", "fact"}, {"i", "i"}},
                  [] {
                    std::vector<std::pair<std::string, std::string>> io;
                    for (std::int64_t n : {1, 3, 5, 10}) {
                      std::int64_t f = 1;
                      for (std::int64_t i = 2; i <= n; ++i) f *= i;
                      io.emplace_back(num(n) + "\n", num(f) + "\n");
                    }
                    return cases(io);
                  }});

  fams.push_back({"sum_evens",
                  {{"n", "int", ""}, {"acc", "int", "0"}, {"i", "int", ""}},
                  {"scanf(\"%d\", &{n});"},
                  "1",
                  {"if ({i} % 2 == 0) {", "  {acc} = {acc} + {i};", "}"},
                  {"if ({i} % 2 == 0) {", "  {acc} = {i} + {acc};", "}"},
                  {"printf(\"%d\\n\", {acc});"},
                  {{"n", "n"}, {"acc", "total"}, {"i", "i"}},
                  [] {
                    std::vector<std::pair<std::string, std::string>> io;
                    for (std::int64_t n : {1, 4, 7, 10}) {
                      std::int64_t s = 0;
                      for (std::int64_t i = 2; i <= n; i += 2) s += i;
                      io.emplace_back(num(n) + "\n", num(s) + "\n");
                    }
                    return cases(io);
                  }});

  fams.push_back({"count_positive",
                  {{"n", "int", ""}, {"cnt", "int", "0"}, {"x", "int", ""}, {"i", "int", ""}},
                  {"scanf(\"%d\", &{n});"},
                  "1",
                  {"scanf(\"%d\", &{x});", "if ({x} > 0) {", "  {cnt} = {cnt} + 1;", "}"},
                  {"scanf(\"%d\", &{x});", "if ({x} > 0) {", "  {cnt} = 1 + {cnt};", "}"},
                  {"printf(\"%d\\n\", {cnt});"},
                  {{"n", "n"}, {"cnt", "count"}, {"x", "x"}, {"i", "i"}},
                  [] {
                    std::vector<std::vector<std::int64_t>> seqs = {{1, -1, 2}, {-3, -2}, {0, 5, 6, -7, 8}, {4}};
                    std::vector<std::pair<std::string, std::string>> io;
                    for (const auto& s : seqs)
                      io.emplace_back(num(s.size()) + "\n" + join(s) + "\n",
                                      num(std::count_if(s.begin(), s.end(), [](std::int64_t v) { return v > 0; })) + "\n");
                    return cases(io);
                  }});

  fams.push_back({"mean",
                  {{"n", "int", ""}, {"acc", "double", "0.0"}, {"x", "double", ""}, {"i", "int", ""}},
                  {"scanf(\"%d\", &{n});"},
                  "1",
                  {"scanf(\"%lf\", &{x});", "{acc} = {acc} + {x};"},
                  {"scanf(\"%lf\", &{x});", "{acc} = {x} + {acc};"},
                  {"printf(\"%.2f\\n\", {acc} / {n});"},
                  {{"n", "n"}, {"acc", "total"}, {"x", "x"}, {"i", "i"}},
                  [] {
                    std::vector<std::vector<double>> seqs = {{1.5, 2.5}, {3.0, 4.0, 8.0}, {-1.25}, {0.5, 0.25, 0.125, 2.0}};
                    std::vector<std::pair<std::string, std::string>> io;
                    for (const auto& s : seqs) {
                      std::string in = num(static_cast<std::int64_t>(s.size())) + "\n";
                      double total = 0.0;
                      for (std::size_t i = 0; i < s.size(); ++i) {
                        char buf[32];
                        std::snprintf(buf, sizeof buf, "%g", s[i]);
                        in += (i ? " " : "") + std::string(buf);
                        total += s[i];
                      }
                      io.emplace_back(in + "\n", fixed2(total / static_cast<double>(s.size())) + "\n");
                    }
                    return cases(io);
                  }});
  return fams;
}

// Both halves of the classic pair: a while loop counting up and a for loop
// counting down over the same sum.
const char* kPairWhile =
    "#include <stdio.h>\n"
    "\n"
    "int main() {\n"
    "  int n, sum = 0, i;\n"
    "  scanf(\"%d\", &n);\n"
    "  i = 0;\n"
    "  while (i < n) {\n"
    "    i++;\n"
    "    sum = sum + i;\n"
    "  }\n"
    "  printf(\"%d\\n\", sum);\n"
    "  return 0;\n"
    "}\n";

const char* kPairFor =
    "#include <stdio.h>\n"
    "\n"
    "int main() {\n"
    "  int j, n, s = 0;\n"
    "  scanf(\"%d\", &n);\n"
    "  for (j = n; j >= 0; j--) {\n"
    "    s = j + s;\n"
    "  }\n"
    "  printf(\"%d\\n\", s);\n"
    "  return 0;\n"
    "}\n";

const std::vector<std::string> kNamePool = {
    "a",   "b",     "c",     "k",      "m",     "p",    "q",    "r",     "t",     "v",     "w",
    "x",   "y",     "z",     "cnt",    "idx",   "len",  "num",  "val",   "tmp",   "acc",   "res",
    "top", "total", "count", "limit",  "value", "step", "cur",  "best",  "prod",  "input", "size",
    "hi",  "lo",    "ans",   "answer", "out",   "s",    "u",    "d",     "e",     "f",     "g"};

struct Variant {
  std::string text;
  std::vector<std::string> mutations;
};

Variant make_variant(const Family& fam, std::mt19937_64& gen) {
  Variant out;
  std::map<std::string, std::string> names;
  std::vector<std::string> pool = kNamePool;
  shuffle(pool, gen);
  bool renamed = false;
  for (std::size_t r = 0; r < fam.vars.size(); ++r) {
    names[fam.vars[r].role] = pool[r];
    renamed = renamed || pool[r] != fam.base_names.at(fam.vars[r].role);
  }
  bool use_for = coin(gen);
  bool reverse = coin(gen);
  bool commute = coin(gen);
  bool combined = coin(gen);
  std::vector<std::size_t> order(fam.vars.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  shuffle(order, gen);
  bool reordered = !std::is_sorted(order.begin(), order.end());

  if (renamed) out.mutations.push_back("rename");
  if (use_for) out.mutations.push_back("while-for");
  if (reverse) out.mutations.push_back("reverse");
  if (reordered) out.mutations.push_back("reorder-decls");
  if (commute) out.mutations.push_back("commute");

  std::vector<std::string> lines;
  // Declarations: one line per type when combined, otherwise one per variable.
  if (combined) {
    for (const char* type : {"int", "double"}) {
      std::string decl;
      for (std::size_t idx : order) {
        const Var& v = fam.vars[idx];
        if (v.type != type) continue;
        decl += (decl.empty() ? std::string(type) + " " : std::string(", ")) + "{" + v.role + "}";
        if (!v.init.empty()) decl += " = " + v.init;
      }
      if (!decl.empty()) lines.push_back(decl + ";");
    }
  } else {
    for (std::size_t idx : order) {
      const Var& v = fam.vars[idx];
      lines.push_back(v.type + " {" + v.role + "}" + (v.init.empty() ? "" : " = " + v.init) + ";");
    }
  }
  for (const auto& s : fam.prelude) lines.push_back(s);

  const auto& body = commute ? fam.body_commuted : fam.body;
  std::string start = reverse ? "{n}" : fam.low;
  std::string cond = reverse ? "{i} >= " + fam.low : "{i} <= {n}";
  std::string step = reverse ? "{i}--;" : "{i}++;";
  if (use_for) {
    lines.push_back("for ({i} = " + start + "; " + cond + "; " + step.substr(0, step.size() - 1) + ") {");
    for (const auto& s : body) lines.push_back("  " + s);
    lines.push_back("}");
  } else {
    lines.push_back("{i} = " + start + ";");
    lines.push_back("while (" + cond + ") {");
    for (const auto& s : body) lines.push_back("  " + s);
    lines.push_back("  " + step);
    lines.push_back("}");
  }
  for (const auto& s : fam.epilogue) lines.push_back(s);
  lines.push_back("return 0;");

  std::string text = "#include <stdio.h>\n\nint main() {\n";
  for (const auto& line : lines) text += "  " + substitute(line, names) + "\n";
  text += "}\n";
  out.text = std::move(text);
  return out;
}

std::string stem(int v) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "v%02d", v);
  return buf;
}

}  // namespace

std::vector<std::string> synthetic_assignment_names() {
  std::vector<std::string> names;
  for (const auto& f : families()) names.push_back(f.name);
  return names;
}

Corpus generate_synthetic_corpus(std::uint64_t seed, int assignments, int variants_per) {
  auto fams = families();
  if (assignments < 1 || assignments > static_cast<int>(fams.size()))
    throw std::invalid_argument("assignments must be between 1 and " + std::to_string(fams.size()));
  if (variants_per < 1) throw std::invalid_argument("variants_per must be at least 1");
  std::mt19937_64 gen(seed);
  Corpus corpus;
  for (int a = 0; a < assignments; ++a) {
    const Family& fam = fams[a];
    Assignment assignment;
    assignment.label = fam.name;
    assignment.tests = fam.tests();
    for (int v = 0; v < variants_per; ++v) {
      std::string id = fam.name + "/" + stem(v);
      Variant variant;
      if (fam.name == "sum" && v == 0) {
        variant = {kPairWhile, {}};
      } else if (fam.name == "sum" && v == 1) {
        variant = {kPairFor, {"rename", "while-for", "reverse", "reorder-decls", "commute"}};
      } else {
        variant = make_variant(fam, gen);
      }
      assignment.programs.push_back({id, fam.name, std::move(variant.text)});
      corpus.mutations[id] = std::move(variant.mutations);
    }
    corpus.assignments.emplace(fam.name, std::move(assignment));
  }
  return corpus;
}

void write_corpus(const Corpus& corpus, const fs::path& root) {
  auto write = [](const fs::path& path, const std::string& text) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path.string());
    out << text;
  };
  nlohmann::json manifest;
  manifest["programs"] = nlohmann::json::object();
  for (const auto& [label, assignment] : corpus.assignments) {
    for (const auto& program : assignment.programs) {
      write(root / fs::path(program.id + ".c"), program.text);
      auto it = corpus.mutations.find(program.id);
      manifest["programs"][program.id] = {
          {"label", label},
          {"mutations", it == corpus.mutations.end() ? std::vector<std::string>{} : it->second}};
    }
    for (std::size_t t = 0; t < assignment.tests.size(); ++t) {
      fs::path dir = root / "tests" / label;
      write(dir / ("t" + std::to_string(t + 1) + ".in"), assignment.tests[t].stdin_text);
      write(dir / ("t" + std::to_string(t + 1) + ".out"), assignment.tests[t].expected_stdout);
    }
  }
  write(root / "manifest.json", manifest.dump(2) + "\n");
}

}  // namespace invclust
