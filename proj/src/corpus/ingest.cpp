#include <algorithm>
#include <fstream>
#include <sstream>

#include "invclust/corpus.hpp"
#include "invclust/errors.hpp"

namespace invclust {

namespace fs = std::filesystem;

std::size_t Corpus::program_count() const {
  std::size_t n = 0;
  for (const auto& [label, a] : assignments) n += a.programs.size();
  return n;
}

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<fs::path> sorted_entries(const fs::path& dir, bool directories) {
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir))
    if (directories ? entry.is_directory() : entry.is_regular_file()) out.push_back(entry.path());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Corpus ingest(const fs::path& root, std::optional<fs::path> tests_dir) {
  if (!fs::is_directory(root)) throw EmptyCorpus("corpus directory not found: " + root.string());
  fs::path tests_root = tests_dir.value_or(root / "tests");
  Corpus corpus;
  for (const auto& dir : sorted_entries(root, true)) {
    std::string label = dir.filename().string();
    if (fs::exists(tests_root) && fs::equivalent(dir, tests_root)) continue;
    std::vector<fs::path> files;
    for (const auto& file : sorted_entries(dir, false))
      if (file.extension() == ".c") files.push_back(file);
    if (files.empty()) continue;
    fs::path suite = tests_root / label;
    if (!fs::is_directory(suite)) throw MissingTests(label);
    Assignment assignment;
    assignment.label = label;
    assignment.tests = load_tests(suite);
    if (assignment.tests.empty()) throw MissingTests(label);
    for (const auto& file : files) {
      SourceProgram program{label + "/" + file.stem().string(), label, slurp(file)};
      try {
        parse(program);
      } catch (const SyntaxError& e) {
        corpus.excluded.push_back({program.id, file.string() + ":" + std::to_string(e.line()) + ": " + e.message()});
        continue;
      } catch (const UnsupportedFeature& e) {
        corpus.excluded.push_back(
            {program.id, file.string() + ":" + std::to_string(e.line()) + ": unsupported construct: " + e.construct()});
        continue;
      }
      assignment.programs.push_back(std::move(program));
    }
    corpus.assignments.emplace(label, std::move(assignment));
  }
  if (corpus.assignments.empty()) throw EmptyCorpus("no assignment directories with .c files under " + root.string());
  return corpus;
}

std::optional<Filter> parse_filter(std::string_view text) {
  if (text == "correct-only") return Filter::CorrectOnly;
  if (text == "all") return Filter::All;
  return std::nullopt;
}

}  // namespace invclust
