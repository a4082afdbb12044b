#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "invclust/anonymizer.hpp"
#include "invclust/clusterer.hpp"
#include "invclust/csubset.hpp"
#include "invclust/invariants.hpp"
#include "invclust/renamer.hpp"
#include "invclust/tracer.hpp"
#include "invclust/vectorizer.hpp"

namespace invclust {

struct Assignment {
  std::string label;
  std::vector<SourceProgram> programs;  // sorted by id
  std::vector<TestCase> tests;
};

struct Exclusion {
  std::string id;
  std::string diagnostic;  // "file:line: message" where a location is known

  bool operator==(const Exclusion&) const = default;
};

struct Corpus {
  std::map<std::string, Assignment> assignments;
  std::vector<Exclusion> excluded;  // files that did not parse
  // Synthetic corpora only: mutations applied to each program id.
  std::map<std::string, std::vector<std::string>> mutations;

  std::size_t program_count() const;
};

// Layout: root/<assignment>/<submission>.c and tests_dir/<assignment>/t<i>.{in,out}
// (tests_dir defaults to root/tests). Program ids are "<assignment>/<stem>".
// Unparsable files are recorded in `excluded`. Throws MissingTests, EmptyCorpus.
Corpus ingest(const std::filesystem::path& root, std::optional<std::filesystem::path> tests_dir = std::nullopt);

enum class Filter { CorrectOnly, All };
std::optional<Filter> parse_filter(std::string_view text);

struct PipelineOptions {
  Mode mode = Mode::AastInv;
  std::optional<std::size_t> k;  // explicit k wins over k_frac
  double k_frac = 0.1;
  std::uint64_t seed = 0;
  Filter filter = Filter::CorrectOnly;
  int n = kDefaultGramSize;
  int min_samples = kMinSamplesDefault;
  bool idf = false;
  Limits limits;
  int restarts = 1;
  unsigned threads = 0;  // 0: INVCLUST_THREADS, else hardware concurrency
};

// Everything derived from one submission.
struct ProgramArtifacts {
  std::string id;
  std::string label;
  std::string renamed_source;
  RenameMap rename_map;
  AASTString aast;
  InvariantSet invariants;
  std::vector<Verdict> verdicts;
  bool correct = false;

  ProgramDocuments documents() const;
};

// Renames, anonymises, traces and detects invariants for one program. A parse
// failure, unresolved identifier or runtime error on any test yields an
// Exclusion instead.
std::variant<ProgramArtifacts, Exclusion> process_program(const SourceProgram& program,
                                                          std::span<const TestCase> tests,
                                                          const PipelineOptions& options);

struct ProjectedPoint {
  std::string id;
  double x = 0.0;
  double y = 0.0;
};

struct Projection {
  std::vector<ProjectedPoint> points;
  bool degenerate = false;  // zero variance: every point maps to (0, 0)
};

struct PipelineArtifacts {
  PipelineOptions options;
  std::vector<ProgramArtifacts> programs;  // every non-excluded program, by id
  std::vector<Exclusion> excluded;
  Vocabulary vocab;
  std::vector<FeatureVector> vectors;    // aligned with `programs`
  std::vector<std::string> clustered;    // ids that entered k-means
  ClusterModel model;
  double purity = 0.0;
  Projection projection;
};

// rename -> trace -> detect -> vocabulary/vectors -> k-means -> representatives.
// Only correct programs are clustered under Filter::CorrectOnly; the others
// are vectorised against the frozen vocabulary. Throws EmptyCorpus when no
// program survives.
PipelineArtifacts run_pipeline(const Corpus& corpus, const PipelineOptions& options);

// out/<assignment>/<stem>.{renamed.c,aast.txt,invariants.json,vector.json},
// out/model.json, out/report.json, out/projection.csv.
void write_artifacts(const PipelineArtifacts& artifacts, const std::filesystem::path& out_dir);

// model.json contents: the cluster model plus labels, vectors and the
// settings needed to vectorise a new program against the same vocabulary.
nlohmann::json model_json(const PipelineArtifacts& artifacts);
nlohmann::json report_json(const PipelineArtifacts& artifacts);

// Top-2 principal components by power iteration from a fixed start vector.
// Throws std::invalid_argument for fewer than two vectors.
Projection project_2d(std::span<const FeatureVector> vectors);
std::string projection_csv(const Projection& projection);

// Semantically equivalent variants per assignment, produced by renaming,
// while<->for conversion, loop reversal, declaration reordering and operand
// commuting. The "sum" assignment's first two variants are the classic
// while-loop / reversed for-loop pair.
Corpus generate_synthetic_corpus(std::uint64_t seed, int assignments, int variants_per);

// Names of the built-in synthetic assignments, in generation order.
std::vector<std::string> synthetic_assignment_names();

// Writes root/<assignment>/<stem>.c, root/tests/<assignment>/t<i>.{in,out}
// and root/manifest.json (mutation tags).
void write_corpus(const Corpus& corpus, const std::filesystem::path& root);

unsigned resolve_threads(unsigned requested);

}  // namespace invclust
