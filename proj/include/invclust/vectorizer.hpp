#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace invclust {

enum class Mode { Syntax, Aast, Inv, AastInv };

std::string_view mode_name(Mode mode);                 // "syntax", "aast", "inv", "aast+inv"
std::optional<Mode> parse_mode(std::string_view text);  // also accepts "aast_inv"

inline constexpr int kDefaultGramSize = 3;

// Word-level tokens: runs of [A-Za-z0-9_] (a '.' between digits stays inside
// the number), C operators by maximal munch, any other punctuation character
// on its own.
std::vector<std::string> tokenize(std::string_view text);

// Contiguous token n-grams, tokens joined by a single space.
std::vector<std::string> ngrams(std::string_view text, int n);

// One feature family: its sorted, unique grams and optional idf weights.
struct VocabSegment {
  std::string name;  // "syntax", "aast" or "inv"
  std::vector<std::string> grams;
  std::vector<double> idf;  // empty unless built with idf weighting

  std::optional<std::size_t> index_of(const std::string& gram) const;
};

struct Vocabulary {
  Mode mode = Mode::AastInv;
  int n = kDefaultGramSize;
  std::vector<VocabSegment> segments;  // two for aast+inv, otherwise one

  std::size_t size() const;
  std::size_t offset(std::size_t segment) const;
  bool operator==(const Vocabulary& other) const;
};

// Documents of one program; only the ones the mode needs must be present.
struct ProgramDocuments {
  std::optional<std::string> renamed_source;
  std::optional<std::string> aast;
  std::optional<std::string> invariants;  // flattened InvariantSet
};

struct FeatureVector {
  std::string program_id;
  std::vector<double> values;

  bool operator==(const FeatureVector&) const = default;
};

// Vocabulary over one family of documents. Throws EmptyCorpus when every
// document has fewer than n tokens.
VocabSegment build_segment(std::span<const std::string> docs, const std::string& name, int n, bool idf);

Vocabulary build_vocab(std::span<const std::string> docs, Mode mode, int n = kDefaultGramSize, bool idf = false);

// Builds one segment per feature family the mode uses.
Vocabulary build_vocab(std::span<const ProgramDocuments> programs, Mode mode, int n = kDefaultGramSize,
                       bool idf = false);

// Counts in-vocabulary grams per segment (idf-weighted when the vocabulary
// carries weights) and L1-normalises each segment. Grams outside the
// vocabulary are dropped; a segment with no known grams stays all zero.
FeatureVector vectorize(std::span<const std::string> segment_docs, const Vocabulary& vocab);
FeatureVector vectorize(std::string_view doc, const Vocabulary& vocab);

// Picks the documents the vocabulary's mode needs. Throws ModeMismatch.
FeatureVector represent(const ProgramDocuments& docs, const Vocabulary& vocab, std::string program_id = {});

std::vector<std::string> documents_for(const ProgramDocuments& docs, Mode mode);

nlohmann::json to_json(const Vocabulary& vocab);
Vocabulary vocabulary_from_json(const nlohmann::json& j);
nlohmann::json to_json(const FeatureVector& vec);
FeatureVector feature_vector_from_json(const nlohmann::json& j);

}  // namespace invclust
