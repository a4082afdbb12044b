#include "invclust/vectorizer.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "invclust/errors.hpp"
#include "invclust/kernels.hpp"

namespace invclust {

std::string_view mode_name(Mode mode) {
  switch (mode) {
    case Mode::Syntax: return "syntax";
    case Mode::Aast: return "aast";
    case Mode::Inv: return "inv";
    case Mode::AastInv: return "aast+inv";
  }
  return "?";
}

std::optional<Mode> parse_mode(std::string_view text) {
  if (text == "syntax") return Mode::Syntax;
  if (text == "aast") return Mode::Aast;
  if (text == "inv") return Mode::Inv;
  if (text == "aast+inv" || text == "aast_inv") return Mode::AastInv;
  return std::nullopt;
}

namespace {

bool word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

constexpr std::array<std::string_view, 18> kOperators = {
    "<<=", ">>=", "==", "!=", "<=", ">=", "&&", "||", "++", "--",
    "+=",  "-=",  "*=", "/=", "%=", "->", "<<", ">>"};

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (word_char(c)) {
      std::size_t start = i;
      while (i < text.size()) {
        if (word_char(text[i])) {
          ++i;
        } else if (text[i] == '.' && i > start && std::isdigit(static_cast<unsigned char>(text[i - 1])) &&
                   i + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
          ++i;
        } else {
          break;
        }
      }
      tokens.emplace_back(text.substr(start, i - start));
      continue;
    }
    std::size_t len = 1;
    for (auto op : kOperators) {
      if (text.substr(i, op.size()) == op) {
        len = op.size();
        break;
      }
    }
    tokens.emplace_back(text.substr(i, len));
    i += len;
  }
  return tokens;
}

std::vector<std::string> ngrams(std::string_view text, int n) {
  auto tokens = tokenize(text);
  std::vector<std::string> grams;
  if (n < 1 || tokens.size() < static_cast<std::size_t>(n)) return grams;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string gram = tokens[i];
    for (int k = 1; k < n; ++k) {
      gram += ' ';
      gram += tokens[i + k];
    }
    grams.push_back(std::move(gram));
  }
  return grams;
}

std::optional<std::size_t> VocabSegment::index_of(const std::string& gram) const {
  auto it = std::lower_bound(grams.begin(), grams.end(), gram);
  if (it == grams.end() || *it != gram) return std::nullopt;
  return static_cast<std::size_t>(it - grams.begin());
}

std::size_t Vocabulary::size() const {
  std::size_t total = 0;
  for (const auto& s : segments) total += s.grams.size();
  return total;
}

std::size_t Vocabulary::offset(std::size_t segment) const {
  std::size_t total = 0;
  for (std::size_t i = 0; i < segment; ++i) total += segments[i].grams.size();
  return total;
}

bool Vocabulary::operator==(const Vocabulary& other) const {
  if (mode != other.mode || n != other.n || segments.size() != other.segments.size()) return false;
  for (std::size_t i = 0; i < segments.size(); ++i)
    if (segments[i].name != other.segments[i].name || segments[i].grams != other.segments[i].grams ||
        segments[i].idf != other.segments[i].idf)
      return false;
  return true;
}

VocabSegment build_segment(std::span<const std::string> docs, const std::string& name, int n, bool idf) {
  if (n < 1) throw std::invalid_argument("gram size must be at least 1");
  std::map<std::string, std::size_t> df;
  for (const auto& doc : docs) {
    auto grams = ngrams(doc, n);
    std::set<std::string> unique(grams.begin(), grams.end());
    for (const auto& g : unique) ++df[g];
  }
  if (df.empty()) throw EmptyCorpus("no document of family '" + name + "' has " + std::to_string(n) + " tokens");
  VocabSegment segment;
  segment.name = name;
  for (const auto& [gram, count] : df) {
    segment.grams.push_back(gram);
    if (idf) {
      double N = static_cast<double>(docs.size());
      segment.idf.push_back(std::log((1.0 + N) / (1.0 + static_cast<double>(count))) + 1.0);
    }
  }
  return segment;
}

namespace {

std::vector<std::string> segment_names(Mode mode) {
  switch (mode) {
    case Mode::Syntax: return {"syntax"};
    case Mode::Aast: return {"aast"};
    case Mode::Inv: return {"inv"};
    case Mode::AastInv: return {"aast", "inv"};
  }
  return {};
}

}  // namespace

Vocabulary build_vocab(std::span<const std::string> docs, Mode mode, int n, bool idf) {
  if (mode == Mode::AastInv) throw ModeMismatch("aast+inv vocabularies need per-family documents");
  if (docs.empty()) throw EmptyCorpus("no documents");
  Vocabulary vocab;
  vocab.mode = mode;
  vocab.n = n;
  vocab.segments.push_back(build_segment(docs, segment_names(mode).front(), n, idf));
  return vocab;
}

std::vector<std::string> documents_for(const ProgramDocuments& docs, Mode mode) {
  auto need = [&](const std::optional<std::string>& doc, const char* what) -> const std::string& {
    if (!doc) throw ModeMismatch(std::string("mode ") + std::string(mode_name(mode)) + " needs the " + what + " document");
    return *doc;
  };
  switch (mode) {
    case Mode::Syntax: return {need(docs.renamed_source, "renamed source")};
    case Mode::Aast: return {need(docs.aast, "AAST")};
    case Mode::Inv: return {need(docs.invariants, "invariants")};
    case Mode::AastInv: return {need(docs.aast, "AAST"), need(docs.invariants, "invariants")};
  }
  return {};
}

Vocabulary build_vocab(std::span<const ProgramDocuments> programs, Mode mode, int n, bool idf) {
  if (programs.empty()) throw EmptyCorpus("no documents");
  auto names = segment_names(mode);
  std::vector<std::vector<std::string>> families(names.size());
  for (const auto& program : programs) {
    auto docs = documents_for(program, mode);
    for (std::size_t s = 0; s < docs.size(); ++s) families[s].push_back(std::move(docs[s]));
  }
  Vocabulary vocab;
  vocab.mode = mode;
  vocab.n = n;
  for (std::size_t s = 0; s < names.size(); ++s) vocab.segments.push_back(build_segment(families[s], names[s], n, idf));
  return vocab;
}

FeatureVector vectorize(std::span<const std::string> segment_docs, const Vocabulary& vocab) {
  if (segment_docs.size() != vocab.segments.size())
    throw ModeMismatch("expected " + std::to_string(vocab.segments.size()) + " documents, got " +
                       std::to_string(segment_docs.size()));
  FeatureVector vec;
  vec.values.assign(vocab.size(), 0.0);
  std::size_t offset = 0;
  for (std::size_t s = 0; s < vocab.segments.size(); ++s) {
    const VocabSegment& segment = vocab.segments[s];
    std::span<double> part(vec.values.data() + offset, segment.grams.size());
    for (const auto& gram : ngrams(segment_docs[s], vocab.n))
      if (auto index = segment.index_of(gram)) part[*index] += 1.0;
    if (!segment.idf.empty())
      for (std::size_t i = 0; i < part.size(); ++i) part[i] *= segment.idf[i];
    double total = kernels::sum(part);
    if (total > 0.0) kernels::scale(part, 1.0 / total);
    offset += segment.grams.size();
  }
  return vec;
}

FeatureVector vectorize(std::string_view doc, const Vocabulary& vocab) {
  std::string owned(doc);
  return vectorize(std::span<const std::string>(&owned, 1), vocab);
}

FeatureVector represent(const ProgramDocuments& docs, const Vocabulary& vocab, std::string program_id) {
  auto segment_docs = documents_for(docs, vocab.mode);
  FeatureVector vec = vectorize(segment_docs, vocab);
  vec.program_id = std::move(program_id);
  return vec;
}

nlohmann::json to_json(const Vocabulary& vocab) {
  nlohmann::json j;
  j["mode"] = std::string(mode_name(vocab.mode));
  j["n"] = vocab.n;
  j["grams"] = nlohmann::json::array();
  j["segments"] = nlohmann::json::array();
  bool idf = false;
  std::size_t offset = 0;
  for (const auto& segment : vocab.segments) {
    for (const auto& g : segment.grams) j["grams"].push_back(g);
    j["segments"].push_back({{"name", segment.name}, {"offset", offset}, {"size", segment.grams.size()}});
    offset += segment.grams.size();
    idf = idf || !segment.idf.empty();
  }
  if (idf) {
    j["idf"] = nlohmann::json::array();
    for (const auto& segment : vocab.segments)
      for (double w : segment.idf) j["idf"].push_back(w);
  }
  return j;
}

Vocabulary vocabulary_from_json(const nlohmann::json& j) {
  Vocabulary vocab;
  auto mode = parse_mode(j.at("mode").get<std::string>());
  if (!mode) throw Error("unknown vocabulary mode " + j.at("mode").dump());
  vocab.mode = *mode;
  vocab.n = j.at("n").get<int>();
  const auto& grams = j.at("grams");
  for (const auto& seg : j.at("segments")) {
    VocabSegment segment;
    segment.name = seg.at("name").get<std::string>();
    std::size_t offset = seg.at("offset").get<std::size_t>();
    std::size_t size = seg.at("size").get<std::size_t>();
    for (std::size_t i = 0; i < size; ++i) {
      segment.grams.push_back(grams.at(offset + i).get<std::string>());
      if (j.contains("idf")) segment.idf.push_back(j["idf"].at(offset + i).get<double>());
    }
    vocab.segments.push_back(std::move(segment));
  }
  return vocab;
}

nlohmann::json to_json(const FeatureVector& vec) { return {{"id", vec.program_id}, {"values", vec.values}}; }

FeatureVector feature_vector_from_json(const nlohmann::json& j) {
  return {j.at("id").get<std::string>(), j.at("values").get<std::vector<double>>()};
}

}  // namespace invclust
