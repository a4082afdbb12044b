#include <fstream>

#include <nlohmann/json.hpp>

#include "invclust/corpus.hpp"
#include "invclust/errors.hpp"

namespace invclust {

namespace fs = std::filesystem;

namespace {

void write_file(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

// "<assignment>/<stem>" -> out/<assignment>/<stem><suffix>
fs::path artifact_path(const fs::path& out_dir, const std::string& id, const std::string& suffix) {
  return out_dir / fs::path(id + suffix);
}

nlohmann::json limits_json(const Limits& limits) {
  return {{"max_steps", limits.max_steps}, {"max_loop_iters", limits.max_loop_iters}};
}

}  // namespace

nlohmann::json model_json(const PipelineArtifacts& artifacts) {
  nlohmann::json j = to_json(artifacts.model);
  j["sse_history"] = artifacts.model.sse_history;
  j["labels"] = nlohmann::json::object();
  j["correct"] = nlohmann::json::object();
  j["vectors"] = nlohmann::json::object();
  for (std::size_t i = 0; i < artifacts.programs.size(); ++i) {
    const auto& p = artifacts.programs[i];
    j["labels"][p.id] = p.label;
    j["correct"][p.id] = p.correct;
    j["vectors"][p.id] = artifacts.vectors[i].values;
  }
  const auto& o = artifacts.options;
  j["config"] = {{"n", o.n},
                 {"min_samples", o.min_samples},
                 {"idf", o.idf},
                 {"filter", o.filter == Filter::CorrectOnly ? "correct-only" : "all"},
                 {"restarts", o.restarts},
                 {"limits", limits_json(o.limits)}};
  return j;
}

nlohmann::json report_json(const PipelineArtifacts& artifacts) {
  nlohmann::json j;
  j["mode"] = std::string(mode_name(artifacts.options.mode));
  j["seed"] = artifacts.options.seed;
  j["k"] = artifacts.model.k;
  j["purity"] = artifacts.purity;
  j["sse"] = artifacts.model.sse;
  j["iterations"] = artifacts.model.iterations;
  j["programs"] = artifacts.programs.size();
  j["clustered"] = artifacts.clustered.size();
  std::vector<std::size_t> sizes(artifacts.model.k, 0);
  for (std::size_t label : artifacts.model.labels) ++sizes[label];
  j["cluster_sizes"] = sizes;
  j["representatives"] = nlohmann::json::object();
  for (const auto& [c, id] : artifacts.model.representatives) j["representatives"][std::to_string(c)] = id;
  j["incorrect"] = nlohmann::json::array();
  for (const auto& p : artifacts.programs)
    if (!p.correct) j["incorrect"].push_back(p.id);
  j["excluded"] = nlohmann::json::array();
  for (const auto& e : artifacts.excluded) j["excluded"].push_back({{"id", e.id}, {"diagnostic", e.diagnostic}});
  return j;
}

void write_artifacts(const PipelineArtifacts& artifacts, const fs::path& out_dir) {
  fs::create_directories(out_dir);
  for (std::size_t i = 0; i < artifacts.programs.size(); ++i) {
    const auto& p = artifacts.programs[i];
    write_file(artifact_path(out_dir, p.id, ".renamed.c"), p.renamed_source);
    write_file(artifact_path(out_dir, p.id, ".aast.txt"), p.aast.text + "\n");
    nlohmann::json inv;
    inv["id"] = p.id;
    inv["points"] = p.invariants.by_point;
    nlohmann::json verdicts = nlohmann::json::array();
    for (Verdict v : p.verdicts) verdicts.push_back(std::string(verdict_name(v)));
    inv["verdicts"] = verdicts;
    write_file(artifact_path(out_dir, p.id, ".invariants.json"), dump(inv));
    write_file(artifact_path(out_dir, p.id, ".vector.json"), dump(to_json(artifacts.vectors[i])));
  }
  write_file(out_dir / "model.json", dump(model_json(artifacts)));
  write_file(out_dir / "report.json", dump(report_json(artifacts)));
  write_file(out_dir / "projection.csv", projection_csv(artifacts.projection));
}

}  // namespace invclust
