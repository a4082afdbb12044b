// Command-line front end: one subcommand per pipeline stage plus the
// end-to-end cluster / closest flows.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "invclust/corpus.hpp"
#include "invclust/errors.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace invclust;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const fs::path& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

SourceProgram load_program(const fs::path& path) {
  return {path.stem().string(), "", read_file(path)};
}

json number_json(const Number& n) {
  if (const auto* i = std::get_if<std::int64_t>(&n)) return *i;
  return std::get<double>(n);
}

json rename_map_json(const RenameMap& map) {
  json entries = json::array();
  for (const auto& e : map.entries)
    entries.push_back({{"original", e.original_name}, {"scope", e.scope_path}, {"renamed", e.new_name}});
  return entries;
}

json trace_json(const SuiteRun& run) {
  json points = json::object();
  for (const auto& [id, samples] : run.log.samples) {
    json list = json::array();
    for (const auto& snapshot : samples) {
      json s = json::object();
      for (const auto& [var, value] : snapshot) s[var] = number_json(value);
      list.push_back(s);
    }
    points[id] = {{"kind", std::string(point_kind_name(run.log.kinds.at(id)))}, {"samples", list}};
  }
  json verdicts = json::array();
  for (Verdict v : run.verdicts) verdicts.push_back(std::string(verdict_name(v)));
  json errors = json::array();
  for (const auto& e : run.errors) {
    if (!e) {
      errors.push_back(nullptr);
      continue;
    }
    errors.push_back({{"kind", std::string(runtime_error_name(e->kind))},
                      {"point", e->point},
                      {"line", e->line},
                      {"message", e->message}});
  }
  return {{"points", points}, {"outputs", run.log.outputs}, {"verdicts", verdicts}, {"errors", errors}};
}

Limits limits_from(const json& config) {
  Limits limits;
  if (config.contains("limits")) {
    limits.max_steps = config["limits"].value("max_steps", limits.max_steps);
    limits.max_loop_iters = config["limits"].value("max_loop_iters", limits.max_loop_iters);
  }
  return limits;
}

struct Model {
  ClusterModel clusters;
  json raw;
};

Model load_model(const fs::path& path) {
  json raw = read_json(path);
  return {cluster_model_from_json(raw), raw};
}

FeatureVector stored_vector(const Model& model, const std::string& id) {
  const json& vectors = model.raw.at("vectors");
  if (!vectors.contains(id)) throw Error("model has no vector for '" + id + "'");
  return {id, vectors.at(id).get<std::vector<double>>()};
}

void emit(bool as_json, const json& j, const std::string& text) {
  if (as_json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

std::string fmt_double(double v) {
  std::ostringstream ss;
  ss.precision(17);
  ss << v;
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cluster C programs by anonymized syntax trees and dynamic invariants"};
  app.require_subcommand(1);
  bool as_json = false;
  unsigned threads = 0;
  app.add_flag("--json", as_json, "Print machine-readable JSON");
  app.add_option("--threads", threads, "Worker threads (falls back to INVCLUST_THREADS)");

  fs::path program_path, tests_dir, corpus_dir, out_dir, model_path, map_out;
  std::string mode_text = "aast+inv", filter_text = "correct-only";
  std::size_t k = 0;
  double k_frac = 0.1;
  std::uint64_t seed = 0;
  int gram = kDefaultGramSize, min_samples = kMinSamplesDefault, restarts = 1;
  int synth_assignments = 3, synth_variants = 10;
  bool idf = false, all_candidates = false;
  Limits limits;

  auto mode_check = CLI::Validator(
      [](std::string& s) { return parse_mode(s) ? std::string() : "unknown mode '" + s + "'"; }, "MODE");
  auto filter_check = CLI::Validator(
      [](std::string& s) { return parse_filter(s) ? std::string() : "unknown filter '" + s + "'"; }, "FILTER");
  auto add_limits = [&](CLI::App* cmd) {
    cmd->add_option("--max-steps", limits.max_steps, "Interpreter step limit")->check(CLI::PositiveNumber);
    cmd->add_option("--max-loop-iters", limits.max_loop_iters, "Per-loop iteration limit")->check(CLI::PositiveNumber);
  };

  auto* rename_cmd = app.add_subcommand("rename", "Print the renamed program; map JSON goes to stderr");
  rename_cmd->add_option("--program", program_path, "C source file")->required();
  rename_cmd->add_option("--map-out", map_out, "Write the rename map here instead of stderr");

  auto* aast_cmd = app.add_subcommand("aast", "Print the anonymized syntax tree");
  aast_cmd->add_option("--program", program_path, "C source file")->required();

  auto* inv_cmd = app.add_subcommand("invariants", "Detect invariants of the renamed program");
  inv_cmd->add_option("--program", program_path, "C source file")->required();
  inv_cmd->add_option("--tests", tests_dir, "Directory with t<i>.in / t<i>.out")->required();
  inv_cmd->add_option("--min-samples", min_samples, "Snapshots needed per point")->check(CLI::PositiveNumber);
  add_limits(inv_cmd);

  auto* trace_cmd = app.add_subcommand("trace", "Run the renamed program on a test suite and dump snapshots");
  trace_cmd->add_option("--program", program_path, "C source file")->required();
  trace_cmd->add_option("--tests", tests_dir, "Directory with t<i>.in / t<i>.out")->required();
  add_limits(trace_cmd);

  auto* cluster_cmd = app.add_subcommand("cluster", "Run the full pipeline over a corpus");
  cluster_cmd->add_option("--corpus", corpus_dir, "Corpus root")->required();
  cluster_cmd->add_option("--tests", tests_dir, "Test root (default <corpus>/tests)");
  cluster_cmd->add_option("--mode", mode_text, "syntax | aast | inv | aast+inv")->check(mode_check);
  auto* k_opt = cluster_cmd->add_option("--k", k, "Number of clusters")->check(CLI::PositiveNumber);
  auto* frac_opt = cluster_cmd->add_option("--k-frac", k_frac, "k as a fraction of clustered programs")
                       ->check(CLI::Range(0.0, 1.0));
  k_opt->excludes(frac_opt);
  cluster_cmd->add_option("--n", gram, "Gram size")->check(CLI::PositiveNumber);
  cluster_cmd->add_option("--seed", seed, "k-means seed");
  cluster_cmd->add_option("--restarts", restarts, "Best-of-R restarts")->check(CLI::PositiveNumber);
  cluster_cmd->add_flag("--idf", idf, "Weight grams by smoothed idf");
  cluster_cmd->add_option("--min-samples", min_samples, "Snapshots needed per point")->check(CLI::PositiveNumber);
  cluster_cmd->add_option("--filter", filter_text, "correct-only | all")->check(filter_check);
  cluster_cmd->add_option("--out", out_dir, "Output directory")->required();
  add_limits(cluster_cmd);

  auto* reps_cmd = app.add_subcommand("representatives", "List cluster representatives of a model");
  reps_cmd->add_option("--model", model_path, "model.json")->required();

  auto* closest_cmd = app.add_subcommand("closest", "Find the closest correct program to a submission");
  closest_cmd->add_option("--model", model_path, "model.json")->required();
  closest_cmd->add_option("--program", program_path, "C source file")->required();
  closest_cmd->add_option("--tests", tests_dir, "Directory with t<i>.in / t<i>.out")->required();
  closest_cmd->add_flag("--all-candidates", all_candidates, "Search every clustered program, not only representatives");

  auto* purity_cmd = app.add_subcommand("purity", "Cluster purity of a model against its labels");
  purity_cmd->add_option("--model", model_path, "model.json")->required();

  auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic corpus");
  synth_cmd->add_option("--seed", seed, "Generator seed");
  synth_cmd->add_option("--assignments", synth_assignments, "Number of assignments")->check(CLI::Range(1, 7));
  synth_cmd->add_option("--variants", synth_variants, "Variants per assignment")->check(CLI::PositiveNumber);
  synth_cmd->add_option("--out", out_dir, "Corpus root")->required();

  auto* project_cmd = app.add_subcommand("project", "2-D PCA projection of a model's clustered vectors as CSV");
  project_cmd->add_option("--model", model_path, "model.json")->required();
  project_cmd->add_option("--out", out_dir, "Write projection.csv into this directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*rename_cmd) {
      RenameResult r = rename(parse(load_program(program_path)));
      std::string text = unparse(r.tree);
      json map = rename_map_json(r.map);
      if (as_json) {
        emit(true, {{"renamed", text}, {"map", map}}, "");
      } else {
        std::cout << text;
        if (map_out.empty())
          std::cerr << map.dump(2) << "\n";
        else
          std::ofstream(map_out) << map.dump(2) << "\n";
      }
    } else if (*aast_cmd) {
      AASTString a = serialize_aast(anonymize(parse(load_program(program_path))));
      emit(as_json, {{"aast", a.text}, {"node_count", a.node_count}}, a.text + "\n");
    } else if (*inv_cmd || *trace_cmd) {
      SyntaxTree tree = rename(parse(load_program(program_path))).tree;
      auto tests = load_tests(tests_dir);
      if (tests.empty()) throw MissingTests(tests_dir.string());
      SuiteRun run = run_suite(tree, tests, limits);
      if (*trace_cmd) {
        std::cout << trace_json(run).dump(2) << "\n";
      } else {
        if (run.any_error()) {
          for (std::size_t t = 0; t < run.errors.size(); ++t)
            if (run.errors[t])
              throw Error("test " + std::to_string(t + 1) + ": " + std::string(runtime_error_name(run.errors[t]->kind)) +
                          " at line " + std::to_string(run.errors[t]->line) + ": " + run.errors[t]->message);
        }
        InvariantSet set = detect(run.log, min_samples);
        emit(as_json, {{"points", set.by_point}}, flatten(set));
      }
    } else if (*cluster_cmd) {
      PipelineOptions options;
      options.mode = *parse_mode(mode_text);
      if (k_opt->count() > 0) options.k = k;
      options.k_frac = k_frac;
      options.seed = seed;
      options.filter = *parse_filter(filter_text);
      options.n = gram;
      options.min_samples = min_samples;
      options.idf = idf;
      options.limits = limits;
      options.restarts = restarts;
      options.threads = threads;
      Corpus corpus = ingest(corpus_dir, tests_dir.empty() ? std::nullopt : std::optional<fs::path>(tests_dir));
      for (const auto& e : corpus.excluded) std::cerr << e.diagnostic << "\n";
      PipelineArtifacts artifacts = run_pipeline(corpus, options);
      write_artifacts(artifacts, out_dir);
      json report = report_json(artifacts);
      std::ostringstream text;
      text << "programs " << artifacts.programs.size() << ", clustered " << artifacts.clustered.size() << ", excluded "
           << artifacts.excluded.size() << "\n";
      text << "k " << artifacts.model.k << ", purity " << fmt_double(artifacts.purity) << "\n";
      text << "wrote " << (out_dir / "model.json").string() << "\n";
      emit(as_json, report, text.str());
    } else if (*reps_cmd) {
      Model model = load_model(model_path);
      json j = json::object();
      std::string text;
      for (const auto& [c, id] : model.clusters.representatives) {
        j[std::to_string(c)] = id;
        text += std::to_string(c) + " " + id + "\n";
      }
      emit(as_json, j, text);
    } else if (*closest_cmd) {
      Model model = load_model(model_path);
      json config = model.raw.value("config", json::object());
      PipelineOptions options;
      options.n = config.value("n", kDefaultGramSize);
      options.min_samples = config.value("min_samples", kMinSamplesDefault);
      options.limits = limits_from(config);
      auto tests = load_tests(tests_dir);
      if (tests.empty()) throw MissingTests(tests_dir.string());
      auto processed = process_program(load_program(program_path), tests, options);
      if (const auto* ex = std::get_if<Exclusion>(&processed)) throw Error(ex->diagnostic);
      const auto& artifacts = std::get<ProgramArtifacts>(processed);
      FeatureVector query = represent(artifacts.documents(), model.clusters.vocab, artifacts.id);
      std::vector<FeatureVector> candidates;
      if (all_candidates) {
        for (const auto& id : model.clusters.ids) candidates.push_back(stored_vector(model, id));
      } else {
        for (const auto& [c, id] : model.clusters.representatives) candidates.push_back(stored_vector(model, id));
      }
      ClosestMatch match = closest_program(query, candidates);
      emit(true, {{"closest", match.id}, {"distance", match.distance}}, "");
    } else if (*purity_cmd) {
      Model model = load_model(model_path);
      auto labels = model.raw.at("labels").get<std::map<std::string, std::string>>();
      double p = purity(model.clusters.assignment, labels);
      emit(as_json, {{"purity", p}}, fmt_double(p) + "\n");
    } else if (*synth_cmd) {
      Corpus corpus = generate_synthetic_corpus(seed, synth_assignments, synth_variants);
      write_corpus(corpus, out_dir);
      emit(as_json, {{"programs", corpus.program_count()}, {"root", out_dir.string()}},
           "wrote " + std::to_string(corpus.program_count()) + " programs to " + out_dir.string() + "\n");
    } else if (*project_cmd) {
      Model model = load_model(model_path);
      std::vector<FeatureVector> vectors;
      for (const auto& id : model.clusters.ids) vectors.push_back(stored_vector(model, id));
      Projection projection = project_2d(vectors);
      std::string csv = projection_csv(projection);
      if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        std::ofstream(out_dir / "projection.csv", std::ios::binary) << csv;
      }
      json points = json::array();
      for (const auto& p : projection.points) points.push_back({{"id", p.id}, {"x", p.x}, {"y", p.y}});
      emit(as_json, {{"points", points}, {"degenerate", projection.degenerate}}, csv);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}
