#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>

#include "invclust/corpus.hpp"
#include "invclust/errors.hpp"

namespace invclust {

ProgramDocuments ProgramArtifacts::documents() const {
  return {renamed_source, aast.text, flatten(invariants)};
}

std::variant<ProgramArtifacts, Exclusion> process_program(const SourceProgram& program,
                                                          std::span<const TestCase> tests,
                                                          const PipelineOptions& options) {
  auto excluded = [&](std::string diagnostic) { return Exclusion{program.id, std::move(diagnostic)}; };
  ProgramArtifacts out;
  out.id = program.id;
  out.label = program.label;
  try {
    SyntaxTree tree = parse(program);
    RenameResult renamed = rename(tree);
    out.renamed_source = unparse(renamed.tree);
    out.rename_map = std::move(renamed.map);
    out.aast = serialize_aast(anonymize(renamed.tree));
    SuiteRun run = run_suite(renamed.tree, tests, options.limits);
    for (std::size_t t = 0; t < run.errors.size(); ++t) {
      if (!run.errors[t]) continue;
      const RuntimeError& e = *run.errors[t];
      return excluded(program.id + ":" + std::to_string(e.line) + ": " + std::string(runtime_error_name(e.kind)) +
                      " on test " + std::to_string(t + 1) + ": " + e.message);
    }
    out.verdicts = run.verdicts;
    out.correct = run.all_pass();
    out.invariants = detect(run.log, options.min_samples);
  } catch (const SyntaxError& e) {
    return excluded(program.id + ":" + std::to_string(e.line()) + ": " + e.message());
  } catch (const UnsupportedFeature& e) {
    return excluded(program.id + ":" + std::to_string(e.line()) + ": unsupported construct: " + e.construct());
  } catch (const UnresolvedIdentifier& e) {
    return excluded(program.id + ":" + std::to_string(e.line()) + ": unresolved identifier '" + e.name() + "'");
  }
  return out;
}

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("INVCLUST_THREADS")) {
    char* end = nullptr;
    long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) return static_cast<unsigned>(value);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

struct Job {
  const SourceProgram* program;
  const Assignment* assignment;
};

// Results land in per-job slots, so the output does not depend on scheduling.
std::vector<std::variant<ProgramArtifacts, Exclusion>> process_all(const std::vector<Job>& jobs,
                                                                   const PipelineOptions& options) {
  std::vector<std::variant<ProgramArtifacts, Exclusion>> slots(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();)
      slots[i] = process_program(*jobs[i].program, jobs[i].assignment->tests, options);
  };
  unsigned threads = std::min<std::size_t>(resolve_threads(options.threads), std::max<std::size_t>(1, jobs.size()));
  if (threads <= 1) {
    worker();
    return slots;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return slots;
}

}  // namespace

PipelineArtifacts run_pipeline(const Corpus& corpus, const PipelineOptions& options) {
  PipelineArtifacts out;
  out.options = options;
  out.excluded = corpus.excluded;

  std::vector<Job> jobs;
  for (const auto& [label, assignment] : corpus.assignments)
    for (const auto& program : assignment.programs) jobs.push_back({&program, &assignment});
  for (auto& slot : process_all(jobs, options)) {
    if (auto* artifacts = std::get_if<ProgramArtifacts>(&slot))
      out.programs.push_back(std::move(*artifacts));
    else
      out.excluded.push_back(std::get<Exclusion>(std::move(slot)));
  }
  std::sort(out.programs.begin(), out.programs.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  std::sort(out.excluded.begin(), out.excluded.end(), [](const auto& a, const auto& b) { return a.id < b.id; });

  std::vector<ProgramDocuments> cluster_docs;
  std::map<std::string, std::string> labels;
  for (const auto& p : out.programs) {
    if (options.filter == Filter::CorrectOnly && !p.correct) continue;
    out.clustered.push_back(p.id);
    cluster_docs.push_back(p.documents());
    labels[p.id] = p.label;
  }
  if (out.clustered.empty()) throw EmptyCorpus("no program survived the pipeline");

  out.vocab = build_vocab(cluster_docs, options.mode, options.n, options.idf);
  std::vector<FeatureVector> clustered_vectors;
  for (const auto& p : out.programs) {
    out.vectors.push_back(represent(p.documents(), out.vocab, p.id));
    if (labels.count(p.id)) clustered_vectors.push_back(out.vectors.back());
  }

  std::size_t k = options.k.value_or(default_k(clustered_vectors.size(), options.k_frac));
  KMeansOptions kopts;
  kopts.seed = options.seed;
  kopts.restarts = options.restarts;
  out.model = kmeans(clustered_vectors, k, kopts);
  out.model.mode = options.mode;
  out.model.vocab = out.vocab;
  out.model.representatives = select_representatives(out.model, clustered_vectors);
  out.purity = purity(out.model.assignment, labels);
  if (clustered_vectors.size() >= 2) out.projection = project_2d(clustered_vectors);
  return out;
}

}  // namespace invclust
