#include "invclust/clusterer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <nlohmann/json.hpp>

#include "invclust/errors.hpp"
#include "invclust/kernels.hpp"

namespace invclust {
namespace {

// Uniform double in [0, 1) from the top 53 bits; mt19937_64's output sequence
// is fixed by the standard, so this is reproducible across platforms.
double uniform01(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

std::size_t uniform_index(std::mt19937_64& gen, std::size_t n) {
  return std::min(n - 1, static_cast<std::size_t>(uniform01(gen) * static_cast<double>(n)));
}

struct Run {
  std::vector<std::size_t> labels;
  std::vector<std::vector<double>> centroids;
  double sse = 0.0;
  int iterations = 0;
  std::vector<double> sse_history;
};

std::vector<std::vector<double>> plus_plus_init(std::span<const FeatureVector> points, std::size_t k,
                                                std::mt19937_64& gen) {
  const std::size_t n = points.size();
  std::vector<std::size_t> chosen;
  std::vector<char> taken(n, 0);
  chosen.push_back(uniform_index(gen, n));
  taken[chosen.back()] = 1;
  std::vector<double> d2(n);
  for (std::size_t i = 0; i < n; ++i) d2[i] = kernels::squared_distance(points[i].values, points[chosen[0]].values);
  while (chosen.size() < k) {
    double total = 0.0;
    for (double d : d2) total += d;
    std::size_t pick = n;
    if (total > 0.0) {
      double target = uniform01(gen) * total;
      double cumulative = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (d2[i] <= 0.0) continue;
        cumulative += d2[i];
        pick = i;
        if (cumulative > target) break;
      }
    } else {
      for (std::size_t i = 0; i < n && pick == n; ++i)
        if (!taken[i]) pick = i;
    }
    chosen.push_back(pick);
    taken[pick] = 1;
    for (std::size_t i = 0; i < n; ++i)
      d2[i] = std::min(d2[i], kernels::squared_distance(points[i].values, points[pick].values));
  }
  std::vector<std::vector<double>> centroids;
  for (std::size_t index : chosen) centroids.push_back(points[index].values);
  return centroids;
}

std::size_t nearest(const std::vector<double>& point, const std::vector<std::vector<double>>& centroids) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centroids.size(); ++c) {
    double d = kernels::squared_distance(point, centroids[c]);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

Run lloyd(std::span<const FeatureVector> points, std::size_t k, const KMeansOptions& options, std::mt19937_64& gen) {
  const std::size_t n = points.size();
  const std::size_t dim = points.front().values.size();
  Run run;
  run.centroids = plus_plus_init(points, k, gen);
  std::vector<std::size_t> previous;
  for (int iter = 1; iter <= std::max(1, options.max_iters); ++iter) {
    run.iterations = iter;
    run.labels.assign(n, 0);
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < n; ++i) ++counts[run.labels[i] = nearest(points[i].values, run.centroids)];

    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] > 0) continue;
      std::size_t far = n;
      double far_d = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (counts[run.labels[i]] < 2) continue;
        double d = kernels::squared_distance(points[i].values, run.centroids[run.labels[i]]);
        if (d > far_d) {
          far_d = d;
          far = i;
        }
      }
      --counts[run.labels[far]];
      run.labels[far] = c;
      counts[c] = 1;
    }

    std::vector<std::vector<double>> updated(k, std::vector<double>(dim, 0.0));
    for (std::size_t i = 0; i < n; ++i) kernels::accumulate(updated[run.labels[i]], points[i].values);
    double shift = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      kernels::scale(updated[c], 1.0 / static_cast<double>(counts[c]));
      shift = std::max(shift, kernels::squared_distance(updated[c], run.centroids[c]));
    }
    run.centroids = std::move(updated);
    run.sse = within_cluster_sse(points, run.labels, run.centroids);
    run.sse_history.push_back(run.sse);
    if (run.labels == previous || std::sqrt(shift) < options.tol) break;
    previous = run.labels;
  }
  return run;
}

}  // namespace

double within_cluster_sse(std::span<const FeatureVector> vectors, const std::vector<std::size_t>& labels,
                          const std::vector<std::vector<double>>& centroids) {
  double total = 0.0;
  for (std::size_t i = 0; i < vectors.size(); ++i)
    total += kernels::squared_distance(vectors[i].values, centroids[labels[i]]);
  return total;
}

ClusterModel kmeans(std::span<const FeatureVector> vectors, std::size_t k, const KMeansOptions& options) {
  if (vectors.empty()) throw EmptyCorpus("no vectors to cluster");
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  if (k > vectors.size()) throw KTooLarge(k, vectors.size());
  const std::size_t dim = vectors.front().values.size();
  for (const auto& v : vectors)
    if (v.values.size() != dim)
      throw DimensionMismatch("vector '" + v.program_id + "' has dimension " + std::to_string(v.values.size()) +
                              ", expected " + std::to_string(dim));

  std::mt19937_64 gen(options.seed);
  Run best;
  bool have = false;
  for (int r = 0; r < std::max(1, options.restarts); ++r) {
    Run run = lloyd(vectors, k, options, gen);
    if (!have || run.sse < best.sse) {
      best = std::move(run);
      have = true;
    }
  }

  ClusterModel model;
  model.k = k;
  model.seed = options.seed;
  model.centroids = std::move(best.centroids);
  model.labels = std::move(best.labels);
  model.sse = best.sse;
  model.iterations = best.iterations;
  model.sse_history = std::move(best.sse_history);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    model.ids.push_back(vectors[i].program_id);
    model.assignment[vectors[i].program_id] = model.labels[i];
  }
  return model;
}

std::size_t default_k(std::size_t n, double fraction) {
  if (n == 0) return 1;
  auto k = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
  return std::clamp<std::size_t>(k, 1, n);
}

std::map<std::size_t, std::string> select_representatives(const ClusterModel& model,
                                                          std::span<const FeatureVector> vectors) {
  std::map<std::size_t, std::pair<double, std::string>> best;
  for (const auto& v : vectors) {
    auto it = model.assignment.find(v.program_id);
    if (it == model.assignment.end()) continue;
    std::size_t c = it->second;
    double d = std::sqrt(kernels::squared_distance(v.values, model.centroids.at(c)));
    auto [slot, inserted] = best.try_emplace(c, d, v.program_id);
    if (!inserted && (d < slot->second.first || (d == slot->second.first && v.program_id < slot->second.second)))
      slot->second = {d, v.program_id};
  }
  std::map<std::size_t, std::string> reps;
  for (const auto& [c, entry] : best) reps[c] = entry.second;
  return reps;
}

double purity(const std::map<std::string, std::size_t>& assignment,
              const std::map<std::string, std::string>& labels) {
  if (assignment.empty()) return 0.0;
  std::map<std::size_t, std::map<std::string, std::size_t>> counts;
  for (const auto& [id, cluster] : assignment) {
    auto label = labels.find(id);
    if (label == labels.end()) throw MissingLabel(id);
    ++counts[cluster][label->second];
  }
  std::size_t majority = 0;
  for (const auto& [cluster, per_label] : counts) {
    std::size_t top = 0;
    for (const auto& [label, count] : per_label) top = std::max(top, count);
    majority += top;
  }
  return static_cast<double>(majority) / static_cast<double>(assignment.size());
}

ClosestMatch closest_program(const FeatureVector& query, std::span<const FeatureVector> candidates) {
  if (candidates.empty()) throw EmptyCandidates();
  ClosestMatch best;
  bool have = false;
  for (const auto& c : candidates) {
    if (c.values.size() != query.values.size())
      throw DimensionMismatch("candidate '" + c.program_id + "' has dimension " + std::to_string(c.values.size()) +
                              ", query has " + std::to_string(query.values.size()));
    double d = std::sqrt(kernels::squared_distance(query.values, c.values));
    if (!have || d < best.distance || (d == best.distance && c.program_id < best.id)) {
      best = {c.program_id, d};
      have = true;
    }
  }
  return best;
}

nlohmann::json to_json(const ClusterModel& model) {
  nlohmann::json j;
  j["k"] = model.k;
  j["seed"] = model.seed;
  j["mode"] = std::string(mode_name(model.mode));
  j["centroids"] = model.centroids;
  j["assignment"] = nlohmann::json::object();
  for (const auto& [id, c] : model.assignment) j["assignment"][id] = c;
  j["representatives"] = nlohmann::json::object();
  for (const auto& [c, id] : model.representatives) j["representatives"][std::to_string(c)] = id;
  j["sse"] = model.sse;
  j["iterations"] = model.iterations;
  j["vocab"] = to_json(model.vocab);
  return j;
}

ClusterModel cluster_model_from_json(const nlohmann::json& j) {
  ClusterModel model;
  model.k = j.at("k").get<std::size_t>();
  model.seed = j.at("seed").get<std::uint64_t>();
  auto mode = parse_mode(j.at("mode").get<std::string>());
  if (!mode) throw Error("unknown mode in model: " + j.at("mode").dump());
  model.mode = *mode;
  model.centroids = j.at("centroids").get<std::vector<std::vector<double>>>();
  for (const auto& [id, c] : j.at("assignment").items()) {
    model.assignment[id] = c.get<std::size_t>();
    model.ids.push_back(id);
    model.labels.push_back(c.get<std::size_t>());
  }
  for (const auto& [c, id] : j.at("representatives").items())
    model.representatives[std::stoul(c)] = id.get<std::string>();
  model.sse = j.value("sse", 0.0);
  model.iterations = j.value("iterations", 0);
  if (j.contains("vocab")) model.vocab = vocabulary_from_json(j.at("vocab"));
  return model;
}

}  // namespace invclust
