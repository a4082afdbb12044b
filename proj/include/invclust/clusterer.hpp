#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "invclust/vectorizer.hpp"

namespace invclust {

struct KMeansOptions {
  std::uint64_t seed = 0;
  int max_iters = 300;
  double tol = 1e-6;
  int restarts = 1;  // best-of-R by SSE
};

struct ClusterModel {
  std::size_t k = 0;
  std::uint64_t seed = 0;
  Mode mode = Mode::AastInv;
  Vocabulary vocab;
  std::vector<std::vector<double>> centroids;
  std::vector<std::string> ids;       // input order
  std::vector<std::size_t> labels;    // cluster of ids[i]
  std::map<std::string, std::size_t> assignment;
  std::map<std::size_t, std::string> representatives;
  double sse = 0.0;
  int iterations = 0;
  std::vector<double> sse_history;  // after every centroid update of the kept run
};

// Lloyd's algorithm with k-means++ seeding. Assignment uses squared Euclidean
// distance with ties going to the lower cluster index; an empty cluster is
// reseeded with the point farthest from its centroid. Deterministic for a
// given seed. Representatives are not filled in; see select_representatives.
ClusterModel kmeans(std::span<const FeatureVector> vectors, std::size_t k, const KMeansOptions& options = {});

// Within-cluster sum of squared distances.
double within_cluster_sse(std::span<const FeatureVector> vectors, const std::vector<std::size_t>& labels,
                          const std::vector<std::vector<double>>& centroids);

// max(1, round(fraction * n)), rounding half away from zero, capped at n.
std::size_t default_k(std::size_t n, double fraction = 0.1);

// Member nearest (Euclidean) to each centroid; ties go to the
// lexicographically smaller id.
std::map<std::size_t, std::string> select_representatives(const ClusterModel& model,
                                                          std::span<const FeatureVector> vectors);

// Fraction of programs whose cluster's majority label is their own.
// Throws MissingLabel.
double purity(const std::map<std::string, std::size_t>& assignment,
              const std::map<std::string, std::string>& labels);

struct ClosestMatch {
  std::string id;
  double distance = 0.0;
};

// Argmin Euclidean distance, ties to the lexicographically smaller id.
// Throws EmptyCandidates / DimensionMismatch.
ClosestMatch closest_program(const FeatureVector& query, std::span<const FeatureVector> candidates);

nlohmann::json to_json(const ClusterModel& model);
ClusterModel cluster_model_from_json(const nlohmann::json& j);

}  // namespace invclust
