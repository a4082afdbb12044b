#include <charconv>
#include <cmath>
#include <stdexcept>

#include "invclust/corpus.hpp"
#include "invclust/errors.hpp"
#include "invclust/kernels.hpp"

namespace invclust {
namespace {

using Matrix = std::vector<std::vector<double>>;

constexpr int kPowerIters = 2000;
constexpr double kPowerTol = 1e-13;

// Dominant eigenpair of a symmetric positive semi-definite matrix.
std::pair<double, std::vector<double>> dominant(const Matrix& g) {
  const std::size_t n = g.size();
  std::vector<double> u(n);
  for (std::size_t i = 0; i < n; ++i) u[i] = 1.0 + 1.0 / static_cast<double>(i + 2);
  double norm = std::sqrt(kernels::squared_distance(u, std::vector<double>(n, 0.0)));
  kernels::scale(u, 1.0 / norm);
  double lambda = 0.0;
  for (int it = 0; it < kPowerIters; ++it) {
    std::vector<double> w(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) w[i] += g[i][j] * u[j];
    double wn = std::sqrt(kernels::squared_distance(w, std::vector<double>(n, 0.0)));
    if (wn == 0.0) return {0.0, u};
    kernels::scale(w, 1.0 / wn);
    double change = kernels::squared_distance(w, u);
    u = std::move(w);
    lambda = wn;
    if (change < kPowerTol * kPowerTol) break;
  }
  // Sign convention: the largest-magnitude component is positive.
  std::size_t arg = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (std::abs(u[i]) > std::abs(u[arg]) + 1e-12) arg = i;
  if (u[arg] < 0.0) kernels::scale(u, -1.0);
  return {lambda, u};
}

std::string shortest(double v) {
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

Projection project_2d(std::span<const FeatureVector> vectors) {
  if (vectors.size() < 2) throw std::invalid_argument("projection needs at least two vectors");
  const std::size_t n = vectors.size();
  const std::size_t dim = vectors.front().values.size();
  for (const auto& v : vectors)
    if (v.values.size() != dim) throw DimensionMismatch("projection input dimensions differ");

  std::vector<double> mean(dim, 0.0);
  for (const auto& v : vectors) kernels::accumulate(mean, v.values);
  kernels::scale(mean, 1.0 / static_cast<double>(n));
  Matrix centered;
  for (const auto& v : vectors) {
    std::vector<double> c = v.values;
    for (std::size_t d = 0; d < dim; ++d) c[d] -= mean[d];
    centered.push_back(std::move(c));
  }
  // Work with the n x n Gram matrix; scores are sqrt(lambda) * u.
  Matrix gram(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      double dot = 0.0;
      for (std::size_t d = 0; d < dim; ++d) dot += centered[i][d] * centered[j][d];
      gram[i][j] = gram[j][i] = dot;
    }

  Projection out;
  for (const auto& v : vectors) out.points.push_back({v.program_id, 0.0, 0.0});
  double trace = 0.0;
  for (std::size_t i = 0; i < n; ++i) trace += gram[i][i];
  if (trace <= 1e-24) {
    out.degenerate = true;
    return out;
  }
  auto [l1, u1] = dominant(gram);
  for (std::size_t i = 0; i < n; ++i) out.points[i].x = std::sqrt(l1) * u1[i];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) gram[i][j] -= l1 * u1[i] * u1[j];
  auto [l2, u2] = dominant(gram);
  if (l2 > 1e-12 * l1)
    for (std::size_t i = 0; i < n; ++i) out.points[i].y = std::sqrt(l2) * u2[i];
  return out;
}

std::string projection_csv(const Projection& projection) {
  std::string csv = "id,x,y\n";
  for (const auto& p : projection.points) csv += p.id + "," + shortest(p.x) + "," + shortest(p.y) + "\n";
  return csv;
}

}  // namespace invclust
