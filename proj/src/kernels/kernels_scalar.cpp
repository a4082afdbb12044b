#include "kernels_impl.hpp"

namespace invclust::kernels::scalar {

double squared_distance(const double* a, const double* b, std::size_t n) {
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    for (std::size_t l = 0; l < 4; ++l) {
      double d = a[i + l] - b[i + l];
      lane[l] = lane[l] + d * d;
    }
  }
  double total = (lane[0] + lane[2]) + (lane[1] + lane[3]);
  for (; i < n; ++i) {
    double d = a[i] - b[i];
    total = total + d * d;
  }
  return total;
}

double sum(const double* x, std::size_t n) {
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    for (std::size_t l = 0; l < 4; ++l) lane[l] = lane[l] + x[i + l];
  double total = (lane[0] + lane[2]) + (lane[1] + lane[3]);
  for (; i < n; ++i) total = total + x[i];
  return total;
}

void accumulate(double* acc, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) acc[i] = acc[i] + x[i];
}

void scale(double* x, double factor, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] = x[i] * factor;
}

}  // namespace invclust::kernels::scalar
