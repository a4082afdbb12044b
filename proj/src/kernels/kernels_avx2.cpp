#include "kernels_impl.hpp"

#if INVCLUST_HAVE_AVX2_KERNELS

#include <immintrin.h>

// Compiled for AVX2 only (no FMA) so that mul+add is never contracted.
#define INVCLUST_AVX2 __attribute__((target("avx2")))

namespace invclust::kernels::avx2 {
namespace {

// (l0 + l2) + (l1 + l3), matching the scalar lane combination.
INVCLUST_AVX2 inline double combine(__m256d lanes) {
  __m128d lo = _mm256_castpd256_pd128(lanes);
  __m128d hi = _mm256_extractf128_pd(lanes, 1);
  __m128d pair = _mm_add_pd(lo, hi);
  __m128d swapped = _mm_unpackhi_pd(pair, pair);
  return _mm_cvtsd_f64(_mm_add_sd(pair, swapped));
}

}  // namespace

INVCLUST_AVX2 double squared_distance(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
  }
  double total = combine(acc);
  for (; i < n; ++i) {
    double d = a[i] - b[i];
    total = total + d * d;
  }
  return total;
}

INVCLUST_AVX2 double sum(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
  double total = combine(acc);
  for (; i < n; ++i) total = total + x[i];
  return total;
}

INVCLUST_AVX2 void accumulate(double* acc, const double* x, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(acc + i, _mm256_add_pd(_mm256_loadu_pd(acc + i), _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) acc[i] = acc[i] + x[i];
}

INVCLUST_AVX2 void scale(double* x, double factor, std::size_t n) {
  __m256d f = _mm256_set1_pd(factor);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(x + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), f));
  for (; i < n; ++i) x[i] = x[i] * factor;
}

}  // namespace invclust::kernels::avx2

#endif
