#include "kernels_impl.hpp"

#if INVCLUST_HAVE_NEON_KERNELS

#include <arm_neon.h>

// Two float64x2 registers hold lanes {0,1} and {2,3}. vfmaq is avoided so the
// results match the scalar reference exactly.
namespace invclust::kernels::neon {

double squared_distance(const double* a, const double* b, std::size_t n) {
  float64x2_t acc01 = vdupq_n_f64(0.0);
  float64x2_t acc23 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    float64x2_t d01 = vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
    float64x2_t d23 = vsubq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
    acc01 = vaddq_f64(acc01, vmulq_f64(d01, d01));
    acc23 = vaddq_f64(acc23, vmulq_f64(d23, d23));
  }
  float64x2_t pair = vaddq_f64(acc01, acc23);  // (l0 + l2, l1 + l3)
  double total = vgetq_lane_f64(pair, 0) + vgetq_lane_f64(pair, 1);
  for (; i < n; ++i) {
    double d = a[i] - b[i];
    total = total + d * d;
  }
  return total;
}

double sum(const double* x, std::size_t n) {
  float64x2_t acc01 = vdupq_n_f64(0.0);
  float64x2_t acc23 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc01 = vaddq_f64(acc01, vld1q_f64(x + i));
    acc23 = vaddq_f64(acc23, vld1q_f64(x + i + 2));
  }
  float64x2_t pair = vaddq_f64(acc01, acc23);
  double total = vgetq_lane_f64(pair, 0) + vgetq_lane_f64(pair, 1);
  for (; i < n; ++i) total = total + x[i];
  return total;
}

void accumulate(double* acc, const double* x, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(acc + i, vaddq_f64(vld1q_f64(acc + i), vld1q_f64(x + i)));
  for (; i < n; ++i) acc[i] = acc[i] + x[i];
}

void scale(double* x, double factor, std::size_t n) {
  float64x2_t f = vdupq_n_f64(factor);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(x + i, vmulq_f64(vld1q_f64(x + i), f));
  for (; i < n; ++i) x[i] = x[i] * factor;
}

}  // namespace invclust::kernels::neon

#endif
