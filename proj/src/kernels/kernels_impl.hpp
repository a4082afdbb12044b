#pragma once

#include <cstddef>

#if defined(__x86_64__) || defined(_M_X64)
#define INVCLUST_HAVE_AVX2_KERNELS 1
#else
#define INVCLUST_HAVE_AVX2_KERNELS 0
#endif

#if defined(__aarch64__) || defined(__ARM_NEON)
#define INVCLUST_HAVE_NEON_KERNELS 1
#else
#define INVCLUST_HAVE_NEON_KERNELS 0
#endif

namespace invclust::kernels {

namespace scalar {
double squared_distance(const double* a, const double* b, std::size_t n);
double sum(const double* x, std::size_t n);
void accumulate(double* acc, const double* x, std::size_t n);
void scale(double* x, double factor, std::size_t n);
}  // namespace scalar

#if INVCLUST_HAVE_AVX2_KERNELS
namespace avx2 {
double squared_distance(const double* a, const double* b, std::size_t n);
double sum(const double* x, std::size_t n);
void accumulate(double* acc, const double* x, std::size_t n);
void scale(double* x, double factor, std::size_t n);
}  // namespace avx2
#endif

#if INVCLUST_HAVE_NEON_KERNELS
namespace neon {
double squared_distance(const double* a, const double* b, std::size_t n);
double sum(const double* x, std::size_t n);
void accumulate(double* acc, const double* x, std::size_t n);
void scale(double* x, double factor, std::size_t n);
}  // namespace neon
#endif

}  // namespace invclust::kernels
