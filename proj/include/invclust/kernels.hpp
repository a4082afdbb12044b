#pragma once

#include <span>
#include <string_view>
#include <vector>

// Dense double-precision kernels used by vectorisation and clustering.
//
// Every variant reduces in the same order: four interleaved lane sums over
// the blocked prefix (element i goes to lane i % 4), combined as
// (lane0 + lane2) + (lane1 + lane3), then the tail added left to right. No
// fused multiply-add is used, so all variants agree bit for bit with the
// scalar reference.
namespace invclust::kernels {

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa);

struct KernelTable {
  double (*squared_distance)(const double* a, const double* b, std::size_t n);
  double (*sum)(const double* x, std::size_t n);
  void (*accumulate)(double* acc, const double* x, std::size_t n);  // acc += x
  void (*scale)(double* x, double factor, std::size_t n);           // x *= factor
};

// Variants compiled into this binary and supported by the running CPU.
std::vector<Isa> available_isas();
const KernelTable& table_for(Isa isa);

// Chosen once: the widest available variant, unless INVCLUST_SIMD=scalar.
Isa active_isa();
const KernelTable& active();

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
  return active().squared_distance(a.data(), b.data(), a.size());
}
inline double sum(std::span<const double> x) { return active().sum(x.data(), x.size()); }
inline void accumulate(std::span<double> acc, std::span<const double> x) {
  active().accumulate(acc.data(), x.data(), acc.size());
}
inline void scale(std::span<double> x, double factor) { active().scale(x.data(), factor, x.size()); }

}  // namespace invclust::kernels
