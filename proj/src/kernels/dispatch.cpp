#include <cstdlib>
#include <stdexcept>
#include <string>

#include "invclust/kernels.hpp"
#include "kernels_impl.hpp"

namespace invclust::kernels {
namespace {

constexpr KernelTable kScalar{scalar::squared_distance, scalar::sum, scalar::accumulate, scalar::scale};
#if INVCLUST_HAVE_AVX2_KERNELS
constexpr KernelTable kAvx2{avx2::squared_distance, avx2::sum, avx2::accumulate, avx2::scale};
#endif
#if INVCLUST_HAVE_NEON_KERNELS
constexpr KernelTable kNeon{neon::squared_distance, neon::sum, neon::accumulate, neon::scale};
#endif

bool cpu_has_avx2() {
#if INVCLUST_HAVE_AVX2_KERNELS && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa select() {
  if (const char* forced = std::getenv("INVCLUST_SIMD"); forced && std::string(forced) == "scalar")
    return Isa::Scalar;
  auto isas = available_isas();
  return isas.back();
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "?";
}

std::vector<Isa> available_isas() {
  std::vector<Isa> isas{Isa::Scalar};
  if (cpu_has_avx2()) isas.push_back(Isa::Avx2);
#if INVCLUST_HAVE_NEON_KERNELS
  isas.push_back(Isa::Neon);
#endif
  return isas;
}

const KernelTable& table_for(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return kScalar;
#if INVCLUST_HAVE_AVX2_KERNELS
    case Isa::Avx2:
      return kAvx2;
#endif
#if INVCLUST_HAVE_NEON_KERNELS
    case Isa::Neon:
      return kNeon;
#endif
    default:
      throw std::invalid_argument("kernel variant not compiled in: " + std::string(isa_name(isa)));
  }
}

Isa active_isa() {
  static const Isa isa = select();
  return isa;
}

const KernelTable& active() {
  static const KernelTable& table = table_for(active_isa());
  return table;
}

}  // namespace invclust::kernels
