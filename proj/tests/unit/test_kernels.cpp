#include <doctest.h>

#include <bit>
#include <cstdint>
#include <random>

#include "invclust/kernels.hpp"

using namespace invclust::kernels;

namespace {

std::vector<double> random_vector(std::mt19937_64& gen, std::size_t n) {
  std::uniform_real_distribution<double> dist(-1e3, 1e3);
  std::vector<double> v(n);
  for (auto& x : v) x = dist(gen);
  return v;
}

bool same_bits(double a, double b) { return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b); }

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!same_bits(a[i], b[i])) return false;
  return true;
}

}  // namespace

TEST_CASE("scalar is always available") {
  auto isas = available_isas();
  REQUIRE_FALSE(isas.empty());
  CHECK(isas.front() == Isa::Scalar);
  CHECK(isa_name(Isa::Scalar) == "scalar");
}

TEST_CASE("scalar reduction order") {
  std::vector<double> x{1e16, 1.0, -1e16, 1.0, 3.0};
  // (l0 + l2) + (l1 + l3) + tail = (1e16 - 1e16) + (1 + 1) + 3
  CHECK(table_for(Isa::Scalar).sum(x.data(), x.size()) == 5.0);
}

TEST_CASE("every variant matches the scalar reference bit for bit") {
  const KernelTable& ref = table_for(Isa::Scalar);
  std::mt19937_64 gen(71);
  for (Isa isa : available_isas()) {
    CAPTURE(isa_name(isa));
    const KernelTable& t = table_for(isa);
    for (std::size_t n = 0; n <= 67; ++n) {
      auto a = random_vector(gen, n);
      auto b = random_vector(gen, n);
      CHECK(same_bits(t.squared_distance(a.data(), b.data(), n), ref.squared_distance(a.data(), b.data(), n)));
      CHECK(same_bits(t.sum(a.data(), n), ref.sum(a.data(), n)));
      auto acc1 = a, acc2 = a;
      t.accumulate(acc1.data(), b.data(), n);
      ref.accumulate(acc2.data(), b.data(), n);
      CHECK(same_bits(acc1, acc2));
      auto s1 = a, s2 = a;
      t.scale(s1.data(), 0.37, n);
      ref.scale(s2.data(), 0.37, n);
      CHECK(same_bits(s1, s2));
    }
  }
}

TEST_CASE("active variant is one of the available ones") {
  auto isas = available_isas();
  CHECK(std::find(isas.begin(), isas.end(), active_isa()) != isas.end());
  std::vector<double> a{1.0, 2.0, 3.0}, b{1.0, 0.0, 0.0};
  CHECK(squared_distance(a, b) == 13.0);
}
