#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "texfis/simd/kernels.hpp"

using namespace texfis::simd;

namespace {

std::vector<const Kernels*> vector_tables() {
  std::vector<const Kernels*> out;
  for (Isa isa : {Isa::Avx2, Isa::Neon})
    if (const Kernels* k = kernels_for(isa)) out.push_back(k);
  return out;
}

} // namespace

TEST(Simd, ActiveTableIsUsable) {
  const auto& k = active();
  EXPECT_FALSE(isa_name(k.isa).empty());
  EXPECT_EQ(kernels_for(Isa::Scalar), &scalar::table);
}

TEST(Simd, FloatingKernelsMatchScalar) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (const Kernels* k : vector_tables()) {
    SCOPED_TRACE(std::string(isa_name(k->isa)));
    for (std::size_t n = 0; n < 70; ++n) {
      std::vector<double> a(n), b(n);
      for (auto& v : a) v = u(rng);
      for (auto& v : b) v = u(rng);
      double mag_dot = 0.0, mag_dist = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        mag_dot += std::abs(a[i] * b[i]);
        mag_dist += (a[i] - b[i]) * (a[i] - b[i]);
      }
      const double eps = 1e-14;
      EXPECT_NEAR(k->dot(a, b), scalar::table.dot(a, b), eps * (1 + mag_dot));
      EXPECT_NEAR(k->squared_distance(a, b), scalar::table.squared_distance(a, b), eps * (1 + mag_dist));
    }
  }
}

TEST(Simd, IntegerKernelsMatchScalarExactly) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> px(0, 65535);
  std::uniform_int_distribution<int> bit(0, 1);
  for (const Kernels* k : vector_tables()) {
    SCOPED_TRACE(std::string(isa_name(k->isa)));
    for (std::size_t n : {0u, 1u, 15u, 16u, 17u, 31u, 32u, 33u, 100u, 1000u}) {
      std::vector<std::uint16_t> v(n);
      for (auto& x : v) x = static_cast<std::uint16_t>(px(rng));
      for (std::uint32_t t : {0u, 1u, 255u, 32768u, 40000u, 65535u, 65536u}) {
        std::vector<std::uint8_t> got(n), want(n);
        k->threshold_ge(v, t, got);
        scalar::table.threshold_ge(v, t, want);
        EXPECT_EQ(got, want) << "n=" << n << " t=" << t;
      }
      std::vector<std::uint8_t> a(n), b(n);
      for (auto& x : a) x = static_cast<std::uint8_t>(bit(rng));
      for (auto& x : b) x = static_cast<std::uint8_t>(bit(rng));
      auto a1 = a, a2 = a;
      k->and_inplace(a1, b);
      scalar::table.and_inplace(a2, b);
      EXPECT_EQ(a1, a2);
      a1 = a;
      a2 = a;
      k->or_inplace(a1, b);
      scalar::table.or_inplace(a2, b);
      EXPECT_EQ(a1, a2);
    }
  }
}

TEST(Simd, ScalarReferenceValues) {
  const std::vector<double> a{1, 2, 3}, b{4, 5, 6};
  EXPECT_EQ(scalar::table.dot(a, b), 32.0);
  EXPECT_EQ(scalar::table.squared_distance(a, b), 27.0);
}
