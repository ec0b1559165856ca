#include "texfis/simd/kernels.hpp"

namespace texfis::simd::scalar {
namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

void threshold_ge(std::span<const std::uint16_t> px, std::uint32_t threshold,
                  std::span<std::uint8_t> out) {
  for (std::size_t i = 0; i < px.size(); ++i) out[i] = px[i] >= threshold ? 1 : 0;
}

void and_inplace(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] &= src[i];
}

void or_inplace(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] |= src[i];
}

} // namespace

const Kernels table{Isa::Scalar, dot, squared_distance, threshold_ge, and_inplace, or_inplace};

} // namespace texfis::simd::scalar
