#include "texfis/simd/kernels.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>

namespace texfis::simd::neon {
namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vaddq_f64(acc0, vmulq_f64(vld1q_f64(&a[i]), vld1q_f64(&b[i])));
    acc1 = vaddq_f64(acc1, vmulq_f64(vld1q_f64(&a[i + 2]), vld1q_f64(&b[i + 2])));
  }
  double s = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t d = vsubq_f64(vld1q_f64(&a[i]), vld1q_f64(&b[i]));
    acc = vaddq_f64(acc, vmulq_f64(d, d));
  }
  double s = vaddvq_f64(acc);
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

void threshold_ge(std::span<const std::uint16_t> px, std::uint32_t threshold,
                  std::span<std::uint8_t> out) {
  const std::size_t n = px.size();
  std::size_t i = 0;
  if (threshold > 0xffff) {
    for (; i < n; ++i) out[i] = 0;
    return;
  }
  const uint16x8_t t = vdupq_n_u16(static_cast<std::uint16_t>(threshold));
  const uint8x8_t one = vdup_n_u8(1);
  for (; i + 8 <= n; i += 8) {
    const uint16x8_t ge = vcgeq_u16(vld1q_u16(&px[i]), t);
    vst1_u8(&out[i], vand_u8(vmovn_u16(ge), one));
  }
  for (; i < n; ++i) out[i] = px[i] >= threshold ? 1 : 0;
}

void and_inplace(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src) {
  const std::size_t n = dst.size();
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) vst1q_u8(&dst[i], vandq_u8(vld1q_u8(&dst[i]), vld1q_u8(&src[i])));
  for (; i < n; ++i) dst[i] &= src[i];
}

void or_inplace(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src) {
  const std::size_t n = dst.size();
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) vst1q_u8(&dst[i], vorrq_u8(vld1q_u8(&dst[i]), vld1q_u8(&src[i])));
  for (; i < n; ++i) dst[i] |= src[i];
}

const Kernels kTable{Isa::Neon, dot, squared_distance, threshold_ge, and_inplace, or_inplace};

} // namespace

const Kernels* table() noexcept { return &kTable; }

} // namespace texfis::simd::neon

#else

namespace texfis::simd::neon {
const Kernels* table() noexcept { return nullptr; }
}

#endif
