#include "texfis/simd/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

#define TEXFIS_AVX2 __attribute__((target("avx2")))

namespace texfis::simd::avx2 {
namespace {

TEXFIS_AVX2 double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

TEXFIS_AVX2 double dot(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(&a[i]), _mm256_loadu_pd(&b[i])));
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(_mm256_loadu_pd(&a[i + 4]), _mm256_loadu_pd(&b[i + 4])));
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(&a[i]), _mm256_loadu_pd(&b[i])));
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

TEXFIS_AVX2 double squared_distance(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(&a[i]), _mm256_loadu_pd(&b[i]));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
  }
  double s = hsum(acc);
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

TEXFIS_AVX2 void threshold_ge(std::span<const std::uint16_t> px, std::uint32_t threshold,
                              std::span<std::uint8_t> out) {
  const std::size_t n = px.size();
  std::size_t i = 0;
  if (threshold > 0xffff) {
    for (; i < n; ++i) out[i] = 0;
    return;
  }
  const __m256i t = _mm256_set1_epi16(static_cast<short>(threshold));
  const __m128i one = _mm_set1_epi8(1);
  for (; i + 16 <= n; i += 16) {
    const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(&px[i]));
    // v >= t  <=>  max(v, t) == v  (unsigned)
    const __m256i ge = _mm256_cmpeq_epi16(_mm256_max_epu16(v, t), v);
    const __m128i packed = _mm_packs_epi16(_mm256_castsi256_si128(ge), _mm256_extracti128_si256(ge, 1));
    _mm_storeu_si128(reinterpret_cast<__m128i*>(&out[i]), _mm_and_si128(packed, one));
  }
  for (; i < n; ++i) out[i] = px[i] >= threshold ? 1 : 0;
}

TEXFIS_AVX2 void and_inplace(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src) {
  const std::size_t n = dst.size();
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    auto* d = reinterpret_cast<__m256i*>(&dst[i]);
    const __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(&src[i]));
    _mm256_storeu_si256(d, _mm256_and_si256(_mm256_loadu_si256(d), s));
  }
  for (; i < n; ++i) dst[i] &= src[i];
}

TEXFIS_AVX2 void or_inplace(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src) {
  const std::size_t n = dst.size();
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    auto* d = reinterpret_cast<__m256i*>(&dst[i]);
    const __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(&src[i]));
    _mm256_storeu_si256(d, _mm256_or_si256(_mm256_loadu_si256(d), s));
  }
  for (; i < n; ++i) dst[i] |= src[i];
}

const Kernels kTable{Isa::Avx2, dot, squared_distance, threshold_ge, and_inplace, or_inplace};

} // namespace

const Kernels* table() noexcept { return &kTable; }

} // namespace texfis::simd::avx2

#else

namespace texfis::simd::avx2 {
const Kernels* table() noexcept { return nullptr; }
}

#endif
