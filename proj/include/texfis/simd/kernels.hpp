#pragma once

// Data-parallel inner loops shared by the texture, morphology, and
// classifier code. Each kernel has a scalar reference implementation and
// vector variants (AVX2 on x86-64, NEON on AArch64); the active set is
// picked once at startup from the CPU's capabilities.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace texfis::simd {

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa) noexcept;

/// Kernel table. Every entry obeys the same contract as its scalar reference;
/// floating-point reductions may differ from it by reassociation only.
struct Kernels {
  Isa isa;
  double (*dot)(std::span<const double> a, std::span<const double> b);
  double (*squared_distance)(std::span<const double> a, std::span<const double> b);
  // out[i] = (px[i] >= threshold) for an integer threshold in [0, 65536].
  void (*threshold_ge)(std::span<const std::uint16_t> px, std::uint32_t threshold,
                       std::span<std::uint8_t> out);
  // dst[i] &= src[i] / dst[i] |= src[i]
  void (*and_inplace)(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src);
  void (*or_inplace)(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src);
};

/// Best table supported by the running CPU. TEXFIS_SIMD=scalar forces the
/// reference kernels.
const Kernels& active() noexcept;

/// Table for a specific ISA, or nullptr when the CPU (or build) lacks it.
const Kernels* kernels_for(Isa isa) noexcept;

namespace scalar {
extern const Kernels table;
}
namespace avx2 {
// nullptr unless built for x86-64.
const Kernels* table() noexcept;
}
namespace neon {
// nullptr unless built for AArch64.
const Kernels* table() noexcept;
}

inline double dot(std::span<const double> a, std::span<const double> b) { return active().dot(a, b); }

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
  return active().squared_distance(a, b);
}

} // namespace texfis::simd
