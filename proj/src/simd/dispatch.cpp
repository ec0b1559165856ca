#include "texfis/simd/kernels.hpp"

#include <cstdlib>
#include <string>

namespace texfis::simd {

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
  case Isa::Scalar: return "scalar";
  case Isa::Avx2: return "avx2";
  case Isa::Neon: return "neon";
  }
  return "unknown";
}

const Kernels* kernels_for(Isa isa) noexcept {
  switch (isa) {
  case Isa::Scalar: return &scalar::table;
  case Isa::Avx2:
#if defined(__x86_64__) || defined(_M_X64)
    if (__builtin_cpu_supports("avx2")) return avx2::table();
#endif
    return nullptr;
  case Isa::Neon: return neon::table();
  }
  return nullptr;
}

namespace {

const Kernels& select() noexcept {
  if (const char* env = std::getenv("TEXFIS_SIMD"); env && std::string(env) == "scalar")
    return scalar::table;
  for (Isa isa : {Isa::Avx2, Isa::Neon})
    if (const Kernels* k = kernels_for(isa)) return *k;
  return scalar::table;
}

} // namespace

const Kernels& active() noexcept {
  static const Kernels& chosen = select();
  return chosen;
}

} // namespace texfis::simd
