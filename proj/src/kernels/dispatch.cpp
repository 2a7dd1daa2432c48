#include <cstdlib>
#include <string_view>

#include "kernels_impl.hpp"

namespace simnoise::kernels {
namespace {

bool CpuHasAvx2Fma() {
#if defined(SIMNOISE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable& Select() {
  const KernelTable* best = &scalar_table();
  if (const KernelTable* t = avx2_table()) best = t;
  if (const KernelTable* t = neon_table()) best = t;

  const char* env = std::getenv("SIMNOISE_KERNELS");
  if (env == nullptr) return *best;
  const std::string_view want(env);
  if (want == "scalar") return scalar_table();
  if (want == "avx2" && avx2_table() != nullptr) return *avx2_table();
  if (want == "neon" && neon_table() != nullptr) return *neon_table();
  return scalar_table();
}

}  // namespace

const KernelTable& scalar_table() { return detail::kScalarTable; }

const KernelTable* avx2_table() {
#if defined(SIMNOISE_HAVE_AVX2)
  static const bool supported = CpuHasAvx2Fma();
  return supported ? &detail::kAvx2Table : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable* neon_table() {
#if defined(SIMNOISE_HAVE_NEON)
  return &detail::kNeonTable;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable& selected = Select();
  return selected;
}

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
    case Isa::kNeon: return "neon";
  }
  return "unknown";
}

}  // namespace simnoise::kernels
