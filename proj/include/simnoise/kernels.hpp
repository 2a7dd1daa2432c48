#pragma once
// Data-parallel inner loops used by the analysis code.
//
// Every kernel has a scalar reference implementation and, where the target
// supports it, an AVX2/FMA (x86-64) or NEON (aarch64) variant. The variant is
// picked once per process from the CPU feature bits; setting the environment
// variable SIMNOISE_KERNELS=scalar|avx2|neon before the first call overrides
// the choice (unsupported requests fall back to scalar).
//
// SIMD variants reassociate the reductions, so results agree with the scalar
// path to rounding (a few ulp times log n), not bit-for-bit. Within one process
// the selection is fixed, so repeated runs are reproducible.

#include <cstddef>
#include <span>
#include <string_view>

namespace simnoise::kernels {

enum class Isa { kScalar, kAvx2, kNeon };

struct KernelTable {
  Isa isa;
  const char* name;
  // sum x[i]^2
  double (*sum_squares)(const double* x, std::size_t n);
  // sum a[i]*b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // re = sum x[i]*c[i], im = sum x[i]*s[i]; one pass for a DFT line
  void (*dot2)(const double* x, const double* c, const double* s,
               std::size_t n, double* re, double* im);
  // out[i] = a[i] - b[i]; out may alias a or b
  void (*subtract)(const double* a, const double* b, double* out,
                   std::size_t n);
  // acc[i] += x[i]
  void (*accumulate)(double* acc, const double* x, std::size_t n);
  // x[i] *= factor
  void (*scale)(double* x, double factor, std::size_t n);
};

const KernelTable& scalar_table();

// nullptr when the variant was not compiled in or the CPU lacks the feature.
const KernelTable* avx2_table();
const KernelTable* neon_table();

// The process-wide selection.
const KernelTable& active();

std::string_view isa_name(Isa isa);

inline double sum_squares(std::span<const double> x) {
  return active().sum_squares(x.data(), x.size());
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}

inline void subtract(std::span<const double> a, std::span<const double> b,
                     std::span<double> out) {
  active().subtract(a.data(), b.data(), out.data(), out.size());
}

inline void accumulate(std::span<double> acc, std::span<const double> x) {
  active().accumulate(acc.data(), x.data(), acc.size());
}

inline void scale(std::span<double> x, double factor) {
  active().scale(x.data(), factor, x.size());
}

}  // namespace simnoise::kernels
