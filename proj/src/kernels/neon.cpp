// aarch64 always has Advanced SIMD with double-precision lanes.
#include <arm_neon.h>

#include "kernels_impl.hpp"

namespace simnoise::kernels::detail {
namespace {

double SumSquares(const double* x, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    float64x2_t a = vld1q_f64(x + i);
    float64x2_t b = vld1q_f64(x + i + 2);
    acc0 = vfmaq_f64(acc0, a, a);
    acc1 = vfmaq_f64(acc1, b, b);
  }
  double total = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) total += x[i] * x[i];
  return total;
}

double Dot(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
  }
  double total = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) total += a[i] * b[i];
  return total;
}

void Dot2(const double* x, const double* c, const double* s, std::size_t n,
          double* re, double* im) {
  float64x2_t acc_re = vdupq_n_f64(0.0);
  float64x2_t acc_im = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t xv = vld1q_f64(x + i);
    acc_re = vfmaq_f64(acc_re, xv, vld1q_f64(c + i));
    acc_im = vfmaq_f64(acc_im, xv, vld1q_f64(s + i));
  }
  double total_re = vaddvq_f64(acc_re);
  double total_im = vaddvq_f64(acc_im);
  for (; i < n; ++i) {
    total_re += x[i] * c[i];
    total_im += x[i] * s[i];
  }
  *re = total_re;
  *im = total_im;
}

void Subtract(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(out + i, vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  }
  for (; i < n; ++i) out[i] = a[i] - b[i];
}

void Accumulate(double* acc, const double* x, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(acc + i, vaddq_f64(vld1q_f64(acc + i), vld1q_f64(x + i)));
  }
  for (; i < n; ++i) acc[i] += x[i];
}

void Scale(double* x, double factor, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(x + i, vmulq_n_f64(vld1q_f64(x + i), factor));
  }
  for (; i < n; ++i) x[i] *= factor;
}

}  // namespace

const KernelTable kNeonTable{Isa::kNeon, "neon", &SumSquares, &Dot,
                             &Dot2,      &Subtract, &Accumulate, &Scale};

}  // namespace simnoise::kernels::detail
