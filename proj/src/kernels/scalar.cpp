#include "kernels_impl.hpp"

namespace simnoise::kernels::detail {
namespace {

double SumSquares(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * x[i];
  return acc;
}

double Dot(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void Dot2(const double* x, const double* c, const double* s, std::size_t n,
          double* re, double* im) {
  double acc_re = 0.0;
  double acc_im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc_re += x[i] * c[i];
    acc_im += x[i] * s[i];
  }
  *re = acc_re;
  *im = acc_im;
}

void Subtract(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] - b[i];
}

void Accumulate(double* acc, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) acc[i] += x[i];
}

void Scale(double* x, double factor, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= factor;
}

}  // namespace

const KernelTable kScalarTable{Isa::kScalar, "scalar", &SumSquares, &Dot,
                               &Dot2,        &Subtract, &Accumulate, &Scale};

}  // namespace simnoise::kernels::detail
