#pragma once

// Naive one-sided DFT amplitude with angles computed per sample in long
// double; no twiddle table.

#include <cmath>
#include <complex>
#include <vector>

namespace oracle {

inline std::complex<long double> DftLine(const std::vector<double>& x, std::size_t k) {
  const std::size_t n = x.size();
  const long double pi = 3.14159265358979323846264338327950288L;
  long double re = 0.0L, im = 0.0L;
  for (std::size_t m = 0; m < n; ++m) {
    const long double ph = -2.0L * pi * static_cast<long double>((k * m) % n) / n;
    re += x[m] * std::cos(ph);
    im += x[m] * std::sin(ph);
  }
  return {re, im};
}

inline double OneSidedAmplitude(const std::vector<double>& x, std::size_t k) {
  const std::size_t n = x.size();
  const long double scale = (k == 0 || 2 * k == n) ? 1.0L / n : 2.0L / n;
  return static_cast<double>(scale * std::abs(DftLine(x, k)));
}

}  // namespace oracle
