#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "simnoise/signal.hpp"

namespace simnoise {

// One-sided amplitude spectrum sampled on uniform bins centred at
// 0, w, 2w, ..., covering [0, f_max].
struct SpectrumBins {
  std::vector<double> bin_centers_hz;
  std::vector<double> amplitudes;  // m/s^2
  double bin_width_hz = 1.0;

  std::size_t size() const noexcept { return amplitudes.size(); }
};

// Direct DFT over a fixed record length. Twiddles are tabulated once so lines
// at integer indices are exact to rounding; the per-line inner product runs on
// the dispatched SIMD kernel.
class DftPlan {
 public:
  explicit DftPlan(std::size_t n);

  std::size_t size() const noexcept { return cos_.size(); }

  // X_k = sum_n x[n] exp(-2 pi i k n / N)
  std::complex<double> line(std::span<const double> x, std::size_t k) const;

  // sum_n x[n] exp(-2 pi i f n / Fs) for an arbitrary frequency
  static std::complex<double> at_frequency(std::span<const double> x,
                                           double frequency_hz,
                                           double sample_rate_hz);

 private:
  std::vector<double> cos_;
  std::vector<double> sin_;
};

// |X_k / N|^2 for k = 0..N-1. Sums to rms^2 (Parseval).
std::vector<double> two_sided_power_spectrum(const Signal& signal);

// Rectangular window, one-sided scaling 2/N (1/N at DC and Nyquist) so a
// sinusoid of amplitude A on a bin centre reads A. Lines inside a bin
// [c - w/2, c + w/2) are averaged; a bin that holds no line reports the DTFT
// evaluated at its centre. ParameterError if f_max is negative or above
// Nyquist, or bin width <= 0.
SpectrumBins amplitude_spectrum(const Signal& noise, double f_max_hz,
                                double bin_width_hz);

// amplitude_spectrum applied to each signal, output in input order. The
// signals must be aligned (AlignmentError).
std::vector<SpectrumBins> spectrum_set(std::span<const Signal> signals,
                                       double f_max_hz, double bin_width_hz);

// Per-bin mean and sample standard deviation over a group of spectra that
// share bins.
struct SpectrumSummary {
  std::vector<double> bin_centers_hz;
  std::vector<double> mean;
  std::vector<double> stddev;
};

SpectrumSummary summarize(std::span<const SpectrumBins> spectra);

}  // namespace simnoise
