#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "simnoise/signal.hpp"

namespace simnoise {

// One second-order section, transposed direct form II:
//   y[k] = b0 x[k] + z1;  z1 = b1 x[k] - a1 y[k] + z2;  z2 = b2 x[k] - a2 y[k]
struct Biquad {
  double b0 = 1.0, b1 = 0.0, b2 = 0.0;
  double a1 = 0.0, a2 = 0.0;

  double dc_gain() const noexcept { return (b0 + b1 + b2) / (1.0 + a1 + a2); }
};

// Digital Butterworth low-pass of even `order` as order/2 biquads, obtained by
// the bilinear transform with the cutoff prewarped so the -3 dB point lands on
// cutoff_hz. Throws ParameterError unless 0 < cutoff_hz < sample_rate_hz / 2.
std::vector<Biquad> design_butterworth_lowpass(int order, double cutoff_hz,
                                               double sample_rate_hz);

// Single forward pass through the cascade. `initial_level` sets every section
// to its steady state for a constant input of that value.
std::vector<double> cascade_filter(std::span<const Biquad> sections,
                                   std::span<const double> x,
                                   double initial_level);

// Forward-backward application (zero phase, squared magnitude response).
// Edges are extended by odd reflection over `pad` samples (capped at n - 1) and
// each pass starts from steady state, so a constant input comes back unchanged.
std::vector<double> zero_phase_filter(std::span<const Biquad> sections,
                                      std::span<const double> x, std::size_t pad);

inline constexpr int kDefaultFilterOrder = 4;

// Zero-phase 4th-order Butterworth low-pass with padding of 3 filter lengths.
// Same length and rate as the input. ParameterError if the cutoff is outside
// (0, Nyquist).
Signal lowpass_filter(const Signal& signal, double cutoff_hz);

}  // namespace simnoise
