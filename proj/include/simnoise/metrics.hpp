#pragma once

#include <span>
#include <vector>

#include "simnoise/decomposition.hpp"
#include "simnoise/signal.hpp"

namespace simnoise {

// Quadratic mean sqrt(sum x^2 / N). ParameterError on empty input.
double rms(std::span<const double> samples);
inline double rms(const Signal& s) { return rms(s.samples()); }

// A ratio whose denominator may vanish. When `degenerate` is set, `value` is
// +inf for a positive numerator and NaN for 0/0.
struct Ratio {
  double value = 0.0;
  bool degenerate = false;
};

// (rms(command) / rms(noise))^2
Ratio snr(const Signal& command, const Signal& total_noise);

enum class StochasticPooling {
  kPooledSamples,  // one rms over every sample of every trial
  kMeanOfTrialRms, // arithmetic mean of per-trial rms values
};

// sqrt(sum_i sum_k s_i[k]^2 / (T*N)) or the mean of per-trial rms.
double stochastic_rms(std::span<const Signal> stochastic,
                      StochasticPooling pooling = StochasticPooling::kPooledSamples);

// rms(deterministic) / stochastic_rms(stochastic)
Ratio dsr(const NoiseDecomposition& decomposition,
          StochasticPooling pooling = StochasticPooling::kPooledSamples);

}  // namespace simnoise
