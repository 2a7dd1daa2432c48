#pragma once

#include <optional>
#include <vector>

#include "simnoise/signal.hpp"

namespace simnoise {

// total_i = filtered trial_i - command
// deterministic = per-sample mean of total_i over trials
// stochastic_i = total_i - deterministic
//
// All members share length and rate; deterministic + stochastic_i reproduces
// total_i and the per-sample trial mean of stochastic is zero, both to rounding.
struct NoiseDecomposition {
  std::vector<Signal> total;
  Signal deterministic;
  std::vector<Signal> stochastic;
  // Set when the fundamental was least-squares fitted per trial instead of
  // subtracting the nominal command.
  bool fundamental_fitted = false;

  std::size_t trial_count() const noexcept { return total.size(); }
};

struct DecomposeOptions {
  // nullopt skips filtering (input already band-limited, or ground-truth tests).
  std::optional<double> cutoff_hz = 80.0;
  bool fit_fundamental = false;
};

// Pointwise trial - command; AlignmentError on length/rate mismatch.
Signal total_noise(const Signal& trial, const Signal& command);

// Least-squares a*sin(2 pi f t) + b*cos(2 pi f t) fit to `trace`, rendered on
// the same grid.
Signal fit_fundamental(const Signal& trace, double frequency_hz);

// Splits already-extracted total noise traces. Needs >= 2 aligned traces.
NoiseDecomposition decompose_total_noise(std::vector<Signal> total);

// Full pipeline for one trial set: filter, subtract command, split.
// Throws InsufficientRepetitionsError for fewer than 2 trials and
// ParameterError when fit_fundamental is requested for a sampled command.
NoiseDecomposition decompose(const TrialSet& trials, const DecomposeOptions& options);

inline NoiseDecomposition decompose(const TrialSet& trials, double cutoff_hz) {
  return decompose(trials, DecomposeOptions{cutoff_hz, false});
}

}  // namespace simnoise
