#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "simnoise/signal.hpp"

namespace simnoise {

// A repeatable disturbance A * sin(2 pi f t + phase) added to every trial.
struct DeterministicTerm {
  double frequency_hz = 0.0;
  double amplitude = 0.0;  // m/s^2, >= 0
  double phase_rad = 0.0;

  friend bool operator==(const DeterministicTerm&, const DeterministicTerm&) = default;
};

struct SynthSpec {
  CommandSpec command;
  std::vector<DeterministicTerm> deterministic_terms;
  double stochastic_sigma = 0.0;  // white Gaussian, per sample, m/s^2
  std::size_t n_trials = 20;
  double sample_rate_hz = 500.0;
  double duration_s = 1.0;
  std::uint64_t seed = 0;

  std::size_t samples_per_trial() const;

  friend bool operator==(const SynthSpec&, const SynthSpec&) = default;
};

// Recorded in generated-data metadata.
inline constexpr std::string_view kSynthGeneratorName = "mt19937_64/box-muller";

// ParameterError on negative amplitudes or sigma, zero trials, or a rate /
// duration that yields no samples.
void validate(const SynthSpec& spec);

// Sum of the deterministic terms on the spec's sample grid.
std::vector<double> render_deterministic(const SynthSpec& spec);

// trial_i = command + deterministic terms + N(0, sigma^2) per sample, with the
// noise of all trials drawn in order from one generator seeded with spec.seed.
// The engine is std::mt19937_64, whose output sequence the standard fixes, and
// the Gaussian transform is written out here instead of relying on the
// implementation-defined std::normal_distribution. Same seed gives bit-identical
// output on a given platform; across platforms it differs at most by libm
// rounding in log/sin/cos.
TrialSet generate_trialset(const SynthSpec& spec, std::string label);

// Standard-normal deviates; exposed for tests.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed);
  double next();

 private:
  double Uniform();  // (0, 1], 53 bits

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace simnoise
