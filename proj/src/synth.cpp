#include "simnoise/synth.hpp"

#include <cmath>
#include <numbers>

#include "simnoise/error.hpp"

namespace simnoise {

std::size_t SynthSpec::samples_per_trial() const {
  return static_cast<std::size_t>(std::llround(duration_s * sample_rate_hz));
}

void validate(const SynthSpec& spec) {
  validate(spec.command);
  if (!(spec.sample_rate_hz > 0.0 && std::isfinite(spec.sample_rate_hz))) {
    throw ParameterError("synth sample rate must be > 0");
  }
  if (!(spec.duration_s > 0.0 && std::isfinite(spec.duration_s))) {
    throw ParameterError("synth duration must be > 0");
  }
  if (spec.samples_per_trial() == 0) throw ParameterError("synth duration yields no samples");
  if (spec.n_trials == 0) throw ParameterError("synth needs at least 1 trial");
  if (!(spec.stochastic_sigma >= 0.0 && std::isfinite(spec.stochastic_sigma))) {
    throw ParameterError("synth sigma must be >= 0");
  }
  for (const DeterministicTerm& term : spec.deterministic_terms) {
    if (!(term.amplitude >= 0.0 && std::isfinite(term.amplitude))) {
      throw ParameterError("deterministic term amplitude must be >= 0");
    }
    if (!std::isfinite(term.frequency_hz) || !std::isfinite(term.phase_rad)) {
      throw ParameterError("deterministic term frequency and phase must be finite");
    }
  }
}

GaussianSource::GaussianSource(std::uint64_t seed) : engine_(seed) {}

double GaussianSource::Uniform() {
  // Top 53 bits -> (0, 1].
  return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
}

double GaussianSource::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = Uniform();
  const double u2 = Uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

std::vector<double> render_deterministic(const SynthSpec& spec) {
  const std::size_t n = spec.samples_per_trial();
  std::vector<double> out(n, 0.0);
  for (const DeterministicTerm& term : spec.deterministic_terms) {
    const double w = 2.0 * std::numbers::pi * term.frequency_hz / spec.sample_rate_hz;
    for (std::size_t k = 0; k < n; ++k) {
      out[k] += term.amplitude * std::sin(w * static_cast<double>(k) + term.phase_rad);
    }
  }
  return out;
}

TrialSet generate_trialset(const SynthSpec& spec, std::string label) {
  validate(spec);
  const std::size_t n = spec.samples_per_trial();
  const Signal command = render_command(spec.command, spec.sample_rate_hz, n);
  const std::vector<double> deterministic = render_deterministic(spec);

  GaussianSource noise(spec.seed);
  std::vector<Signal> trials;
  trials.reserve(spec.n_trials);
  for (std::size_t i = 0; i < spec.n_trials; ++i) {
    std::vector<double> samples(n);
    for (std::size_t k = 0; k < n; ++k) {
      samples[k] = command[k] + deterministic[k];
      if (spec.stochastic_sigma > 0.0) samples[k] += spec.stochastic_sigma * noise.next();
    }
    trials.emplace_back(std::move(samples), spec.sample_rate_hz);
  }
  return TrialSet(spec.command, std::move(trials), std::move(label));
}

}  // namespace simnoise
