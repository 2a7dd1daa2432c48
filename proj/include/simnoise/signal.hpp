#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace simnoise {

// A uniformly sampled acceleration trace in m/s^2.
//
// Invariants (checked on construction, ParameterError otherwise): at least one
// sample, every sample finite, sample rate finite and > 0.
class Signal {
 public:
  Signal(std::vector<double> samples, double sample_rate_hz);

  std::span<const double> samples() const noexcept { return samples_; }
  const std::vector<double>& values() const noexcept { return samples_; }
  double sample_rate_hz() const noexcept { return sample_rate_hz_; }
  std::size_t size() const noexcept { return samples_.size(); }
  double duration_s() const noexcept {
    return static_cast<double>(samples_.size()) / sample_rate_hz_;
  }
  double operator[](std::size_t k) const noexcept { return samples_[k]; }

  friend bool operator==(const Signal&, const Signal&) = default;

 private:
  std::vector<double> samples_;
  double sample_rate_hz_;
};

// Two rates are treated as equal when they agree to 1e-9 relative; rates read
// back from timestamp columns carry decimal rounding.
bool same_rate(double a_hz, double b_hz) noexcept;

// True when both signals have the same length and rate.
bool aligned(const Signal& a, const Signal& b) noexcept;

// Throws AlignmentError naming `what` when the signals are not aligned.
void require_aligned(const Signal& a, const Signal& b, const std::string& what);

// Sign convention: kUp renders positive acceleration values at the first
// quarter period, kDown the negation.
enum class Direction { kUp, kDown };

std::string to_string(Direction d);
Direction parse_direction(const std::string& text);

inline double direction_sign(Direction d) noexcept {
  return d == Direction::kUp ? 1.0 : -1.0;
}

struct Sinusoid {
  double frequency_hz = 1.0;
  double peak_amplitude = 0.0;  // m/s^2, >= 0
  Direction direction = Direction::kUp;
  double duration_s = 1.0;

  friend bool operator==(const Sinusoid&, const Sinusoid&) = default;
};

struct SampledCommand {
  Signal trace;

  friend bool operator==(const SampledCommand&, const SampledCommand&) = default;
};

struct CommandSpec {
  std::variant<Sinusoid, SampledCommand> waveform;
  std::string label;

  bool is_sinusoid() const noexcept {
    return std::holds_alternative<Sinusoid>(waveform);
  }
  const Sinusoid* sinusoid() const noexcept {
    return std::get_if<Sinusoid>(&waveform);
  }

  friend bool operator==(const CommandSpec&, const CommandSpec&) = default;
};

// Throws ParameterError when a sinusoid has f <= 0, A < 0 or duration <= 0.
void validate(const CommandSpec& spec);

// Sinusoid: a[k] = s * A * sin(2*pi*f*k / Fs), s = +1 (up) / -1 (down).
// Sampled: the stored trace, which must already have the requested rate and
// length (AlignmentError otherwise).
Signal render_command(const CommandSpec& spec, double sample_rate_hz,
                      std::size_t n_samples);

// Repeated recordings of one commanded trajectory. All trials share length and
// rate; at least one trial.
class TrialSet {
 public:
  TrialSet(CommandSpec command, std::vector<Signal> trials, std::string label);

  const CommandSpec& command() const noexcept { return command_; }
  const std::vector<Signal>& trials() const noexcept { return trials_; }
  const std::string& label() const noexcept { return label_; }
  std::size_t trial_count() const noexcept { return trials_.size(); }
  std::size_t samples_per_trial() const noexcept { return trials_.front().size(); }
  double sample_rate_hz() const noexcept {
    return trials_.front().sample_rate_hz();
  }

  Signal rendered_command() const;

 private:
  CommandSpec command_;
  std::vector<Signal> trials_;
  std::string label_;
};

}  // namespace simnoise
