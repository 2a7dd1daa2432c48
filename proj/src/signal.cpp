#include "simnoise/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "simnoise/error.hpp"

namespace simnoise {

Signal::Signal(std::vector<double> samples, double sample_rate_hz)
    : samples_(std::move(samples)), sample_rate_hz_(sample_rate_hz) {
  if (!(std::isfinite(sample_rate_hz_) && sample_rate_hz_ > 0.0)) {
    throw ParameterError("sample rate must be finite and > 0");
  }
  if (samples_.empty()) throw ParameterError("signal has no samples");
  for (std::size_t k = 0; k < samples_.size(); ++k) {
    if (!std::isfinite(samples_[k])) {
      std::ostringstream msg;
      msg << "sample " << k << " is not finite";
      throw ParameterError(msg.str());
    }
  }
}

bool same_rate(double a_hz, double b_hz) noexcept {
  return std::abs(a_hz - b_hz) <= 1e-9 * std::max(std::abs(a_hz), std::abs(b_hz));
}

bool aligned(const Signal& a, const Signal& b) noexcept {
  return a.size() == b.size() && same_rate(a.sample_rate_hz(), b.sample_rate_hz());
}

void require_aligned(const Signal& a, const Signal& b, const std::string& what) {
  if (aligned(a, b)) return;
  std::ostringstream msg;
  msg << what << ": signals not aligned (" << a.size() << " samples @ "
      << a.sample_rate_hz() << " Hz vs " << b.size() << " samples @ "
      << b.sample_rate_hz() << " Hz)";
  throw AlignmentError(msg.str());
}

std::string to_string(Direction d) { return d == Direction::kUp ? "up" : "down"; }

Direction parse_direction(const std::string& text) {
  if (text == "up") return Direction::kUp;
  if (text == "down") return Direction::kDown;
  throw ParameterError("direction must be \"up\" or \"down\", got \"" + text + "\"");
}

void validate(const CommandSpec& spec) {
  const Sinusoid* s = spec.sinusoid();
  if (s == nullptr) return;  // Signal already validated itself
  if (!(std::isfinite(s->frequency_hz) && s->frequency_hz > 0.0)) {
    throw ParameterError("sinusoid frequency must be > 0");
  }
  if (!(std::isfinite(s->peak_amplitude) && s->peak_amplitude >= 0.0)) {
    throw ParameterError("sinusoid peak amplitude must be >= 0");
  }
  if (!(std::isfinite(s->duration_s) && s->duration_s > 0.0)) {
    throw ParameterError("sinusoid duration must be > 0");
  }
}

Signal render_command(const CommandSpec& spec, double sample_rate_hz,
                      std::size_t n_samples) {
  if (!(std::isfinite(sample_rate_hz) && sample_rate_hz > 0.0)) {
    throw ParameterError("render_command: sample rate must be > 0");
  }
  if (n_samples == 0) throw ParameterError("render_command: n_samples must be >= 1");
  validate(spec);

  if (const Sinusoid* s = spec.sinusoid()) {
    const double amp = direction_sign(s->direction) * s->peak_amplitude;
    const double w = 2.0 * std::numbers::pi * s->frequency_hz / sample_rate_hz;
    std::vector<double> out(n_samples);
    for (std::size_t k = 0; k < n_samples; ++k) {
      out[k] = amp * std::sin(w * static_cast<double>(k));
    }
    return Signal(std::move(out), sample_rate_hz);
  }

  const Signal& trace = std::get<SampledCommand>(spec.waveform).trace;
  if (trace.size() != n_samples || !same_rate(trace.sample_rate_hz(), sample_rate_hz)) {
    std::ostringstream msg;
    msg << "command trace '" << spec.label << "' has " << trace.size()
        << " samples @ " << trace.sample_rate_hz() << " Hz, expected " << n_samples
        << " @ " << sample_rate_hz << " Hz";
    throw AlignmentError(msg.str());
  }
  return trace;
}

TrialSet::TrialSet(CommandSpec command, std::vector<Signal> trials, std::string label)
    : command_(std::move(command)), trials_(std::move(trials)), label_(std::move(label)) {
  validate(command_);
  if (trials_.empty()) throw ParameterError("trial set '" + label_ + "' has no trials");
  for (std::size_t i = 1; i < trials_.size(); ++i) {
    require_aligned(trials_.front(), trials_[i],
                    "trial set '" + label_ + "' trial " + std::to_string(i));
  }
}

Signal TrialSet::rendered_command() const {
  return render_command(command_, sample_rate_hz(), samples_per_trial());
}

}  // namespace simnoise
