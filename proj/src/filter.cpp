#include "simnoise/filter.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "simnoise/error.hpp"

namespace simnoise {

std::vector<Biquad> design_butterworth_lowpass(int order, double cutoff_hz,
                                               double sample_rate_hz) {
  if (order < 2 || order % 2 != 0) {
    throw ParameterError("Butterworth order must be even and >= 2");
  }
  if (!(sample_rate_hz > 0.0 && std::isfinite(sample_rate_hz))) {
    throw ParameterError("sample rate must be > 0");
  }
  const double nyquist = 0.5 * sample_rate_hz;
  if (!(cutoff_hz > 0.0 && cutoff_hz < nyquist)) {
    std::ostringstream msg;
    msg << "cutoff " << cutoff_hz << " Hz must lie in (0, " << nyquist << ") Hz";
    throw ParameterError(msg.str());
  }

  const double k = std::tan(std::numbers::pi * cutoff_hz / sample_rate_hz);
  const double k2 = k * k;
  std::vector<Biquad> sections;
  sections.reserve(static_cast<std::size_t>(order / 2));
  for (int i = 0; i < order / 2; ++i) {
    // Damping of the i-th conjugate pole pair of the analog prototype.
    const double zeta =
        std::sin(std::numbers::pi * (2.0 * i + 1.0) / (2.0 * order));
    const double norm = 1.0 / (1.0 + 2.0 * zeta * k + k2);
    Biquad s;
    s.b0 = k2 * norm;
    s.b1 = 2.0 * s.b0;
    s.b2 = s.b0;
    s.a1 = 2.0 * (k2 - 1.0) * norm;
    s.a2 = (1.0 - 2.0 * zeta * k + k2) * norm;
    sections.push_back(s);
  }
  return sections;
}

std::vector<double> cascade_filter(std::span<const Biquad> sections,
                                   std::span<const double> x,
                                   double initial_level) {
  std::vector<double> y(x.begin(), x.end());
  double level = initial_level;
  for (const Biquad& s : sections) {
    const double gain = s.dc_gain();
    double z1 = level * (gain - s.b0);
    double z2 = level * (s.b2 - s.a2 * gain);
    for (double& v : y) {
      const double in = v;
      const double out = s.b0 * in + z1;
      z1 = s.b1 * in - s.a1 * out + z2;
      z2 = s.b2 * in - s.a2 * out;
      v = out;
    }
    level *= gain;
  }
  return y;
}

std::vector<double> zero_phase_filter(std::span<const Biquad> sections,
                                      std::span<const double> x, std::size_t pad) {
  const std::size_t n = x.size();
  if (n == 0) return {};
  pad = std::min(pad, n - 1);

  std::vector<double> ext;
  ext.reserve(n + 2 * pad);
  for (std::size_t i = pad; i >= 1; --i) ext.push_back(2.0 * x[0] - x[i]);
  ext.insert(ext.end(), x.begin(), x.end());
  for (std::size_t i = 1; i <= pad; ++i) ext.push_back(2.0 * x[n - 1] - x[n - 1 - i]);

  std::vector<double> fwd = cascade_filter(sections, ext, ext.front());
  std::reverse(fwd.begin(), fwd.end());
  std::vector<double> bwd = cascade_filter(sections, fwd, fwd.front());
  std::reverse(bwd.begin(), bwd.end());

  return std::vector<double>(bwd.begin() + static_cast<std::ptrdiff_t>(pad),
                             bwd.begin() + static_cast<std::ptrdiff_t>(pad + n));
}

Signal lowpass_filter(const Signal& signal, double cutoff_hz) {
  const auto sections = design_butterworth_lowpass(kDefaultFilterOrder, cutoff_hz,
                                                   signal.sample_rate_hz());
  const std::size_t pad = 3 * (kDefaultFilterOrder + 1);
  return Signal(zero_phase_filter(sections, signal.samples(), pad),
                signal.sample_rate_hz());
}

}  // namespace simnoise
