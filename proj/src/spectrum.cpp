#include "simnoise/spectrum.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "simnoise/error.hpp"
#include "simnoise/kernels.hpp"

namespace simnoise {
namespace {

struct BinLayout {
  std::size_t count = 0;
  // For each bin, the DFT line indices falling inside it.
  std::vector<std::vector<std::size_t>> lines;
};

void CheckSpectrumArgs(double sample_rate_hz, double f_max_hz, double bin_width_hz) {
  if (!(bin_width_hz > 0.0 && std::isfinite(bin_width_hz))) {
    throw ParameterError("bin width must be > 0");
  }
  const double nyquist = 0.5 * sample_rate_hz;
  if (!(f_max_hz >= 0.0) || f_max_hz > nyquist * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "f_max " << f_max_hz << " Hz outside [0, Nyquist = " << nyquist << " Hz]";
    throw ParameterError(msg.str());
  }
}

BinLayout Layout(std::size_t n, double sample_rate_hz, double f_max_hz,
                 double bin_width_hz) {
  constexpr double kEps = 1e-9;
  BinLayout layout;
  layout.count = static_cast<std::size_t>(std::floor(f_max_hz / bin_width_hz + kEps)) + 1;
  layout.lines.resize(layout.count);
  const double df = sample_rate_hz / static_cast<double>(n);
  for (std::size_t k = 0; 2 * k <= n; ++k) {
    const double f = df * static_cast<double>(k);
    const double pos = f / bin_width_hz + 0.5 + kEps;
    const auto bin = static_cast<std::size_t>(std::floor(pos));
    if (bin >= layout.count) break;
    layout.lines[bin].push_back(k);
  }
  return layout;
}

double LineScale(std::size_t k, std::size_t n) {
  const double inv_n = 1.0 / static_cast<double>(n);
  return (k == 0 || 2 * k == n) ? inv_n : 2.0 * inv_n;
}

SpectrumBins Evaluate(const DftPlan& plan, const BinLayout& layout, const Signal& x,
                      double bin_width_hz) {
  const std::size_t n = x.size();
  const double nyquist = 0.5 * x.sample_rate_hz();
  SpectrumBins out;
  out.bin_width_hz = bin_width_hz;
  out.bin_centers_hz.resize(layout.count);
  out.amplitudes.resize(layout.count);
  for (std::size_t j = 0; j < layout.count; ++j) {
    const double center = bin_width_hz * static_cast<double>(j);
    out.bin_centers_hz[j] = center;
    const auto& lines = layout.lines[j];
    if (lines.empty()) {
      const double scale = (center == 0.0 || std::abs(center - nyquist) < 1e-12 * nyquist)
                               ? 1.0 / static_cast<double>(n)
                               : 2.0 / static_cast<double>(n);
      out.amplitudes[j] =
          scale * std::abs(DftPlan::at_frequency(x.samples(), center, x.sample_rate_hz()));
      continue;
    }
    double sum = 0.0;
    for (std::size_t k : lines) sum += LineScale(k, n) * std::abs(plan.line(x.samples(), k));
    out.amplitudes[j] = sum / static_cast<double>(lines.size());
  }
  return out;
}

}  // namespace

DftPlan::DftPlan(std::size_t n) : cos_(n), sin_(n) {
  if (n == 0) throw ParameterError("DFT length must be >= 1");
  for (std::size_t m = 0; m < n; ++m) {
    const double phase = 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n);
    cos_[m] = std::cos(phase);
    sin_[m] = std::sin(phase);
  }
}

std::complex<double> DftPlan::line(std::span<const double> x, std::size_t k) const {
  const std::size_t n = size();
  thread_local std::vector<double> c_row;
  thread_local std::vector<double> s_row;
  c_row.resize(n);
  s_row.resize(n);
  const std::size_t step = k % n;
  std::size_t idx = 0;
  for (std::size_t m = 0; m < n; ++m) {
    c_row[m] = cos_[idx];
    s_row[m] = sin_[idx];
    idx += step;
    if (idx >= n) idx -= n;
  }
  double re = 0.0;
  double im = 0.0;
  kernels::active().dot2(x.data(), c_row.data(), s_row.data(), n, &re, &im);
  return {re, -im};
}

std::complex<double> DftPlan::at_frequency(std::span<const double> x, double frequency_hz,
                                           double sample_rate_hz) {
  const std::size_t n = x.size();
  std::vector<double> c_row(n), s_row(n);
  const double w = 2.0 * std::numbers::pi * frequency_hz / sample_rate_hz;
  for (std::size_t m = 0; m < n; ++m) {
    c_row[m] = std::cos(w * static_cast<double>(m));
    s_row[m] = std::sin(w * static_cast<double>(m));
  }
  double re = 0.0;
  double im = 0.0;
  kernels::active().dot2(x.data(), c_row.data(), s_row.data(), n, &re, &im);
  return {re, -im};
}

std::vector<double> two_sided_power_spectrum(const Signal& signal) {
  const std::size_t n = signal.size();
  const DftPlan plan(n);
  const double inv_n2 = 1.0 / (static_cast<double>(n) * static_cast<double>(n));
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = std::norm(plan.line(signal.samples(), k)) * inv_n2;
  return out;
}

SpectrumBins amplitude_spectrum(const Signal& noise, double f_max_hz, double bin_width_hz) {
  CheckSpectrumArgs(noise.sample_rate_hz(), f_max_hz, bin_width_hz);
  const DftPlan plan(noise.size());
  const BinLayout layout = Layout(noise.size(), noise.sample_rate_hz(), f_max_hz, bin_width_hz);
  return Evaluate(plan, layout, noise, bin_width_hz);
}

std::vector<SpectrumBins> spectrum_set(std::span<const Signal> signals, double f_max_hz,
                                       double bin_width_hz) {
  std::vector<SpectrumBins> out;
  if (signals.empty()) return out;
  const Signal& first = signals.front();
  CheckSpectrumArgs(first.sample_rate_hz(), f_max_hz, bin_width_hz);
  for (std::size_t i = 1; i < signals.size(); ++i) {
    require_aligned(first, signals[i], "spectrum_set signal " + std::to_string(i));
  }
  const DftPlan plan(first.size());
  const BinLayout layout = Layout(first.size(), first.sample_rate_hz(), f_max_hz, bin_width_hz);
  out.reserve(signals.size());
  for (const Signal& s : signals) out.push_back(Evaluate(plan, layout, s, bin_width_hz));
  return out;
}

SpectrumSummary summarize(std::span<const SpectrumBins> spectra) {
  SpectrumSummary out;
  if (spectra.empty()) return out;
  const std::size_t bins = spectra.front().size();
  for (const SpectrumBins& s : spectra) {
    if (s.size() != bins) throw AlignmentError("spectra have different bin counts");
  }
  out.bin_centers_hz = spectra.front().bin_centers_hz;
  out.mean.assign(bins, 0.0);
  out.stddev.assign(bins, 0.0);
  const double count = static_cast<double>(spectra.size());
  for (const SpectrumBins& s : spectra) kernels::accumulate(out.mean, s.amplitudes);
  kernels::scale(out.mean, 1.0 / count);
  if (spectra.size() < 2) return out;
  for (std::size_t j = 0; j < bins; ++j) {
    double ss = 0.0;
    for (const SpectrumBins& s : spectra) {
      const double d = s.amplitudes[j] - out.mean[j];
      ss += d * d;
    }
    out.stddev[j] = std::sqrt(ss / (count - 1.0));
  }
  return out;
}

}  // namespace simnoise
