#include "simnoise/decomposition.hpp"

#include <cmath>
#include <numbers>

#include "simnoise/error.hpp"
#include "simnoise/filter.hpp"
#include "simnoise/kernels.hpp"

namespace simnoise {

Signal total_noise(const Signal& trial, const Signal& command) {
  require_aligned(trial, command, "total_noise");
  std::vector<double> out(trial.size());
  kernels::subtract(trial.samples(), command.samples(), out);
  return Signal(std::move(out), trial.sample_rate_hz());
}

Signal fit_fundamental(const Signal& trace, double frequency_hz) {
  if (!(frequency_hz > 0.0)) throw ParameterError("fundamental frequency must be > 0");
  const std::size_t n = trace.size();
  const double w = 2.0 * std::numbers::pi * frequency_hz / trace.sample_rate_hz();
  std::vector<double> s(n), c(n);
  for (std::size_t k = 0; k < n; ++k) {
    s[k] = std::sin(w * static_cast<double>(k));
    c[k] = std::cos(w * static_cast<double>(k));
  }
  // Normal equations for [a b] in a*s + b*c.
  const double ss = kernels::dot(s, s);
  const double cc = kernels::dot(c, c);
  const double sc = kernels::dot(s, c);
  const double ys = kernels::dot(trace.samples(), s);
  const double yc = kernels::dot(trace.samples(), c);
  const double det = ss * cc - sc * sc;

  double a = 0.0;
  double b = 0.0;
  if (std::abs(det) > 1e-12 * ss * cc) {
    a = (ys * cc - yc * sc) / det;
    b = (yc * ss - ys * sc) / det;
  } else if (ss > 0.0) {
    // Record too short to separate sin from cos: fit the sine alone.
    a = ys / ss;
  }
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = a * s[k] + b * c[k];
  return Signal(std::move(out), trace.sample_rate_hz());
}

NoiseDecomposition decompose_total_noise(std::vector<Signal> total) {
  if (total.size() < 2) {
    throw InsufficientRepetitionsError(
        "decomposition needs at least 2 repetitions, got " +
        std::to_string(total.size()));
  }
  for (std::size_t i = 1; i < total.size(); ++i) {
    require_aligned(total.front(), total[i], "decompose trial " + std::to_string(i));
  }

  const std::size_t n = total.front().size();
  const double rate = total.front().sample_rate_hz();
  std::vector<double> mean(n, 0.0);
  for (const Signal& t : total) kernels::accumulate(mean, t.samples());
  kernels::scale(mean, 1.0 / static_cast<double>(total.size()));

  std::vector<Signal> stochastic;
  stochastic.reserve(total.size());
  for (const Signal& t : total) {
    std::vector<double> residual(n);
    kernels::subtract(t.samples(), mean, residual);
    stochastic.emplace_back(std::move(residual), rate);
  }
  Signal deterministic(std::move(mean), rate);
  return NoiseDecomposition{std::move(total), std::move(deterministic),
                            std::move(stochastic), false};
}

NoiseDecomposition decompose(const TrialSet& trials, const DecomposeOptions& options) {
  if (trials.trial_count() < 2) {
    throw InsufficientRepetitionsError("trial set '" + trials.label() +
                                       "' needs at least 2 repetitions");
  }
  const Sinusoid* sinusoid = trials.command().sinusoid();
  if (options.fit_fundamental && sinusoid == nullptr) {
    throw ParameterError("fit-fundamental requires a sinusoid command (trial set '" +
                         trials.label() + "')");
  }

  const Signal command = trials.rendered_command();
  std::vector<Signal> total;
  total.reserve(trials.trial_count());
  for (const Signal& trial : trials.trials()) {
    Signal filtered = options.cutoff_hz ? lowpass_filter(trial, *options.cutoff_hz) : trial;
    if (options.fit_fundamental) {
      total.push_back(total_noise(filtered, fit_fundamental(filtered, sinusoid->frequency_hz)));
    } else {
      total.push_back(total_noise(filtered, command));
    }
  }
  NoiseDecomposition out = decompose_total_noise(std::move(total));
  out.fundamental_fitted = options.fit_fundamental;
  return out;
}

}  // namespace simnoise
