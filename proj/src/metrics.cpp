#include "simnoise/metrics.hpp"

#include <cmath>
#include <limits>

#include "simnoise/error.hpp"
#include "simnoise/kernels.hpp"

namespace simnoise {
namespace {

Ratio Divide(double num, double den) {
  if (den > 0.0) return {num / den, false};
  return {num > 0.0 ? std::numeric_limits<double>::infinity()
                    : std::numeric_limits<double>::quiet_NaN(),
          true};
}

}  // namespace

double rms(std::span<const double> samples) {
  if (samples.empty()) throw ParameterError("rms of an empty signal");
  return std::sqrt(kernels::sum_squares(samples) / static_cast<double>(samples.size()));
}

Ratio snr(const Signal& command, const Signal& total_noise) {
  require_aligned(command, total_noise, "snr");
  Ratio r = Divide(rms(command), rms(total_noise));
  if (!r.degenerate) r.value *= r.value;
  return r;
}

double stochastic_rms(std::span<const Signal> stochastic, StochasticPooling pooling) {
  if (stochastic.empty()) throw ParameterError("no stochastic traces");
  if (pooling == StochasticPooling::kMeanOfTrialRms) {
    double sum = 0.0;
    for (const Signal& s : stochastic) sum += rms(s);
    return sum / static_cast<double>(stochastic.size());
  }
  double sum_sq = 0.0;
  std::size_t count = 0;
  for (const Signal& s : stochastic) {
    sum_sq += kernels::sum_squares(s.samples());
    count += s.size();
  }
  return std::sqrt(sum_sq / static_cast<double>(count));
}

Ratio dsr(const NoiseDecomposition& decomposition, StochasticPooling pooling) {
  return Divide(rms(decomposition.deterministic),
                stochastic_rms(decomposition.stochastic, pooling));
}

}  // namespace simnoise
