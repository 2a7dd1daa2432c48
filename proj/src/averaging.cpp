#include "simnoise/averaging.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "simnoise/error.hpp"
#include "simnoise/kernels.hpp"
#include "simnoise/metrics.hpp"
#include "simnoise/stats.hpp"

namespace simnoise {

AveragingCurve averaging_curve(const NoiseDecomposition& decomposition,
                               const AveragingOptions& options) {
  const std::size_t trials = decomposition.trial_count();
  if (trials < 3) {
    throw InsufficientRepetitionsError("averaging curve needs at least 3 trials, got " +
                                       std::to_string(trials));
  }
  const std::size_t n = decomposition.deterministic.size();
  const auto det = decomposition.deterministic.samples();

  std::vector<std::size_t> order(trials);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(options.seed);

  AveragingCurve curve;
  curve.n_values.reserve(trials);
  curve.residual_rms.reserve(trials);
  std::vector<double> sum(n, 0.0);
  std::vector<double> residual(n);
  for (std::size_t count = 1; count <= trials; ++count) {
    if (options.mode == SubsetMode::kRandom) {
      // Partial Fisher-Yates: the first `count` entries become the subset.
      std::iota(order.begin(), order.end(), std::size_t{0});
      for (std::size_t i = 0; i < count; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng() % (trials - i));
        std::swap(order[i], order[j]);
      }
      std::fill(sum.begin(), sum.end(), 0.0);
      for (std::size_t i = 0; i < count; ++i) {
        kernels::accumulate(sum, decomposition.total[order[i]].samples());
      }
    } else {
      kernels::accumulate(sum, decomposition.total[count - 1].samples());
    }
    const double inv = 1.0 / static_cast<double>(count);
    for (std::size_t k = 0; k < n; ++k) residual[k] = sum[k] * inv - det[k];
    curve.n_values.push_back(count);
    curve.residual_rms.push_back(rms(residual));
  }

  // Residuals at rounding level relative to the noise itself mean there is no
  // stochastic component; the correlation is then undefined.
  double scale = 0.0;
  for (const Signal& t : decomposition.total) scale = std::max(scale, rms(t));
  const double max_residual =
      *std::max_element(curve.residual_rms.begin(), curve.residual_rms.end());
  if (max_residual <= 1e-12 * scale) {
    curve.pearson_r.reset();
    return curve;
  }

  std::vector<double> inv_sqrt_n(trials);
  for (std::size_t i = 0; i < trials; ++i) {
    inv_sqrt_n[i] = 1.0 / std::sqrt(static_cast<double>(curve.n_values[i]));
  }
  curve.pearson_r = pearson_r(curve.residual_rms, inv_sqrt_n);
  return curve;
}

}  // namespace simnoise
