#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "simnoise/decomposition.hpp"

namespace simnoise {

// Residual rms of the n-trial ensemble average against the full-N
// deterministic estimate, n = 1..N, and its Pearson correlation with 1/sqrt(n).
struct AveragingCurve {
  std::vector<std::size_t> n_values;
  std::vector<double> residual_rms;
  // nullopt when the correlation is undefined (every residual is zero).
  std::optional<double> pearson_r;
};

enum class SubsetMode {
  kPrefix,  // first n trials
  kRandom,  // a fresh random n-subset for each n, drawn from `seed`
};

struct AveragingOptions {
  SubsetMode mode = SubsetMode::kPrefix;
  std::uint64_t seed = 0;
};

// Needs >= 3 trials (InsufficientRepetitionsError).
AveragingCurve averaging_curve(const NoiseDecomposition& decomposition,
                               const AveragingOptions& options = {});

}  // namespace simnoise
