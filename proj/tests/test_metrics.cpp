#include <gtest/gtest.h>

#include <cmath>

#include "simnoise/decomposition.hpp"
#include "simnoise/error.hpp"
#include "simnoise/metrics.hpp"

namespace simnoise {
namespace {

Signal Constant(double v, std::size_t n = 100) { return Signal(std::vector<double>(n, v), 100.0); }

TEST(Rms, SmallExamples) {
  const std::vector<double> x{3.0, 4.0};
  EXPECT_NEAR(rms(x), std::sqrt(12.5), 1e-12);
  EXPECT_DOUBLE_EQ(rms(Constant(-0.5)), 0.5);
  EXPECT_THROW(rms(std::span<const double>{}), ParameterError);
}

TEST(Rms, ScalesWithAmplitude) {
  const std::vector<double> x{0.1, -0.4, 2.5, 1e-3};
  std::vector<double> y = x;
  for (double& v : y) v *= -3.0;
  EXPECT_NEAR(rms(y), 3.0 * rms(x), 1e-14);
}

TEST(Snr, RatioOfSquaredRms) {
  const Ratio r = snr(Constant(std::sqrt(2.0)), Constant(0.1));
  EXPECT_FALSE(r.degenerate);
  EXPECT_NEAR(r.value, 200.0, 200.0 * 1e-9);
}

TEST(Snr, ZeroNoiseIsDegenerate) {
  const Ratio r = snr(Constant(1.0), Constant(0.0));
  EXPECT_TRUE(r.degenerate);
  EXPECT_TRUE(std::isinf(r.value));
  EXPECT_THROW(snr(Constant(1.0, 10), Constant(0.1, 11)), AlignmentError);
}

TEST(StochasticRms, PoolingVariants) {
  const std::vector<Signal> s{Constant(0.3), Constant(0.4)};
  EXPECT_NEAR(stochastic_rms(s, StochasticPooling::kPooledSamples), std::sqrt((0.09 + 0.16) / 2), 1e-15);
  EXPECT_NEAR(stochastic_rms(s, StochasticPooling::kMeanOfTrialRms), 0.35, 1e-15);
}

TEST(Dsr, ConstructedDecomposition) {
  // deterministic rms 0.0805, every stochastic sample +/-0.01
  NoiseDecomposition d{{}, Constant(0.0805), {}, false};
  std::vector<double> plus(100), minus(100);
  for (std::size_t k = 0; k < 100; ++k) {
    plus[k] = (k % 2 ? 0.01 : -0.01);
    minus[k] = -plus[k];
  }
  d.stochastic = {Signal(plus, 100.0), Signal(minus, 100.0)};
  d.total = {Constant(0.0), Constant(0.0)};
  const Ratio r = dsr(d);
  EXPECT_FALSE(r.degenerate);
  EXPECT_NEAR(r.value, 8.05, 8.05 * 1e-9);
}

TEST(Dsr, ZeroStochasticIsDegenerate) {
  NoiseDecomposition d{{Constant(1.0), Constant(1.0)}, Constant(1.0), {Constant(0.0), Constant(0.0)}, false};
  EXPECT_TRUE(dsr(d).degenerate);
  NoiseDecomposition none{{Constant(0.0), Constant(0.0)}, Constant(0.0), {Constant(0.0), Constant(0.0)}, false};
  EXPECT_TRUE(dsr(none).degenerate);
  EXPECT_TRUE(std::isnan(dsr(none).value));
}

}  // namespace
}  // namespace simnoise
