#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>

#include "simnoise/app/analysis.hpp"
#include "simnoise/error.hpp"

namespace simnoise::app {
namespace {

using nlohmann::json;

json Set(const std::string& label, double amp, double sigma, std::uint64_t seed, const std::string& dir = "up",
         double det = 0.0) {
  json terms = json::array();
  if (det > 0) terms.push_back({{"frequency_hz", 4.0}, {"amplitude", det}});
  return {{"label", label},
          {"command", {{"type", "sinusoid"}, {"frequency_hz", 1.0}, {"peak_amplitude", amp}, {"direction", dir}}},
          {"synth", {{"stochastic_sigma", sigma}, {"deterministic_terms", terms}, {"seed", seed}}}};
}

TEST(RunAnalysis, IdenticalSetsGiveNoSignificance) {
  json doc{{"trial_sets", json::array({Set("a", 1.0, 0.02, 3), Set("b", 1.0, 0.02, 3)})},
           {"comparisons", json::array({{{"reference", "a"}, {"comparison", "b"}}})}};
  const ComparisonReport r = run_analysis(parse_manifest(doc, "."));
  ASSERT_EQ(r.comparisons.size(), 1u);
  const ComparisonResult& c = r.comparisons[0];
  EXPECT_DOUBLE_EQ(c.total_rms_test.p_value, 1.0);
  EXPECT_FALSE(c.total_rms.significant);
  EXPECT_FALSE(c.stochastic_rms.significant);
  EXPECT_FALSE(c.total_spectrum.significant);
  EXPECT_FALSE(c.stochastic_spectrum.significant);
  EXPECT_EQ(r.generator, "mt19937_64/box-muller");
}

TEST(RunAnalysis, DoubledSigmaIsDetected) {
  int detected = 0;
  constexpr int kRuns = 100;
  for (int run = 0; run < kRuns; ++run) {
    json doc{{"trial_sets", json::array({Set("ref", 1.0, 0.01, 2 * run), Set("cmp", 1.0, 0.02, 2 * run + 1)})},
             {"comparisons", json::array({{{"reference", "ref"}, {"comparison", "cmp"}}})}};
    const ComparisonReport r = run_analysis(parse_manifest(doc, "."));
    detected += r.comparisons[0].total_rms_test.p_value < 0.001;
  }
  EXPECT_GE(detected, 95);
}

TEST(RunAnalysis, EveryPValueIsAProbabilityAndFlagsMatchAlpha) {
  json doc{{"analysis", {{"alpha", 0.01}}},
           {"trial_sets", json::array({Set("a", 0.5, 0.01, 1, "up", 0.02), Set("b", 0.7, 0.012, 2, "up", 0.03)})},
           {"comparisons", json::array({{{"reference", "a"}, {"comparison", "b"}}})}};
  const ComparisonReport r = run_analysis(parse_manifest(doc, "."));
  const ComparisonResult& c = r.comparisons[0];
  for (const TestOutcome* t : {&c.total_rms, &c.stochastic_rms, &c.total_spectrum, &c.stochastic_spectrum}) {
    ASSERT_TRUE(t->p_value.has_value());
    EXPECT_GE(*t->p_value, 0.0);
    EXPECT_LE(*t->p_value, 1.0);
    EXPECT_EQ(t->significant, *t->p_value < 0.01);
  }
  EXPECT_EQ(c.total_spectrum.df1, 1.0);
  EXPECT_EQ(*c.total_spectrum.df2, 2 * 81 * 20 - 2 * 81);
}

TEST(RunAnalysis, EmptyComparisonsGivePerSetMetricsOnly) {
  json doc{{"trial_sets", json::array({Set("a", 1.0, 0.02, 1)})}};
  const ComparisonReport r = run_analysis(parse_manifest(doc, "."));
  EXPECT_TRUE(r.comparisons.empty());
  ASSERT_EQ(r.sets.size(), 1u);
  EXPECT_EQ(r.sets[0].snr.size(), 20u);
  EXPECT_EQ(r.sets[0].total_spectrum.mean.size(), 81u);
  EXPECT_TRUE(r.sets[0].averaging.pearson_r.has_value());
  EXPECT_FALSE(r.snr_anova.has_value());
}

TEST(RunAnalysis, ZeroNoiseRaisesDegenerateWarnings) {
  // Unfiltered, so the total noise is exactly zero.
  json doc{{"analysis", {{"cutoff_hz", nullptr}}},
           {"trial_sets", json::array({Set("a", 1.0, 0.0, 1), Set("b", 1.0, 0.0, 2)})},
           {"comparisons", json::array({{{"reference", "a"}, {"comparison", "b"}}})}};
  const ComparisonReport r = run_analysis(parse_manifest(doc, "."));
  EXPECT_TRUE(r.has_degenerate_warning());
  EXPECT_TRUE(r.sets[0].snr[0].degenerate);
  EXPECT_TRUE(r.sets[0].dsr.degenerate);
}

TEST(RunAnalysis, ModuleErrorsAreTaggedWithTheLabel) {
  json small = Set("tiny", 1.0, 0.01, 1);
  small["synth"]["n_trials"] = 1;
  json doc{{"trial_sets", json::array({small})}};
  try {
    run_analysis(parse_manifest(doc, "."));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInsufficientRepetitions);
    EXPECT_NE(std::string(e.what()).find("tiny"), std::string::npos);
  }
}

TEST(RunAnalysis, DirectionIntensityAnova) {
  json sets = json::array();
  json anova = json::array();
  int seed = 0;
  for (const char* dir : {"up", "down"}) {
    for (double amp : {0.3, 1.1, 2.0}) {
      const std::string label = std::string(dir) + std::to_string(amp);
      sets.push_back(Set(label, amp, 0.01, seed++, dir, 0.04 * amp));
      anova.push_back(label);
    }
  }
  json doc{{"trial_sets", sets}, {"snr_anova", anova}};
  const ComparisonReport r = run_analysis(parse_manifest(doc, "."));
  ASSERT_TRUE(r.snr_anova.has_value());
  ASSERT_TRUE(r.total_rms_anova.has_value());
  EXPECT_EQ(r.anova_sets.size(), 6u);
  EXPECT_EQ(r.snr_anova->find(kIntensityFactor)->df, 2.0);
  EXPECT_EQ(r.snr_anova->find(kDirectionFactor)->df, 1.0);
  EXPECT_LT(*r.total_rms_anova->find(kIntensityFactor)->p_value, 1e-6);
}

TEST(RunAnalysis, IncompleteAnovaDesignIsSkippedWithWarning) {
  json doc{{"trial_sets", json::array({Set("a", 1.0, 0.01, 1, "up"), Set("b", 2.0, 0.01, 2, "down")})},
           {"snr_anova", json::array({"a", "b"})}};
  const ComparisonReport r = run_analysis(parse_manifest(doc, "."));
  EXPECT_FALSE(r.snr_anova.has_value());
  ASSERT_FALSE(r.warnings.empty());
  EXPECT_FALSE(r.has_degenerate_warning());
}

TEST(RunAnalysis, PaperDesignSnrRisesWithAmplitude) {
  const Manifest m = load_manifest(std::filesystem::path(SIMNOISE_DATA_DIR) / "paper_design.json");
  const ComparisonReport r = run_analysis(m);
  ASSERT_EQ(r.comparisons.size(), 20u);
  for (const char* dir : {"up", "down"}) {
    double prev = 0.0;
    for (const char* amp : {"0.07", "0.3", "1.1", "1.6", "2"}) {
      const std::string label = std::string(dir) + "_" + amp + "_ref";
      const auto it = std::find_if(r.sets.begin(), r.sets.end(), [&](const SetMetrics& s) { return s.label == label; });
      ASSERT_NE(it, r.sets.end()) << label;
      EXPECT_GT(it->snr_mean, prev) << label;
      prev = it->snr_mean;
    }
  }
  EXPECT_TRUE(r.snr_anova.has_value());
}

}  // namespace
}  // namespace simnoise::app
