#pragma once

#include <optional>
#include <string>
#include <vector>

#include "simnoise/app/manifest.hpp"
#include "simnoise/averaging.hpp"
#include "simnoise/metrics.hpp"
#include "simnoise/spectrum.hpp"
#include "simnoise/stats.hpp"

namespace simnoise::app {

// Per trial set: everything the rms / SNR / DSR / spectrum figures need.
struct SetMetrics {
  std::string label;
  std::optional<std::string> direction;  // factor levels, when known
  std::optional<std::string> intensity;
  std::optional<double> peak_amplitude;
  std::size_t n_trials = 0;
  std::size_t samples_per_trial = 0;
  double sample_rate_hz = 0.0;
  bool fundamental_fitted = false;

  double command_rms = 0.0;
  std::vector<double> total_rms;        // per trial
  std::vector<double> stochastic_rms;   // per trial
  double deterministic_rms = 0.0;
  double stochastic_rms_combined = 0.0;  // per the pooling option
  std::vector<Ratio> snr;               // per trial
  double snr_mean = 0.0;                // over non-degenerate trials
  double snr_sd = 0.0;
  Ratio dsr;
  AveragingCurve averaging;

  SpectrumSummary total_spectrum;       // mean / sd over trials
  SpectrumBins deterministic_spectrum;
  SpectrumSummary stochastic_spectrum;
};

struct TestOutcome {
  std::optional<double> statistic;
  double df1 = 0.0;
  std::optional<double> df2;  // F tests only
  std::optional<double> p_value;
  bool significant = false;
};

struct ComparisonResult {
  std::string reference;
  std::string comparison;
  TTestResult total_rms_test;
  TTestResult stochastic_rms_test;
  // factor A = profile (reference / comparison), factor B = frequency bin
  AnovaResult total_spectrum_anova;
  AnovaResult stochastic_spectrum_anova;

  // Table-style summaries: the t-test and the profile main effect.
  TestOutcome total_rms;
  TestOutcome stochastic_rms;
  TestOutcome total_spectrum;
  TestOutcome stochastic_spectrum;
};

struct Warning {
  std::string subject;  // trial-set label, pair, or analysis name
  std::string message;
  bool degenerate = true;  // degenerate statistics (exit code 3)
};

struct ComparisonReport {
  AnalysisParams params;
  std::string generator;  // synth PRNG name when any set was generated
  std::vector<SetMetrics> sets;
  std::vector<ComparisonResult> comparisons;
  // direction x intensity over the selected reference sets
  std::optional<AnovaResult> snr_anova;
  std::optional<AnovaResult> total_rms_anova;
  std::vector<std::string> anova_sets;
  std::vector<Warning> warnings;

  bool has_degenerate_warning() const;
};

inline constexpr const char* kProfileFactor = "profile";
inline constexpr const char* kFrequencyFactor = "frequency_hz";
inline constexpr const char* kDirectionFactor = "direction";
inline constexpr const char* kIntensityFactor = "intensity";

// Filter -> total noise -> decomposition -> metrics for one set.
struct SetAnalysis {
  SetMetrics metrics;
  NoiseDecomposition decomposition;
  std::vector<SpectrumBins> total_spectra;
  std::vector<SpectrumBins> stochastic_spectra;
};

SetAnalysis analyze_set(const TrialSet& trials, const AnalysisParams& params,
                        std::uint64_t averaging_seed, std::vector<Warning>& warnings);

// Runs every trial set and comparison of the manifest. Module errors are
// rethrown with the trial-set label (or pair) prefixed, keeping their kind.
ComparisonReport run_analysis(const Manifest& manifest);

// Reference vs comparison: rms t-tests and spectrum ANOVAs for total and
// stochastic noise.
ComparisonResult compare_sets(const SetAnalysis& reference, const SetAnalysis& comparison,
                              const AnalysisParams& params, std::vector<Warning>& warnings);

}  // namespace simnoise::app
