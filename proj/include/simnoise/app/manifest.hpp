#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "simnoise/averaging.hpp"
#include "simnoise/metrics.hpp"
#include "simnoise/signal.hpp"
#include "simnoise/stats.hpp"
#include "simnoise/synth.hpp"

namespace simnoise::app {

// Defaults follow the recording protocol: 80 Hz low-pass, spectra 0-80 Hz in
// 1 Hz bins, alpha 0.05, pooled-variance t-test.
struct AnalysisParams {
  std::optional<double> cutoff_hz = 80.0;  // nullopt: no filtering
  double f_max_hz = 80.0;
  double bin_width_hz = 1.0;
  double alpha = 0.05;
  TTestVariant t_test = TTestVariant::kPooled;
  bool fit_fundamental = false;
  StochasticPooling pooling = StochasticPooling::kPooledSamples;
  SubsetMode averaging = SubsetMode::kPrefix;
  std::uint64_t seed = 0;

  friend bool operator==(const AnalysisParams&, const AnalysisParams&) = default;
};

// Synthetic source for a trial set: a SynthSpec without the command, which
// comes from the owning entry.
struct SynthSource {
  std::vector<DeterministicTerm> deterministic_terms;
  double stochastic_sigma = 0.0;
  std::size_t n_trials = 20;
  double sample_rate_hz = 500.0;
  double duration_s = 1.0;
  std::optional<std::uint64_t> seed;  // default: analysis seed + set index

  friend bool operator==(const SynthSource&, const SynthSource&) = default;
};

struct TrialSetEntry {
  std::string label;
  // Exactly one of command / command_trace.
  std::optional<Sinusoid> command;
  std::optional<std::filesystem::path> command_trace;
  // Exactly one of traces / synth.
  std::vector<std::filesystem::path> traces;
  std::optional<SynthSource> synth;
  // Needed for single-column trace files.
  std::optional<double> sample_rate_hz;
  // Factor levels for the direction x intensity ANOVAs; when absent they come
  // from the sinusoid command.
  std::map<std::string, std::string> factors;

  friend bool operator==(const TrialSetEntry&, const TrialSetEntry&) = default;
};

struct ComparisonEntry {
  std::string reference;
  std::string comparison;

  friend bool operator==(const ComparisonEntry&, const ComparisonEntry&) = default;
};

struct Manifest {
  AnalysisParams analysis;
  std::vector<TrialSetEntry> trial_sets;
  std::vector<ComparisonEntry> comparisons;
  // Sets entering the direction x intensity ANOVAs. Default: every label used
  // as a comparison reference.
  std::optional<std::vector<std::string>> snr_anova;
  // Relative paths resolve against this directory.
  std::filesystem::path base_dir;

  const TrialSetEntry* find(const std::string& label) const;

  friend bool operator==(const Manifest&, const Manifest&) = default;
};

// ValidationError for duplicate labels, dangling comparison labels, and
// entries without exactly one command and one data source. ParseError for
// malformed JSON shapes.
Manifest parse_manifest(const nlohmann::json& doc, const std::filesystem::path& base_dir);
Manifest load_manifest(const std::filesystem::path& path);

nlohmann::json to_json(const Manifest& manifest);
nlohmann::json to_json(const AnalysisParams& params);
AnalysisParams analysis_from_json(const nlohmann::json& obj);

void validate(const Manifest& manifest);

// Builds the trial set for entry `index` (loading files or generating synth
// data). Errors carry the set label.
TrialSet load_trial_set(const Manifest& manifest, std::size_t index);

SynthSpec synth_spec_for(const Manifest& manifest, std::size_t index);

std::string to_string(TTestVariant v);
std::string to_string(StochasticPooling p);
std::string to_string(SubsetMode m);

}  // namespace simnoise::app
