#include "simnoise/app/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "simnoise/app/trace_io.hpp"
#include "simnoise/error.hpp"

namespace simnoise::app {
namespace {

template <typename Fn>
auto Tagged(const std::string& subject, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(e.kind(), subject + ": " + e.what());
  }
}

TestOutcome FromTTest(const TTestResult& t, double alpha) {
  TestOutcome out;
  out.statistic = std::isfinite(t.t_statistic) ? std::optional<double>(t.t_statistic) : std::nullopt;
  out.df1 = t.degrees_of_freedom;
  out.p_value = t.p_value;
  out.significant = t.p_value < alpha;
  return out;
}

TestOutcome FromAnova(const AnovaResult& a, double alpha) {
  TestOutcome out;
  const AnovaRow* profile = a.find(kProfileFactor);
  const AnovaRow* residual = a.find(kResidualEffect);
  out.df1 = profile->df;
  out.df2 = residual->df;
  out.statistic = profile->f_statistic;
  out.p_value = profile->p_value;
  out.significant = profile->p_value && *profile->p_value < alpha;
  return out;
}

AnovaResult SpectrumAnova(const std::vector<SpectrumBins>& reference,
                          const std::vector<SpectrumBins>& comparison) {
  FactorialTable table(kProfileFactor, kFrequencyFactor);
  auto add = [&table](const std::vector<SpectrumBins>& spectra, const char* level) {
    for (const SpectrumBins& s : spectra) {
      for (std::size_t j = 0; j < s.size(); ++j) {
        table.add(level, format_number(s.bin_centers_hz[j]), s.amplitudes[j]);
      }
    }
  };
  add(reference, "reference");
  add(comparison, "comparison");
  return anova_two_way(table);
}

std::pair<double, double> MeanSd(const std::vector<double>& v) {
  if (v.empty()) return {0.0, 0.0};
  const double m = mean(v);
  return {m, std::sqrt(sample_variance(v))};
}

}  // namespace

bool ComparisonReport::has_degenerate_warning() const {
  for (const Warning& w : warnings) {
    if (w.degenerate) return true;
  }
  return false;
}

SetAnalysis analyze_set(const TrialSet& trials, const AnalysisParams& params,
                        std::uint64_t averaging_seed, std::vector<Warning>& warnings) {
  const std::string& label = trials.label();
  DecomposeOptions options{params.cutoff_hz, params.fit_fundamental};
  SetAnalysis out{SetMetrics{}, decompose(trials, options), {}, {}};
  const NoiseDecomposition& d = out.decomposition;
  SetMetrics& m = out.metrics;

  m.label = label;
  m.n_trials = trials.trial_count();
  m.samples_per_trial = trials.samples_per_trial();
  m.sample_rate_hz = trials.sample_rate_hz();
  m.fundamental_fitted = d.fundamental_fitted;
  if (const Sinusoid* s = trials.command().sinusoid()) {
    m.direction = to_string(s->direction);
    m.intensity = format_number(s->peak_amplitude);
    m.peak_amplitude = s->peak_amplitude;
  }

  const Signal command = trials.rendered_command();
  m.command_rms = rms(command);
  std::vector<double> finite_snr;
  for (std::size_t i = 0; i < d.trial_count(); ++i) {
    m.total_rms.push_back(rms(d.total[i]));
    m.stochastic_rms.push_back(rms(d.stochastic[i]));
    const Ratio r = snr(command, d.total[i]);
    m.snr.push_back(r);
    if (r.degenerate) {
      warnings.push_back({label, "trial " + std::to_string(i) + ": zero total noise, SNR infinite"});
    } else {
      finite_snr.push_back(r.value);
    }
  }
  std::tie(m.snr_mean, m.snr_sd) = MeanSd(finite_snr);
  m.deterministic_rms = rms(d.deterministic);
  m.stochastic_rms_combined = stochastic_rms(d.stochastic, params.pooling);
  m.dsr = dsr(d, params.pooling);
  if (m.dsr.degenerate) warnings.push_back({label, "zero stochastic noise, DSR undefined"});

  if (d.trial_count() >= 3) {
    m.averaging = averaging_curve(d, AveragingOptions{params.averaging, averaging_seed});
    if (!m.averaging.pearson_r) {
      warnings.push_back({label, "no stochastic component, averaging-curve correlation undefined"});
    }
  } else {
    warnings.push_back({label, "fewer than 3 trials, averaging curve skipped", false});
  }

  out.total_spectra = spectrum_set(d.total, params.f_max_hz, params.bin_width_hz);
  out.stochastic_spectra = spectrum_set(d.stochastic, params.f_max_hz, params.bin_width_hz);
  m.total_spectrum = summarize(out.total_spectra);
  m.stochastic_spectrum = summarize(out.stochastic_spectra);
  m.deterministic_spectrum = amplitude_spectrum(d.deterministic, params.f_max_hz, params.bin_width_hz);
  return out;
}

ComparisonResult compare_sets(const SetAnalysis& reference, const SetAnalysis& comparison,
                              const AnalysisParams& params, std::vector<Warning>& warnings) {
  ComparisonResult r;
  r.reference = reference.metrics.label;
  r.comparison = comparison.metrics.label;
  const std::string pair = r.reference + " vs " + r.comparison;

  r.total_rms_test = t_test_unpaired(reference.metrics.total_rms, comparison.metrics.total_rms, params.t_test);
  r.stochastic_rms_test =
      t_test_unpaired(reference.metrics.stochastic_rms, comparison.metrics.stochastic_rms, params.t_test);
  r.total_spectrum_anova = SpectrumAnova(reference.total_spectra, comparison.total_spectra);
  r.stochastic_spectrum_anova = SpectrumAnova(reference.stochastic_spectra, comparison.stochastic_spectra);

  r.total_rms = FromTTest(r.total_rms_test, params.alpha);
  r.stochastic_rms = FromTTest(r.stochastic_rms_test, params.alpha);
  r.total_spectrum = FromAnova(r.total_spectrum_anova, params.alpha);
  r.stochastic_spectrum = FromAnova(r.stochastic_spectrum_anova, params.alpha);

  if (r.total_rms_test.degenerate) warnings.push_back({pair, "total-noise rms t-test has zero variance"});
  if (r.stochastic_rms_test.degenerate) warnings.push_back({pair, "stochastic-noise rms t-test has zero variance"});
  if (r.total_spectrum_anova.f_undefined) warnings.push_back({pair, "total-noise spectrum ANOVA has zero residual variance"});
  if (r.stochastic_spectrum_anova.f_undefined) {
    warnings.push_back({pair, "stochastic-noise spectrum ANOVA has zero residual variance"});
  }
  return r;
}

ComparisonReport run_analysis(const Manifest& manifest) {
  validate(manifest);
  ComparisonReport report;
  report.params = manifest.analysis;

  std::map<std::string, SetAnalysis> analyses;
  for (std::size_t i = 0; i < manifest.trial_sets.size(); ++i) {
    const TrialSetEntry& entry = manifest.trial_sets[i];
    if (entry.synth) report.generator = std::string(kSynthGeneratorName);
    const TrialSet trials = load_trial_set(manifest, i);
    SetAnalysis analysis = Tagged("trial set '" + entry.label + "'", [&] {
      return analyze_set(trials, manifest.analysis, manifest.analysis.seed + i, report.warnings);
    });
    if (auto it = entry.factors.find(kDirectionFactor); it != entry.factors.end()) {
      analysis.metrics.direction = it->second;
    }
    if (auto it = entry.factors.find(kIntensityFactor); it != entry.factors.end()) {
      analysis.metrics.intensity = it->second;
    }
    report.sets.push_back(analysis.metrics);
    analyses.emplace(entry.label, std::move(analysis));
  }

  for (const ComparisonEntry& c : manifest.comparisons) {
    const std::string pair = "comparison '" + c.reference + "' vs '" + c.comparison + "'";
    report.comparisons.push_back(Tagged(pair, [&] {
      return compare_sets(analyses.at(c.reference), analyses.at(c.comparison), manifest.analysis,
                          report.warnings);
    }));
  }

  // Direction x intensity ANOVAs on per-trial SNR and total-noise rms.
  std::vector<std::string> selected;
  if (manifest.snr_anova) {
    selected = *manifest.snr_anova;
  } else {
    for (const ComparisonEntry& c : manifest.comparisons) {
      if (std::find(selected.begin(), selected.end(), c.reference) == selected.end()) {
        selected.push_back(c.reference);
      }
    }
  }
  if (!selected.empty()) {
    FactorialTable snr_table(kDirectionFactor, kIntensityFactor);
    FactorialTable rms_table(kDirectionFactor, kIntensityFactor);
    std::string problem;
    for (const std::string& label : selected) {
      const SetMetrics& m = analyses.at(label).metrics;
      if (!m.direction || !m.intensity) {
        problem = "trial set '" + label + "' has no direction/intensity factors";
        break;
      }
      for (std::size_t i = 0; i < m.n_trials; ++i) {
        if (m.snr[i].degenerate) {
          problem = "trial set '" + label + "' has an infinite SNR";
          break;
        }
        snr_table.add(*m.direction, *m.intensity, m.snr[i].value);
        rms_table.add(*m.direction, *m.intensity, m.total_rms[i]);
      }
      if (!problem.empty()) break;
    }
    if (problem.empty()) {
      try {
        report.snr_anova = anova_two_way(snr_table);
        report.total_rms_anova = anova_two_way(rms_table);
        report.anova_sets = selected;
        if (report.snr_anova->f_undefined || report.total_rms_anova->f_undefined) {
          report.warnings.push_back({"direction x intensity ANOVA", "zero residual variance, F undefined"});
        }
      } catch (const Error& e) {
        report.snr_anova.reset();
        report.total_rms_anova.reset();
        problem = e.what();
      }
    }
    if (!problem.empty()) {
      report.warnings.push_back({"direction x intensity ANOVA", "skipped: " + problem, false});
    }
  }
  return report;
}

}  // namespace simnoise::app
