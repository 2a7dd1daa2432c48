#include "cli.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "simnoise/app/analysis.hpp"
#include "simnoise/app/manifest.hpp"
#include "simnoise/app/report.hpp"
#include "simnoise/app/trace_io.hpp"
#include "simnoise/decomposition.hpp"
#include "simnoise/error.hpp"

namespace simnoise::cli {
namespace fs = std::filesystem;

namespace {

struct Options {
  std::string manifest;
  std::string out = "out";
  std::optional<double> cutoff_hz;
  std::optional<double> f_max_hz;
  std::optional<double> bin_width_hz;
  std::optional<double> alpha;
  std::optional<std::string> t_test;
  std::optional<std::string> fit_fundamental;
  std::optional<std::uint64_t> seed;
  std::string format = "all";
};

void AddCommon(CLI::App* cmd, Options& o, bool with_format) {
  cmd->add_option("--manifest", o.manifest, "Manifest JSON file")->required();
  cmd->add_option("--out", o.out, "Output directory")->capture_default_str();
  cmd->add_option("--cutoff-hz", o.cutoff_hz, "Low-pass cutoff in Hz, 0 disables filtering");
  cmd->add_option("--f-max-hz", o.f_max_hz, "Upper spectrum frequency");
  cmd->add_option("--bin-width-hz", o.bin_width_hz, "Spectrum bin width");
  cmd->add_option("--alpha", o.alpha, "Significance level");
  cmd->add_option("--t-test", o.t_test, "pooled or welch")->check(CLI::IsMember({"pooled", "welch"}));
  cmd->add_option("--fit-fundamental", o.fit_fundamental, "on or off")->check(CLI::IsMember({"on", "off"}));
  cmd->add_option("--seed", o.seed, "Base seed for synthetic sets and random averaging");
  if (with_format) {
    cmd->add_option("--format", o.format, "json, csv or all")
        ->check(CLI::IsMember({"json", "csv", "all"}))
        ->capture_default_str();
  }
}

app::Manifest LoadWithOverrides(const Options& o) {
  app::Manifest m = app::load_manifest(o.manifest);
  app::AnalysisParams& p = m.analysis;
  if (o.cutoff_hz) p.cutoff_hz = *o.cutoff_hz > 0.0 ? o.cutoff_hz : std::nullopt;
  if (o.f_max_hz) p.f_max_hz = *o.f_max_hz;
  if (o.bin_width_hz) p.bin_width_hz = *o.bin_width_hz;
  if (o.alpha) p.alpha = *o.alpha;
  if (o.t_test) p.t_test = *o.t_test == "welch" ? TTestVariant::kWelch : TTestVariant::kPooled;
  if (o.fit_fundamental) p.fit_fundamental = *o.fit_fundamental == "on";
  if (o.seed) p.seed = *o.seed;
  app::validate(m);
  return m;
}

std::string SafeName(const std::string& label) {
  std::string out = label;
  for (char& c : out) {
    const auto u = static_cast<unsigned char>(c);
    if (!std::isalnum(u) && c != '-' && c != '_' && c != '.') c = '_';
  }
  return out;
}

std::string TrialName(std::size_t i) {
  std::string n = std::to_string(i + 1);
  return "trial_" + std::string(n.size() < 2 ? 2 - n.size() : 0, '0') + n;
}

void Report(const std::vector<fs::path>& written) {
  for (const fs::path& p : written) std::cout << p.generic_string() << "\n";
}

int Finish(const app::ComparisonReport& report) {
  for (const app::Warning& w : report.warnings) {
    std::cerr << "warning: " << w.subject << ": " << w.message << "\n";
  }
  return report.has_degenerate_warning() ? kDegenerateWarning : kOk;
}

// Materializes synthetic sets as trace files and writes a manifest that
// points at them. Trace-backed sets are copied through with absolute paths.
int Generate(const Options& o) {
  app::Manifest m = LoadWithOverrides(o);
  const fs::path out(o.out);
  app::Manifest rewritten = m;
  rewritten.base_dir = out;
  std::vector<fs::path> written;
  for (std::size_t i = 0; i < m.trial_sets.size(); ++i) {
    app::TrialSetEntry& e = rewritten.trial_sets[i];
    if (!e.synth) {
      for (fs::path& t : e.traces) t = fs::absolute(m.base_dir / t);
      if (e.command_trace) e.command_trace = fs::absolute(m.base_dir / *e.command_trace);
      continue;
    }
    const TrialSet trials = app::load_trial_set(m, i);
    const fs::path dir = fs::path("traces") / SafeName(e.label);
    e.traces.clear();
    for (std::size_t t = 0; t < trials.trial_count(); ++t) {
      const fs::path rel = dir / (TrialName(t) + ".csv");
      app::write_trace(out / rel, trials.trials()[t]);
      e.traces.push_back(rel);
      written.push_back(out / rel);
    }
    e.synth.reset();
  }
  const fs::path manifest_path = out / "manifest.json";
  app::write_file_atomic(manifest_path, app::to_json(rewritten).dump(2) + "\n");
  written.push_back(manifest_path);
  Report(written);
  return kOk;
}

std::string WideTable(const std::vector<Signal>& traces) {
  std::string text = "time_s";
  for (std::size_t i = 0; i < traces.size(); ++i) text += "," + TrialName(i);
  text += "\n";
  const double rate = traces.front().sample_rate_hz();
  for (std::size_t k = 0; k < traces.front().size(); ++k) {
    text += app::format_number(static_cast<double>(k) / rate);
    for (const Signal& s : traces) text += "," + app::format_number(s[k]);
    text += "\n";
  }
  return text;
}

int Decompose(const Options& o) {
  const app::Manifest m = LoadWithOverrides(o);
  const DecomposeOptions options{m.analysis.cutoff_hz, m.analysis.fit_fundamental};
  const fs::path out(o.out);
  std::vector<fs::path> written;
  for (std::size_t i = 0; i < m.trial_sets.size(); ++i) {
    const std::string& label = m.trial_sets[i].label;
    const TrialSet trials = app::load_trial_set(m, i);
    const NoiseDecomposition d = [&] {
      try {
        return decompose(trials, options);
      } catch (const Error& e) {
        throw Error(e.kind(), "trial set '" + label + "': " + e.what());
      }
    }();
    const fs::path dir = out / SafeName(label);
    app::write_trace(dir / "deterministic.csv", d.deterministic);
    app::write_file_atomic(dir / "total.csv", WideTable(d.total));
    app::write_file_atomic(dir / "stochastic.csv", WideTable(d.stochastic));
    written.insert(written.end(), {dir / "deterministic.csv", dir / "total.csv", dir / "stochastic.csv"});
  }
  Report(written);
  return kOk;
}

int Metrics(const Options& o) {
  app::Manifest m = LoadWithOverrides(o);
  m.comparisons.clear();
  const app::ComparisonReport report = app::run_analysis(m);
  Report(app::export_report(report, app::parse_export_format(o.format), o.out));
  return Finish(report);
}

int Compare(const Options& o) {
  const app::Manifest m = LoadWithOverrides(o);
  if (m.comparisons.empty()) throw ValidationError("manifest has no comparisons");
  const app::ComparisonReport report = app::run_analysis(m);
  const app::ExportFormat format = app::parse_export_format(o.format);
  std::vector<fs::path> written;
  if (format != app::ExportFormat::kCsv) {
    nlohmann::json doc = app::to_json(report);
    const fs::path path = fs::path(o.out) / "comparisons.json";
    app::write_file_atomic(path,
                           nlohmann::json{{"parameters", doc["parameters"]}, {"comparisons", doc["comparisons"]}}
                                   .dump(2) +
                               "\n");
    written.push_back(path);
  }
  if (format != app::ExportFormat::kJson) {
    for (const auto& [name, content] : app::render_csv_tables(report)) {
      if (name != "table1.csv" && name != "anova.csv") continue;
      const fs::path path = fs::path(o.out) / name;
      app::write_file_atomic(path, content);
      written.push_back(path);
    }
  }
  Report(written);
  return Finish(report);
}

int FullReport(const Options& o) {
  const app::Manifest m = LoadWithOverrides(o);
  const app::ComparisonReport report = app::run_analysis(m);
  Report(app::export_report(report, app::parse_export_format(o.format), o.out));
  return Finish(report);
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"Noise decomposition and statistics for repeated motion recordings", "simnoise"};
  app.require_subcommand(1);
  Options o;
  CLI::App* generate = app.add_subcommand("generate", "Write synthetic trial sets as trace files");
  CLI::App* decompose_cmd = app.add_subcommand("decompose", "Write total / deterministic / stochastic noise traces");
  CLI::App* metrics = app.add_subcommand("metrics", "Per-set rms, SNR, DSR, spectra and averaging curves");
  CLI::App* compare = app.add_subcommand("compare", "Reference vs comparison t-tests and spectrum ANOVAs");
  CLI::App* report = app.add_subcommand("report", "Full pipeline: metrics, comparisons and ANOVAs");
  AddCommon(generate, o, false);
  AddCommon(decompose_cmd, o, false);
  AddCommon(metrics, o, true);
  AddCommon(compare, o, true);
  AddCommon(report, o, true);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidationFailure;
  }

  try {
    if (*generate) return Generate(o);
    if (*decompose_cmd) return Decompose(o);
    if (*metrics) return Metrics(o);
    if (*compare) return Compare(o);
    return FullReport(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::kIo ? kIoFailure : kValidationFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidationFailure;
  }
}

}  // namespace simnoise::cli
