#include "simnoise/app/report.hpp"

#include <cmath>
#include <limits>

#include "simnoise/app/trace_io.hpp"
#include "simnoise/error.hpp"

namespace simnoise::app {

using nlohmann::json;

namespace {

constexpr int kFormatVersion = 1;

// Non-finite values are stored as the strings "inf", "-inf", "nan".
json Num(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

json Opt(const std::optional<double>& v) { return v ? Num(*v) : json(nullptr); }

json OptText(const std::optional<std::string>& v) { return v ? json(*v) : json(nullptr); }

double GetNum(const json& j, const char* key) {
  const json& v = j.at(key);
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw ParseError(std::string("report field \"") + key + "\" is not a number");
}

std::optional<double> GetOpt(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return GetNum(j, key);
}

std::optional<std::string> GetOptText(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<std::string>();
}

json NumArray(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(Num(x));
  return out;
}

std::vector<double> GetNumArray(const json& j, const char* key) {
  std::vector<double> out;
  for (const json& x : j.at(key)) {
    if (x.is_number()) {
      out.push_back(x.get<double>());
    } else {
      json wrap = {{"v", x}};
      out.push_back(GetNum(wrap, "v"));
    }
  }
  return out;
}

json ToJson(const Ratio& r) { return {{"value", Num(r.value)}, {"degenerate", r.degenerate}}; }

Ratio RatioFrom(const json& j) { return {GetNum(j, "value"), j.at("degenerate").get<bool>()}; }

json ToJson(const TTestResult& t) {
  return {{"t_statistic", Num(t.t_statistic)},
          {"degrees_of_freedom", Num(t.degrees_of_freedom)},
          {"p_value", Num(t.p_value)},
          {"two_sided", t.two_sided},
          {"degenerate", t.degenerate}};
}

TTestResult TTestFrom(const json& j) {
  TTestResult t;
  t.t_statistic = GetNum(j, "t_statistic");
  t.degrees_of_freedom = GetNum(j, "degrees_of_freedom");
  t.p_value = GetNum(j, "p_value");
  t.two_sided = j.at("two_sided").get<bool>();
  t.degenerate = j.at("degenerate").get<bool>();
  return t;
}

json ToJson(const AnovaResult& a) {
  json rows = json::array();
  for (const AnovaRow& r : a.rows) {
    rows.push_back({{"effect", r.effect},
                    {"sum_of_squares", Num(r.sum_of_squares)},
                    {"df", Num(r.df)},
                    {"mean_square", Num(r.mean_square)},
                    {"f_statistic", Opt(r.f_statistic)},
                    {"p_value", Opt(r.p_value)}});
  }
  return {{"rows", rows},
          {"total_sum_of_squares", Num(a.total_sum_of_squares)},
          {"interaction_pooled", a.interaction_pooled},
          {"f_undefined", a.f_undefined}};
}

AnovaResult AnovaFrom(const json& j) {
  AnovaResult a;
  for (const json& r : j.at("rows")) {
    a.rows.push_back({r.at("effect").get<std::string>(), GetNum(r, "sum_of_squares"), GetNum(r, "df"),
                      GetNum(r, "mean_square"), GetOpt(r, "f_statistic"), GetOpt(r, "p_value")});
  }
  a.total_sum_of_squares = GetNum(j, "total_sum_of_squares");
  a.interaction_pooled = j.at("interaction_pooled").get<bool>();
  a.f_undefined = j.at("f_undefined").get<bool>();
  return a;
}

json ToJson(const SpectrumSummary& s) {
  return {{"bin_centers_hz", NumArray(s.bin_centers_hz)}, {"mean", NumArray(s.mean)}, {"sd", NumArray(s.stddev)}};
}

SpectrumSummary SummaryFrom(const json& j) {
  return {GetNumArray(j, "bin_centers_hz"), GetNumArray(j, "mean"), GetNumArray(j, "sd")};
}

json ToJson(const SpectrumBins& s) {
  return {{"bin_centers_hz", NumArray(s.bin_centers_hz)},
          {"amplitudes", NumArray(s.amplitudes)},
          {"bin_width_hz", Num(s.bin_width_hz)}};
}

SpectrumBins BinsFrom(const json& j) {
  return {GetNumArray(j, "bin_centers_hz"), GetNumArray(j, "amplitudes"), GetNum(j, "bin_width_hz")};
}

json ToJson(const TestOutcome& t) {
  return {{"statistic", Opt(t.statistic)},
          {"df1", Num(t.df1)},
          {"df2", Opt(t.df2)},
          {"p_value", Opt(t.p_value)},
          {"significant", t.significant}};
}

TestOutcome OutcomeFrom(const json& j) {
  TestOutcome t;
  t.statistic = GetOpt(j, "statistic");
  t.df1 = GetNum(j, "df1");
  t.df2 = GetOpt(j, "df2");
  t.p_value = GetOpt(j, "p_value");
  t.significant = j.at("significant").get<bool>();
  return t;
}

json ToJson(const SetMetrics& m) {
  json snr = json::array();
  for (const Ratio& r : m.snr) snr.push_back(ToJson(r));
  json n_values = json::array();
  for (std::size_t n : m.averaging.n_values) n_values.push_back(n);
  return {{"label", m.label},
          {"direction", OptText(m.direction)},
          {"intensity", OptText(m.intensity)},
          {"peak_amplitude", Opt(m.peak_amplitude)},
          {"n_trials", m.n_trials},
          {"samples_per_trial", m.samples_per_trial},
          {"sample_rate_hz", Num(m.sample_rate_hz)},
          {"fundamental_fitted", m.fundamental_fitted},
          {"command_rms", Num(m.command_rms)},
          {"total_rms", NumArray(m.total_rms)},
          {"stochastic_rms", NumArray(m.stochastic_rms)},
          {"deterministic_rms", Num(m.deterministic_rms)},
          {"stochastic_rms_combined", Num(m.stochastic_rms_combined)},
          {"snr", snr},
          {"snr_mean", Num(m.snr_mean)},
          {"snr_sd", Num(m.snr_sd)},
          {"dsr", ToJson(m.dsr)},
          {"averaging_curve",
           {{"n_values", n_values},
            {"residual_rms", NumArray(m.averaging.residual_rms)},
            {"pearson_r", Opt(m.averaging.pearson_r)}}},
          {"spectra",
           {{"total", ToJson(m.total_spectrum)},
            {"deterministic", ToJson(m.deterministic_spectrum)},
            {"stochastic", ToJson(m.stochastic_spectrum)}}}};
}

SetMetrics SetFrom(const json& j) {
  SetMetrics m;
  m.label = j.at("label").get<std::string>();
  m.direction = GetOptText(j, "direction");
  m.intensity = GetOptText(j, "intensity");
  m.peak_amplitude = GetOpt(j, "peak_amplitude");
  m.n_trials = j.at("n_trials").get<std::size_t>();
  m.samples_per_trial = j.at("samples_per_trial").get<std::size_t>();
  m.sample_rate_hz = GetNum(j, "sample_rate_hz");
  m.fundamental_fitted = j.at("fundamental_fitted").get<bool>();
  m.command_rms = GetNum(j, "command_rms");
  m.total_rms = GetNumArray(j, "total_rms");
  m.stochastic_rms = GetNumArray(j, "stochastic_rms");
  m.deterministic_rms = GetNum(j, "deterministic_rms");
  m.stochastic_rms_combined = GetNum(j, "stochastic_rms_combined");
  for (const json& r : j.at("snr")) m.snr.push_back(RatioFrom(r));
  m.snr_mean = GetNum(j, "snr_mean");
  m.snr_sd = GetNum(j, "snr_sd");
  m.dsr = RatioFrom(j.at("dsr"));
  const json& curve = j.at("averaging_curve");
  for (const json& n : curve.at("n_values")) m.averaging.n_values.push_back(n.get<std::size_t>());
  m.averaging.residual_rms = GetNumArray(curve, "residual_rms");
  m.averaging.pearson_r = GetOpt(curve, "pearson_r");
  const json& spectra = j.at("spectra");
  m.total_spectrum = SummaryFrom(spectra.at("total"));
  m.deterministic_spectrum = BinsFrom(spectra.at("deterministic"));
  m.stochastic_spectrum = SummaryFrom(spectra.at("stochastic"));
  return m;
}

json ToJson(const ComparisonResult& c) {
  return {{"reference", c.reference},
          {"comparison", c.comparison},
          {"total_rms_test", ToJson(c.total_rms_test)},
          {"stochastic_rms_test", ToJson(c.stochastic_rms_test)},
          {"total_spectrum_anova", ToJson(c.total_spectrum_anova)},
          {"stochastic_spectrum_anova", ToJson(c.stochastic_spectrum_anova)},
          {"summary",
           {{"total_rms", ToJson(c.total_rms)},
            {"stochastic_rms", ToJson(c.stochastic_rms)},
            {"total_spectrum", ToJson(c.total_spectrum)},
            {"stochastic_spectrum", ToJson(c.stochastic_spectrum)}}}};
}

ComparisonResult ComparisonFrom(const json& j) {
  ComparisonResult c;
  c.reference = j.at("reference").get<std::string>();
  c.comparison = j.at("comparison").get<std::string>();
  c.total_rms_test = TTestFrom(j.at("total_rms_test"));
  c.stochastic_rms_test = TTestFrom(j.at("stochastic_rms_test"));
  c.total_spectrum_anova = AnovaFrom(j.at("total_spectrum_anova"));
  c.stochastic_spectrum_anova = AnovaFrom(j.at("stochastic_spectrum_anova"));
  const json& s = j.at("summary");
  c.total_rms = OutcomeFrom(s.at("total_rms"));
  c.stochastic_rms = OutcomeFrom(s.at("stochastic_rms"));
  c.total_spectrum = OutcomeFrom(s.at("total_spectrum"));
  c.stochastic_spectrum = OutcomeFrom(s.at("stochastic_spectrum"));
  return c;
}

// ---------------------------------------------------------------------------
// CSV

std::string Cell(double v) {
  if (std::isfinite(v)) return format_number(v);
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

std::string Cell(const std::optional<double>& v) { return v ? Cell(*v) : std::string(); }

std::string Cell(const std::optional<std::string>& v) { return v ? *v : std::string(); }

std::string Quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

class CsvWriter {
 public:
  explicit CsvWriter(std::initializer_list<std::string> header) { Row(header); }

  void Row(std::initializer_list<std::string> cells) {
    bool first = true;
    for (const std::string& c : cells) {
      if (!first) text_ += ',';
      text_ += Quote(c);
      first = false;
    }
    text_ += '\n';
  }

  std::string str() && { return std::move(text_); }

 private:
  std::string text_;
};

std::string Table1(const ComparisonReport& r) {
  CsvWriter w({"reference", "comparison", "noise", "test", "statistic", "df1", "df2", "p_value", "significant"});
  for (const ComparisonResult& c : r.comparisons) {
    auto row = [&](const char* noise, const char* test, const TestOutcome& t) {
      w.Row({c.reference, c.comparison, noise, test, Cell(t.statistic), Cell(t.df1), Cell(t.df2),
             Cell(t.p_value), t.significant ? "true" : "false"});
    };
    row("total", "rms_t_test", c.total_rms);
    row("total", "spectrum_anova", c.total_spectrum);
    row("stochastic", "rms_t_test", c.stochastic_rms);
    row("stochastic", "spectrum_anova", c.stochastic_spectrum);
  }
  return std::move(w).str();
}

std::string SnrTable(const ComparisonReport& r) {
  CsvWriter w({"label", "direction", "intensity", "peak_amplitude", "snr_mean", "snr_sd", "n_trials"});
  for (const SetMetrics& m : r.sets) {
    w.Row({m.label, Cell(m.direction), Cell(m.intensity), Cell(m.peak_amplitude), Cell(m.snr_mean),
           Cell(m.snr_sd), std::to_string(m.n_trials)});
  }
  return std::move(w).str();
}

std::string ComponentsTable(const ComparisonReport& r) {
  CsvWriter w({"label", "direction", "intensity", "peak_amplitude", "command_rms", "total_rms_mean", "total_rms_sd",
               "deterministic_rms", "stochastic_rms", "dsr", "averaging_r"});
  for (const SetMetrics& m : r.sets) {
    const double tm = mean(m.total_rms);
    const double tsd = std::sqrt(sample_variance(m.total_rms));
    w.Row({m.label, Cell(m.direction), Cell(m.intensity), Cell(m.peak_amplitude), Cell(m.command_rms), Cell(tm),
           Cell(tsd), Cell(m.deterministic_rms), Cell(m.stochastic_rms_combined), Cell(m.dsr.value),
           Cell(m.averaging.pearson_r)});
  }
  return std::move(w).str();
}

std::string SpectraTable(const ComparisonReport& r) {
  CsvWriter w({"label", "component", "frequency_hz", "amplitude_mean", "amplitude_sd"});
  for (const SetMetrics& m : r.sets) {
    for (std::size_t j = 0; j < m.total_spectrum.mean.size(); ++j) {
      w.Row({m.label, "total", Cell(m.total_spectrum.bin_centers_hz[j]), Cell(m.total_spectrum.mean[j]),
             Cell(m.total_spectrum.stddev[j])});
    }
    for (std::size_t j = 0; j < m.deterministic_spectrum.size(); ++j) {
      w.Row({m.label, "deterministic", Cell(m.deterministic_spectrum.bin_centers_hz[j]),
             Cell(m.deterministic_spectrum.amplitudes[j]), ""});
    }
    for (std::size_t j = 0; j < m.stochastic_spectrum.mean.size(); ++j) {
      w.Row({m.label, "stochastic", Cell(m.stochastic_spectrum.bin_centers_hz[j]),
             Cell(m.stochastic_spectrum.mean[j]), Cell(m.stochastic_spectrum.stddev[j])});
    }
  }
  return std::move(w).str();
}

std::string AveragingTable(const ComparisonReport& r) {
  CsvWriter w({"label", "n", "inv_sqrt_n", "residual_rms"});
  for (const SetMetrics& m : r.sets) {
    for (std::size_t i = 0; i < m.averaging.n_values.size(); ++i) {
      const auto n = m.averaging.n_values[i];
      w.Row({m.label, std::to_string(n), Cell(1.0 / std::sqrt(static_cast<double>(n))),
             Cell(m.averaging.residual_rms[i])});
    }
  }
  return std::move(w).str();
}

std::string AnovaTable(const ComparisonReport& r) {
  CsvWriter w({"analysis", "effect", "sum_of_squares", "df", "mean_square", "f", "p_value"});
  auto rows = [&w](const std::string& name, const AnovaResult& a) {
    for (const AnovaRow& row : a.rows) {
      w.Row({name, row.effect, Cell(row.sum_of_squares), Cell(row.df), Cell(row.mean_square), Cell(row.f_statistic),
             Cell(row.p_value)});
    }
  };
  for (const ComparisonResult& c : r.comparisons) {
    rows("spectrum:total:" + c.reference + ":" + c.comparison, c.total_spectrum_anova);
    rows("spectrum:stochastic:" + c.reference + ":" + c.comparison, c.stochastic_spectrum_anova);
  }
  if (r.snr_anova) rows("snr", *r.snr_anova);
  if (r.total_rms_anova) rows("total_rms", *r.total_rms_anova);
  return std::move(w).str();
}

std::string WarningsTable(const ComparisonReport& r) {
  CsvWriter w({"subject", "message", "degenerate"});
  for (const Warning& x : r.warnings) w.Row({x.subject, x.message, x.degenerate ? "true" : "false"});
  return std::move(w).str();
}

}  // namespace

json to_json(const ComparisonReport& r) {
  json sets = json::array();
  for (const SetMetrics& m : r.sets) sets.push_back(ToJson(m));
  json comps = json::array();
  for (const ComparisonResult& c : r.comparisons) comps.push_back(ToJson(c));
  json warnings = json::array();
  for (const Warning& w : r.warnings) {
    warnings.push_back({{"subject", w.subject}, {"message", w.message}, {"degenerate", w.degenerate}});
  }
  return {{"format_version", kFormatVersion},
          {"parameters", to_json(r.params)},
          {"generator", r.generator.empty() ? json(nullptr) : json(r.generator)},
          {"trial_sets", sets},
          {"comparisons", comps},
          {"snr_anova", r.snr_anova ? ToJson(*r.snr_anova) : json(nullptr)},
          {"total_rms_anova", r.total_rms_anova ? ToJson(*r.total_rms_anova) : json(nullptr)},
          {"anova_sets", r.anova_sets},
          {"warnings", warnings}};
}

ComparisonReport report_from_json(const json& doc) {
  try {
    if (doc.at("format_version").get<int>() != kFormatVersion) throw ParseError("unsupported report format version");
    ComparisonReport r;
    r.params = analysis_from_json(doc.at("parameters"));
    if (!doc.at("generator").is_null()) r.generator = doc.at("generator").get<std::string>();
    for (const json& s : doc.at("trial_sets")) r.sets.push_back(SetFrom(s));
    for (const json& c : doc.at("comparisons")) r.comparisons.push_back(ComparisonFrom(c));
    if (!doc.at("snr_anova").is_null()) r.snr_anova = AnovaFrom(doc.at("snr_anova"));
    if (!doc.at("total_rms_anova").is_null()) r.total_rms_anova = AnovaFrom(doc.at("total_rms_anova"));
    r.anova_sets = doc.at("anova_sets").get<std::vector<std::string>>();
    for (const json& w : doc.at("warnings")) {
      r.warnings.push_back({w.at("subject").get<std::string>(), w.at("message").get<std::string>(),
                            w.at("degenerate").get<bool>()});
    }
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed report: ") + e.what());
  }
}

ExportFormat parse_export_format(const std::string& text) {
  if (text == "json") return ExportFormat::kJson;
  if (text == "csv") return ExportFormat::kCsv;
  if (text == "all") return ExportFormat::kAll;
  throw ValidationError("format must be json, csv or all, got \"" + text + "\"");
}

std::vector<std::pair<std::string, std::string>> render_csv_tables(const ComparisonReport& r) {
  return {{"table1.csv", Table1(r)},
          {"snr_vs_intensity.csv", SnrTable(r)},
          {"noise_components.csv", ComponentsTable(r)},
          {"spectra.csv", SpectraTable(r)},
          {"averaging_curves.csv", AveragingTable(r)},
          {"anova.csv", AnovaTable(r)},
          {"warnings.csv", WarningsTable(r)}};
}

std::vector<std::filesystem::path> export_report(const ComparisonReport& report, ExportFormat format,
                                                 const std::filesystem::path& out_dir) {
  std::vector<std::filesystem::path> written;
  if (format != ExportFormat::kCsv) {
    const auto path = out_dir / "report.json";
    write_file_atomic(path, to_json(report).dump(2) + "\n");
    written.push_back(path);
  }
  if (format != ExportFormat::kJson) {
    for (const auto& [name, content] : render_csv_tables(report)) {
      const auto path = out_dir / name;
      write_file_atomic(path, content);
      written.push_back(path);
    }
  }
  return written;
}

}  // namespace simnoise::app
