#include "simnoise/app/manifest.hpp"

#include <set>

#include "simnoise/app/trace_io.hpp"
#include "simnoise/error.hpp"

namespace simnoise::app {

using nlohmann::json;

namespace {

[[noreturn]] void Bad(const std::string& where, const std::string& what) {
  throw ParseError("manifest " + where + ": " + what);
}

const json& Require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) Bad(where, std::string("missing \"") + key + "\"");
  return obj.at(key);
}

double Number(const json& v, const std::string& where) {
  if (!v.is_number()) Bad(where, "expected a number");
  return v.get<double>();
}

std::string Text(const json& v, const std::string& where) {
  if (!v.is_string()) Bad(where, "expected a string");
  return v.get<std::string>();
}

std::uint64_t Unsigned(const json& v, const std::string& where) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    Bad(where, "expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

double NumberOr(const json& obj, const char* key, double fallback, const std::string& where) {
  return obj.contains(key) ? Number(obj.at(key), where + "." + key) : fallback;
}

TTestVariant ParseVariant(const std::string& s) {
  if (s == "pooled") return TTestVariant::kPooled;
  if (s == "welch") return TTestVariant::kWelch;
  throw ParseError("t_test must be \"pooled\" or \"welch\", got \"" + s + "\"");
}

StochasticPooling ParsePooling(const std::string& s) {
  if (s == "pooled") return StochasticPooling::kPooledSamples;
  if (s == "mean_of_trials") return StochasticPooling::kMeanOfTrialRms;
  throw ParseError("stochastic_pooling must be \"pooled\" or \"mean_of_trials\", got \"" + s + "\"");
}

SubsetMode ParseSubsetMode(const std::string& s) {
  if (s == "prefix") return SubsetMode::kPrefix;
  if (s == "random") return SubsetMode::kRandom;
  throw ParseError("averaging must be \"prefix\" or \"random\", got \"" + s + "\"");
}

}  // namespace

AnalysisParams analysis_from_json(const json& obj) {
  AnalysisParams p;
  if (obj.is_null()) return p;
  if (!obj.is_object()) Bad("analysis", "expected an object");
  const std::string w = "analysis";
  if (obj.contains("cutoff_hz")) {
    const json& c = obj.at("cutoff_hz");
    if (c.is_null()) {
      p.cutoff_hz.reset();
    } else {
      const double v = Number(c, w + ".cutoff_hz");
      p.cutoff_hz = v > 0.0 ? std::optional<double>(v) : std::nullopt;
    }
  }
  p.f_max_hz = NumberOr(obj, "f_max_hz", p.f_max_hz, w);
  p.bin_width_hz = NumberOr(obj, "bin_width_hz", p.bin_width_hz, w);
  p.alpha = NumberOr(obj, "alpha", p.alpha, w);
  if (obj.contains("t_test")) p.t_test = ParseVariant(Text(obj.at("t_test"), w + ".t_test"));
  if (obj.contains("fit_fundamental")) {
    if (!obj.at("fit_fundamental").is_boolean()) Bad(w + ".fit_fundamental", "expected a boolean");
    p.fit_fundamental = obj.at("fit_fundamental").get<bool>();
  }
  if (obj.contains("stochastic_pooling")) {
    p.pooling = ParsePooling(Text(obj.at("stochastic_pooling"), w + ".stochastic_pooling"));
  }
  if (obj.contains("averaging")) {
    p.averaging = ParseSubsetMode(Text(obj.at("averaging"), w + ".averaging"));
  }
  if (obj.contains("seed")) p.seed = Unsigned(obj.at("seed"), w + ".seed");
  return p;
}

namespace {

Sinusoid ParseSinusoid(const json& obj, const std::string& where) {
  Sinusoid s;
  s.frequency_hz = NumberOr(obj, "frequency_hz", 1.0, where);
  s.peak_amplitude = Number(Require(obj, "peak_amplitude", where), where + ".peak_amplitude");
  s.direction = obj.contains("direction")
                    ? parse_direction(Text(obj.at("direction"), where + ".direction"))
                    : Direction::kUp;
  s.duration_s = NumberOr(obj, "duration_s", 1.0, where);
  return s;
}

SynthSource ParseSynth(const json& obj, const std::string& where) {
  if (!obj.is_object()) Bad(where, "expected an object");
  SynthSource s;
  if (obj.contains("deterministic_terms")) {
    const json& terms = obj.at("deterministic_terms");
    if (!terms.is_array()) Bad(where + ".deterministic_terms", "expected an array");
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const std::string tw = where + ".deterministic_terms[" + std::to_string(i) + "]";
      DeterministicTerm t;
      t.frequency_hz = Number(Require(terms[i], "frequency_hz", tw), tw + ".frequency_hz");
      t.amplitude = Number(Require(terms[i], "amplitude", tw), tw + ".amplitude");
      t.phase_rad = NumberOr(terms[i], "phase_rad", 0.0, tw);
      s.deterministic_terms.push_back(t);
    }
  }
  s.stochastic_sigma = NumberOr(obj, "stochastic_sigma", 0.0, where);
  if (obj.contains("n_trials")) s.n_trials = Unsigned(obj.at("n_trials"), where + ".n_trials");
  s.sample_rate_hz = NumberOr(obj, "sample_rate_hz", s.sample_rate_hz, where);
  s.duration_s = NumberOr(obj, "duration_s", s.duration_s, where);
  if (obj.contains("seed")) s.seed = Unsigned(obj.at("seed"), where + ".seed");
  return s;
}

TrialSetEntry ParseEntry(const json& obj, std::size_t index) {
  const std::string where = "trial_sets[" + std::to_string(index) + "]";
  if (!obj.is_object()) Bad(where, "expected an object");
  TrialSetEntry e;
  e.label = Text(Require(obj, "label", where), where + ".label");
  const json& cmd = Require(obj, "command", where);
  const std::string cw = where + ".command";
  const std::string type = cmd.contains("type") ? Text(cmd.at("type"), cw + ".type") : "sinusoid";
  if (type == "sinusoid") {
    e.command = ParseSinusoid(cmd, cw);
  } else if (type == "trace") {
    e.command_trace = Text(Require(cmd, "path", cw), cw + ".path");
  } else {
    Bad(cw + ".type", "expected \"sinusoid\" or \"trace\"");
  }
  if (obj.contains("traces")) {
    const json& traces = obj.at("traces");
    if (!traces.is_array()) Bad(where + ".traces", "expected an array of paths");
    for (const json& t : traces) e.traces.emplace_back(Text(t, where + ".traces[]"));
  }
  if (obj.contains("synth")) e.synth = ParseSynth(obj.at("synth"), where + ".synth");
  if (obj.contains("sample_rate_hz")) {
    e.sample_rate_hz = Number(obj.at("sample_rate_hz"), where + ".sample_rate_hz");
  }
  if (obj.contains("factors")) {
    const json& f = obj.at("factors");
    if (!f.is_object()) Bad(where + ".factors", "expected an object");
    for (const auto& [k, v] : f.items()) e.factors[k] = Text(v, where + ".factors." + k);
  }
  return e;
}

std::filesystem::path Resolve(const Manifest& m, const std::filesystem::path& p) {
  return p.is_absolute() ? p : m.base_dir / p;
}

}  // namespace

std::string to_string(TTestVariant v) { return v == TTestVariant::kPooled ? "pooled" : "welch"; }

std::string to_string(StochasticPooling p) {
  return p == StochasticPooling::kPooledSamples ? "pooled" : "mean_of_trials";
}

std::string to_string(SubsetMode m) { return m == SubsetMode::kPrefix ? "prefix" : "random"; }

const TrialSetEntry* Manifest::find(const std::string& label) const {
  for (const TrialSetEntry& e : trial_sets) {
    if (e.label == label) return &e;
  }
  return nullptr;
}

void validate(const Manifest& m) {
  const AnalysisParams& p = m.analysis;
  if (p.cutoff_hz && !(*p.cutoff_hz > 0.0)) throw ValidationError("cutoff_hz must be > 0");
  if (!(p.bin_width_hz > 0.0)) throw ValidationError("bin_width_hz must be > 0");
  if (!(p.f_max_hz >= 0.0)) throw ValidationError("f_max_hz must be >= 0");
  if (!(p.alpha > 0.0 && p.alpha < 1.0)) throw ValidationError("alpha must lie in (0, 1)");

  std::set<std::string> labels;
  for (const TrialSetEntry& e : m.trial_sets) {
    if (e.label.empty()) throw ValidationError("trial set with an empty label");
    if (!labels.insert(e.label).second) throw ValidationError("duplicate trial set label '" + e.label + "'");
    if (e.command.has_value() == e.command_trace.has_value()) {
      throw ValidationError("trial set '" + e.label + "' needs exactly one command source");
    }
    if (e.traces.empty() == !e.synth.has_value()) {
      throw ValidationError("trial set '" + e.label + "' needs exactly one of traces / synth");
    }
  }
  for (const ComparisonEntry& c : m.comparisons) {
    for (const std::string& label : {c.reference, c.comparison}) {
      if (!labels.count(label)) {
        throw ValidationError("comparison references unknown trial set '" + label + "'");
      }
    }
  }
  if (m.snr_anova) {
    for (const std::string& label : *m.snr_anova) {
      if (!labels.count(label)) throw ValidationError("snr_anova references unknown trial set '" + label + "'");
    }
  }
}

Manifest parse_manifest(const json& doc, const std::filesystem::path& base_dir) {
  if (!doc.is_object()) Bad("root", "expected an object");
  Manifest m;
  m.base_dir = base_dir;
  if (doc.contains("analysis")) m.analysis = analysis_from_json(doc.at("analysis"));
  const json& sets = Require(doc, "trial_sets", "root");
  if (!sets.is_array()) Bad("trial_sets", "expected an array");
  for (std::size_t i = 0; i < sets.size(); ++i) m.trial_sets.push_back(ParseEntry(sets[i], i));
  if (doc.contains("comparisons")) {
    const json& comps = doc.at("comparisons");
    if (!comps.is_array()) Bad("comparisons", "expected an array");
    for (std::size_t i = 0; i < comps.size(); ++i) {
      const std::string w = "comparisons[" + std::to_string(i) + "]";
      m.comparisons.push_back({Text(Require(comps[i], "reference", w), w + ".reference"),
                               Text(Require(comps[i], "comparison", w), w + ".comparison")});
    }
  }
  if (doc.contains("snr_anova")) {
    const json& s = doc.at("snr_anova");
    if (!s.is_array()) Bad("snr_anova", "expected an array of labels");
    m.snr_anova.emplace();
    for (const json& label : s) m.snr_anova->push_back(Text(label, "snr_anova[]"));
  }
  validate(m);
  return m;
}

Manifest load_manifest(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return parse_manifest(doc, path.has_parent_path() ? path.parent_path() : std::filesystem::path("."));
}

json to_json(const AnalysisParams& p) {
  json j;
  j["cutoff_hz"] = p.cutoff_hz ? json(*p.cutoff_hz) : json(nullptr);
  j["f_max_hz"] = p.f_max_hz;
  j["bin_width_hz"] = p.bin_width_hz;
  j["alpha"] = p.alpha;
  j["t_test"] = to_string(p.t_test);
  j["fit_fundamental"] = p.fit_fundamental;
  j["stochastic_pooling"] = to_string(p.pooling);
  j["averaging"] = to_string(p.averaging);
  j["seed"] = p.seed;
  return j;
}

json to_json(const Manifest& m) {
  json doc;
  doc["analysis"] = to_json(m.analysis);
  json sets = json::array();
  for (const TrialSetEntry& e : m.trial_sets) {
    json s;
    s["label"] = e.label;
    if (e.command) {
      s["command"] = {{"type", "sinusoid"},
                      {"frequency_hz", e.command->frequency_hz},
                      {"peak_amplitude", e.command->peak_amplitude},
                      {"direction", to_string(e.command->direction)},
                      {"duration_s", e.command->duration_s}};
    } else {
      s["command"] = {{"type", "trace"}, {"path", e.command_trace->generic_string()}};
    }
    if (!e.traces.empty()) {
      json traces = json::array();
      for (const auto& t : e.traces) traces.push_back(t.generic_string());
      s["traces"] = traces;
    }
    if (e.synth) {
      json terms = json::array();
      for (const DeterministicTerm& t : e.synth->deterministic_terms) {
        terms.push_back({{"frequency_hz", t.frequency_hz}, {"amplitude", t.amplitude}, {"phase_rad", t.phase_rad}});
      }
      json synth = {{"deterministic_terms", terms},
                    {"stochastic_sigma", e.synth->stochastic_sigma},
                    {"n_trials", e.synth->n_trials},
                    {"sample_rate_hz", e.synth->sample_rate_hz},
                    {"duration_s", e.synth->duration_s}};
      if (e.synth->seed) synth["seed"] = *e.synth->seed;
      s["synth"] = synth;
    }
    if (e.sample_rate_hz) s["sample_rate_hz"] = *e.sample_rate_hz;
    if (!e.factors.empty()) s["factors"] = e.factors;
    sets.push_back(s);
  }
  doc["trial_sets"] = sets;
  json comps = json::array();
  for (const ComparisonEntry& c : m.comparisons) {
    comps.push_back({{"reference", c.reference}, {"comparison", c.comparison}});
  }
  doc["comparisons"] = comps;
  if (m.snr_anova) doc["snr_anova"] = *m.snr_anova;
  return doc;
}

SynthSpec synth_spec_for(const Manifest& m, std::size_t index) {
  const TrialSetEntry& e = m.trial_sets.at(index);
  if (!e.synth) throw ValidationError("trial set '" + e.label + "' has no synth block");
  if (!e.command) throw ValidationError("trial set '" + e.label + "': synth needs a sinusoid command");
  SynthSpec spec;
  spec.command = CommandSpec{*e.command, e.label};
  spec.deterministic_terms = e.synth->deterministic_terms;
  spec.stochastic_sigma = e.synth->stochastic_sigma;
  spec.n_trials = e.synth->n_trials;
  spec.sample_rate_hz = e.synth->sample_rate_hz;
  spec.duration_s = e.synth->duration_s;
  spec.seed = e.synth->seed ? *e.synth->seed : m.analysis.seed + index;
  return spec;
}

TrialSet load_trial_set(const Manifest& m, std::size_t index) {
  const TrialSetEntry& e = m.trial_sets.at(index);
  try {
    if (e.synth) return generate_trialset(synth_spec_for(m, index), e.label);

    std::vector<Signal> trials;
    trials.reserve(e.traces.size());
    for (const auto& path : e.traces) trials.push_back(load_trace(Resolve(m, path), e.sample_rate_hz));
    CommandSpec command;
    command.label = e.label;
    if (e.command) {
      command.waveform = *e.command;
    } else {
      command.waveform = SampledCommand{load_trace(Resolve(m, *e.command_trace), e.sample_rate_hz)};
    }
    return TrialSet(std::move(command), std::move(trials), e.label);
  } catch (const Error& err) {
    throw Error(err.kind(), "trial set '" + e.label + "': " + err.what());
  }
}

}  // namespace simnoise::app
