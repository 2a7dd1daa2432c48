// Acceptance gate: one PASS/FAIL line per criterion. Tolerances, seed counts
// and time limits are fixed here. Exit status is non-zero if any criterion
// fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "cli.hpp"
#include "oracles/stats_oracle.hpp"
#include "simnoise/app/analysis.hpp"
#include "simnoise/app/trace_io.hpp"
#include "simnoise/averaging.hpp"
#include "simnoise/decomposition.hpp"
#include "simnoise/kernels.hpp"
#include "simnoise/metrics.hpp"
#include "simnoise/spectrum.hpp"
#include "simnoise/stats.hpp"
#include "simnoise/synth.hpp"

namespace {

using namespace simnoise;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string Fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Paper scale: 500 Hz, 1 s, 20 trials, 1 Hz command.
SynthSpec PaperScale(double amplitude, Direction dir, std::vector<DeterministicTerm> terms, double sigma,
                     std::uint64_t seed) {
  SynthSpec s;
  s.command = CommandSpec{Sinusoid{1.0, amplitude, dir, 1.0}, "fixture"};
  s.deterministic_terms = std::move(terms);
  s.stochastic_sigma = sigma;
  s.n_trials = 20;
  s.sample_rate_hz = 500.0;
  s.duration_s = 1.0;
  s.seed = seed;
  return s;
}

Outcome Criterion1() {
  constexpr int kSets = 100;
  constexpr double kTol = 1e-9;
  constexpr double kTimeLimit = 10.0;
  const auto start = Clock::now();
  double worst_identity = 0.0, worst_mean = 0.0;
  for (int seed = 0; seed < kSets; ++seed) {
    const double amp = 0.07 + 0.02 * seed;
    const SynthSpec spec =
        PaperScale(amp, seed % 2 ? Direction::kUp : Direction::kDown, {{4.0, 0.04 * amp, 0.3}, {42.0, 0.004, 1.0}},
                   0.01 + 0.0001 * seed, 1000 + seed);
    const NoiseDecomposition d = decompose(generate_trialset(spec, "c1"), 80.0);
    for (std::size_t k = 0; k < d.deterministic.size(); ++k) {
      double sum = 0.0;
      for (std::size_t i = 0; i < d.trial_count(); ++i) {
        worst_identity = std::max(worst_identity, std::abs(d.deterministic[k] + d.stochastic[i][k] - d.total[i][k]));
        sum += d.stochastic[i][k];
      }
      worst_mean = std::max(worst_mean, std::abs(sum / static_cast<double>(d.trial_count())));
    }
  }
  const double t = Seconds(start);
  return {worst_identity <= kTol && worst_mean <= kTol && t < kTimeLimit,
          Fmt("%d sets; max reconstruction error %.2e, max stochastic mean %.2e (tol %.0e); %.2f s (limit %.0f s)",
              kSets, worst_identity, worst_mean, kTol, t, kTimeLimit)};
}

Outcome Criterion2() {
  constexpr int kSeeds = 1000;
  constexpr double kA = 0.05, kSigma = 0.02, kN = 20;
  constexpr double kTimeLimit = 120.0;
  const auto start = Clock::now();
  const double expected_det = std::sqrt(std::pow(kA / std::sqrt(2.0), 2) + kSigma * kSigma / kN);
  const double expected_sto = kSigma * std::sqrt(1.0 - 1.0 / kN);
  std::vector<double> det(kSeeds), sto(kSeeds);
  for (int seed = 0; seed < kSeeds; ++seed) {
    const SynthSpec spec = PaperScale(1.1, Direction::kUp, {{4.0, kA, 0.0}}, kSigma, 50000 + seed);
    const NoiseDecomposition d = decompose(generate_trialset(spec, "c2"), DecomposeOptions{std::nullopt, false});
    det[seed] = rms(d.deterministic);
    sto[seed] = stochastic_rms(d.stochastic, StochasticPooling::kPooledSamples);
  }
  const double det_mean = oracle::Mean(det);
  const double det_se = std::sqrt(oracle::Var(det) / kSeeds);
  const double det_z = std::abs(det_mean - expected_det) / det_se;
  double worst_rel = 0.0;
  for (double s : sto) worst_rel = std::max(worst_rel, std::abs(s - expected_sto) / expected_sto);
  const double t = Seconds(start);
  return {det_z <= 3.0 && worst_rel <= 0.03 && t < kTimeLimit,
          Fmt("%d seeds; det rms mean %.6f vs %.6f (%.2f SE, limit 3); worst pooled stochastic rms deviation "
              "%.2f%% (limit 3%%); %.1f s (limit %.0f s)",
              kSeeds, det_mean, expected_det, det_z, 100 * worst_rel, t, kTimeLimit)};
}

Outcome Criterion3() {
  const std::vector<double> x{3.0, 4.0};
  const double e_rms = std::abs(rms(x) - std::sqrt(12.5));

  const std::size_t n = 500;
  std::vector<double> cmd(n, std::sqrt(2.0)), noise(n, 0.1);
  const Ratio s = snr(Signal(cmd, 500.0), Signal(noise, 500.0));
  const double e_snr = std::abs(s.value - 200.0) / 200.0;

  std::vector<double> det(n, 0.0805), plus(n), minus(n);
  for (std::size_t k = 0; k < n; ++k) {
    plus[k] = (k % 2 ? 0.01 : -0.01);
    minus[k] = -plus[k];
  }
  NoiseDecomposition d{{Signal(std::vector<double>(n, 0.0), 500.0), Signal(std::vector<double>(n, 0.0), 500.0)},
                       Signal(det, 500.0),
                       {Signal(plus, 500.0), Signal(minus, 500.0)},
                       false};
  const Ratio r = dsr(d);
  const double e_dsr = std::abs(r.value - 8.05) / 8.05;
  return {e_rms <= 1e-12 && e_snr <= 1e-9 && e_dsr <= 1e-9 && !s.degenerate && !r.degenerate,
          Fmt("rms{3,4} err %.1e (tol 1e-12); SNR %.12g rel err %.1e (tol 1e-9); DSR %.12g rel err %.1e (tol 1e-9)",
              e_rms, s.value, e_snr, r.value, e_dsr)};
}

Outcome Criterion4() {
  double worst_in = 0.0, worst_out = 0.0;
  for (double f : {1.0, 4.0, 17.0, 42.0, 80.0}) {
    for (double amp : {0.05, 1.0, 2.0}) {
      std::vector<double> x(500);
      for (std::size_t k = 0; k < 500; ++k) x[k] = amp * std::sin(2 * std::numbers::pi * f * k / 500.0 + 0.7);
      const SpectrumBins s = amplitude_spectrum(Signal(x, 500.0), 80.0, 1.0);
      for (std::size_t j = 0; j < s.size(); ++j) {
        if (s.bin_centers_hz[j] == f) worst_in = std::max(worst_in, std::abs(s.amplitudes[j] - amp));
        else worst_out = std::max(worst_out, s.amplitudes[j]);
      }
    }
  }
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g(0.0, 0.05);
  double worst_parseval = 0.0;
  for (int i = 0; i < 100; ++i) {
    std::vector<double> x(100 + 9 * i);
    for (double& v : x) v = g(rng) + (i % 3) * 0.01;
    const Signal sig(x, 500.0);
    double spec = 0.0, time = 0.0;
    for (double p : two_sided_power_spectrum(sig)) spec += p;
    for (double v : x) time += v * v;
    time /= static_cast<double>(x.size());
    worst_parseval = std::max(worst_parseval, std::abs(spec - time) / time);
  }
  return {worst_in <= 1e-9 && worst_out <= 1e-9 && worst_parseval <= 1e-6,
          Fmt("own-bin error %.1e, other bins max %.1e (tol 1e-9); Parseval worst rel error %.1e over 100 signals "
              "(tol 1e-6)",
              worst_in, worst_out, worst_parseval)};
}

Outcome Criterion5() {
  constexpr int kSeeds = 1000;
  int white_ok = 0, mixed_ok = 0;
  std::vector<double> white_r, mixed_r;
  for (int seed = 0; seed < kSeeds; ++seed) {
    const SynthSpec white = PaperScale(1.1, Direction::kUp, {}, 0.02, 70000 + seed);
    const auto cw = averaging_curve(decompose(generate_trialset(white, "w"), 80.0));
    const double rw = cw.pearson_r.value_or(-2.0);
    white_ok += rw >= 0.95;
    white_r.push_back(rw);

    const SynthSpec mixed = PaperScale(1.1, Direction::kUp, {{4.0, 0.05, 0.0}}, 0.02, 80000 + seed);
    const auto cm = averaging_curve(decompose(generate_trialset(mixed, "m"), 80.0));
    const double rm = cm.pearson_r.value_or(-2.0);
    mixed_ok += rm >= 0.77 && rm <= 0.99;
    mixed_r.push_back(rm);
  }
  std::sort(white_r.begin(), white_r.end());
  std::sort(mixed_r.begin(), mixed_r.end());
  const double white_frac = white_ok / double(kSeeds);
  const double mixed_frac = mixed_ok / double(kSeeds);
  const bool a = white_frac >= 0.95;
  const bool b = mixed_frac >= 0.80;
  return {a && b,
          Fmt("white noise: r >= 0.95 in %.1f%% of %d seeds (need 95%%) [%s]; mixed 4 Hz + white: r in [0.77, 0.99] "
              "in %.1f%% (need 80%%) [%s], r median %.3f, 5th-95th pct %.3f-%.3f",
              100 * white_frac, kSeeds, a ? "ok" : "fail", 100 * mixed_frac, b ? "ok" : "fail",
              mixed_r[kSeeds / 2], mixed_r[kSeeds / 20], mixed_r[kSeeds * 19 / 20])};
}

Outcome Criterion6() {
  constexpr double kTol = 1e-6;
  constexpr double kTimeLimit = 300.0;
  const auto start = Clock::now();
  std::mt19937_64 rng(606);
  std::normal_distribution<double> g;
  double worst = 0.0;
  int datasets = 0;
  for (int set = 0; set < 24; ++set) {
    const std::size_t na = 2 + set % 6, nb = 2 + (set * 7) % 9;
    std::vector<double> a(na), b(nb);
    for (double& v : a) v = 1.0 + g(rng);
    for (double& v : b) v = 1.0 + 0.1 * set + (1 + set % 4) * 0.5 * g(rng);
    const TTestResult p = t_test_unpaired(a, b, TTestVariant::kPooled);
    const TTestResult w = t_test_unpaired(a, b, TTestVariant::kWelch);
    const oracle::TTest op = oracle::PooledT(a, b);
    const oracle::TTest ow = oracle::WelchT(a, b);
    for (double e : {p.t_statistic - op.t, p.degrees_of_freedom - op.df, p.p_value - op.p, w.t_statistic - ow.t,
                     w.degrees_of_freedom - ow.df, w.p_value - ow.p}) {
      worst = std::max(worst, std::abs(e));
    }
    ++datasets;
  }
  for (int set = 0; set < 24; ++set) {
    const std::size_t la = 2 + set % 3, lb = 2 + set % 4, n = 1 + set % 5;
    std::vector<std::vector<std::vector<double>>> cells(la, std::vector<std::vector<double>>(lb));
    FactorialTable table("a", "b");
    for (std::size_t i = 0; i < la; ++i) {
      for (std::size_t j = 0; j < lb; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
          const double v = 0.3 * i * (set % 2) + 0.2 * j + g(rng);
          cells[i][j].push_back(v);
          table.add(std::to_string(i), std::to_string(j), v);
        }
      }
    }
    const AnovaResult r = anova_two_way(table);
    const oracle::Anova o = oracle::TwoWay(cells);
    const AnovaRow* ra = r.find("a");
    const AnovaRow* rb = r.find("b");
    const AnovaRow* res = r.find(kResidualEffect);
    std::vector<double> errs{ra->sum_of_squares - o.ss_a, rb->sum_of_squares - o.ss_b, res->sum_of_squares - o.ss_res,
                             res->df - o.df_res, *ra->f_statistic - o.f_a, *rb->f_statistic - o.f_b,
                             *ra->p_value - o.p_a, *rb->p_value - o.p_b};
    if (n > 1) {
      const AnovaRow* ab = r.find(kInteractionEffect);
      errs.insert(errs.end(), {ab->sum_of_squares - o.ss_ab, *ab->f_statistic - o.f_ab, *ab->p_value - o.p_ab});
    }
    for (double e : errs) worst = std::max(worst, std::abs(e));
    ++datasets;
  }

  // Null calibration.
  constexpr int kRuns = 10000;
  std::vector<double> pt, pf;
  std::vector<double> a(20), b(20);
  for (int run = 0; run < kRuns; ++run) {
    for (double& v : a) v = g(rng);
    for (double& v : b) v = g(rng);
    pt.push_back(t_test_unpaired(a, b).p_value);
    FactorialTable table("a", "b");
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 4; ++k) table.add(std::to_string(i), std::to_string(j), g(rng));
      }
    }
    pf.push_back(*anova_two_way(table).find("a")->p_value);
  }
  const double ks_t = oracle::KsUniform(pt);
  const double ks_f = oracle::KsUniform(pf);
  const double t = Seconds(start);
  return {worst <= kTol && ks_t < 0.02 && ks_f < 0.02 && t < kTimeLimit,
          Fmt("%d datasets, max |library - oracle| %.1e (tol %.0e); null KS distance t-test %.4f, ANOVA %.4f over %d "
              "runs (limit 0.02); %.1f s (limit %.0f s)",
              datasets, worst, kTol, ks_t, ks_f, kRuns, t, kTimeLimit)};
}

// Comparison fixture: deterministic noise grows with commanded amplitude.
std::vector<DeterministicTerm> GrowingNoise(double amplitude) {
  return {{3.0, 0.04 * amplitude, 0.4}, {42.0, 0.004, 1.1}};
}

Outcome Criterion7() {
  constexpr int kSeeds = 200;
  const std::pair<double, double> separated[] = {{0.07, 1.1}, {0.3, 1.6}, {1.1, 2.0}};
  const std::pair<double, double> same_noise[] = {{0.07, 0.11}, {0.3, 0.48}, {1.1, 1.52}, {1.6, 2.06}, {2.0, 2.5}};
  app::AnalysisParams params;
  int sep_ok = 0, sep_total = 0, same_ok = 0, same_total = 0;
  double sep_worst = 0.0, same_worst = 1.0;
  for (int seed = 0; seed < kSeeds; ++seed) {
    std::vector<app::Warning> warnings;
    for (auto [ra, ca] : separated) {
      const auto ref = app::analyze_set(
          generate_trialset(PaperScale(ra, Direction::kUp, GrowingNoise(ra), 0.01, 2 * seed), "r"), params, 0, warnings);
      const auto cmp = app::analyze_set(
          generate_trialset(PaperScale(ca, Direction::kUp, GrowingNoise(ca), 0.01, 2 * seed + 1), "c"), params, 0,
          warnings);
      const double p = app::compare_sets(ref, cmp, params, warnings).total_rms_test.p_value;
      sep_ok += p < 0.001;
      sep_worst = std::max(sep_worst, p);
      ++sep_total;
    }
    for (auto [ra, ca] : same_noise) {
      const std::vector<DeterministicTerm> terms = GrowingNoise(1.0);
      const auto ref = app::analyze_set(
          generate_trialset(PaperScale(ra, Direction::kUp, terms, 0.01, 9000 + seed), "r"), params, 0, warnings);
      const auto cmp = app::analyze_set(
          generate_trialset(PaperScale(ca, Direction::kUp, terms, 0.01, 9000 + seed), "c"), params, 0, warnings);
      const double p = app::compare_sets(ref, cmp, params, warnings).total_rms_test.p_value;
      same_ok += p > 0.05;
      same_worst = std::min(same_worst, p);
      ++same_total;
    }
  }
  const double f_sep = sep_ok / double(sep_total);
  const double f_same = same_ok / double(same_total);
  return {f_sep >= 0.95 && f_same >= 0.95,
          Fmt("separated pairs p < 0.001 in %.1f%% (worst p %.1e); identical-noise pairs p > 0.05 in %.1f%% (smallest "
              "p %.3f); %d seeds, need 95%%",
              100 * f_sep, sep_worst, 100 * f_same, same_worst, kSeeds)};
}

// Deterministic noise k * A plus constant sigma gives SNR = 1 / (k^2 + 2 sigma_f^2 / A^2),
// which saturates at 1 / k^2. k is chosen so sigma stays comparable to the
// deterministic part; with k ~ 0.04 the rise between 1.6 and 2 m/s^2 is
// below the 20-trial sampling spread.
Outcome Criterion8() {
  constexpr int kSeeds = 100;
  const double amps[] = {0.07, 0.3, 1.1, 1.6, 2.0};
  app::AnalysisParams params;
  int ok = 0;
  double min_dsr_top = 1e300;
  std::vector<double> last_snr, last_dsr;
  for (int seed = 0; seed < kSeeds; ++seed) {
    bool good = true;
    for (Direction dir : {Direction::kUp, Direction::kDown}) {
      const double k = dir == Direction::kUp ? 0.012 : 0.009;
      std::vector<double> snr_v, dsr_v;
      for (int i = 0; i < 5; ++i) {
        std::vector<app::Warning> warnings;
        const SynthSpec spec = PaperScale(amps[i], dir, {{3.0, k * amps[i], 0.4}}, 0.01, 100 * seed + 10 * int(dir) + i);
        const auto m = app::analyze_set(generate_trialset(spec, "f"), params, 0, warnings).metrics;
        snr_v.push_back(m.snr_mean);
        dsr_v.push_back(m.dsr.value);
      }
      for (int i = 1; i < 5; ++i) good &= snr_v[i] > snr_v[i - 1] && dsr_v[i] > dsr_v[i - 1];
      good &= dsr_v[3] > 1.0 && dsr_v[4] > 1.0;
      min_dsr_top = std::min({min_dsr_top, dsr_v[3], dsr_v[4]});
      last_snr = snr_v;
      last_dsr = dsr_v;
    }
    ok += good;
  }
  return {ok >= 0.95 * kSeeds,
          Fmt("SNR and DSR strictly increasing over 0.07-2 m/s^2 with DSR > 1 at 1.6 and 2 m/s^2 in %d/%d seeds, both "
              "directions (need 95%%); smallest top DSR %.2f; e.g. SNR %.0f..%.0f, DSR %.2f..%.2f",
              ok, kSeeds, min_dsr_top, last_snr.front(), last_snr.back(), last_dsr.front(), last_dsr.back())};
}

Outcome Criterion9() {
  constexpr double kTimeLimit = 30.0;
  const fs::path manifest = fs::path(SIMNOISE_DATA_DIR) / "paper_design.json";
  const fs::path base = fs::temp_directory_path() / "simnoise_acceptance_e2e";
  fs::remove_all(base);
  double worst_time = 0.0;
  int codes[2];
  for (int run = 0; run < 2; ++run) {
    const auto start = Clock::now();
    codes[run] = cli::run({"report", "--manifest", manifest.string(), "--out", (base / std::to_string(run)).string()});
    worst_time = std::max(worst_time, Seconds(start));
  }
  int files = 0;
  bool identical = true;
  for (const auto& entry : fs::directory_iterator(base / "0")) {
    const fs::path other = base / "1" / entry.path().filename();
    identical &= fs::exists(other) && app::read_file(entry.path()) == app::read_file(other);
    ++files;
  }
  return {identical && files == 8 && codes[0] == 0 && codes[1] == 0 && worst_time < kTimeLimit,
          Fmt("%d files byte-identical: %s; exit codes %d/%d; slowest run %.2f s for 30 sets x 20 trials x 500 samples "
              "(limit %.0f s)",
              files, identical ? "yes" : "no", codes[0], codes[1], worst_time, kTimeLimit)};
}

}  // namespace

int main() {
  std::printf("kernels: %s\n", simnoise::kernels::active().name);
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"1 decomposition identity", Criterion1}, {"2 ground-truth recovery", Criterion2},
      {"3 rms/SNR/DSR exactness", Criterion3},  {"4 spectrum correctness", Criterion4},
      {"5 1/sqrt(n) averaging law", Criterion5}, {"6 statistics oracle equivalence", Criterion6},
      {"7 comparison sensitivity", Criterion7},     {"8 SNR/DSR shape", Criterion8},
      {"9 end-to-end determinism", Criterion9}};
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
