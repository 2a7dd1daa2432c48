#include <gtest/gtest.h>

#include <filesystem>

#include "cli.hpp"
#include "simnoise/app/manifest.hpp"
#include "simnoise/app/trace_io.hpp"

namespace simnoise::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path Fresh(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("simnoise_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

fs::path WriteManifest(const fs::path& dir, double sigma_b = 0.02) {
  json set_a{{"label", "ref"},
             {"command", {{"type", "sinusoid"}, {"frequency_hz", 1.0}, {"peak_amplitude", 1.1}}},
             {"synth", {{"stochastic_sigma", 0.02}, {"n_trials", 5}}}};
  json set_b = set_a;
  set_b["label"] = "cmp";
  set_b["synth"]["stochastic_sigma"] = sigma_b;
  json doc{{"trial_sets", json::array({set_a, set_b})},
           {"comparisons", json::array({{{"reference", "ref"}, {"comparison", "cmp"}}})}};
  app::write_file_atomic(dir / "manifest.json", doc.dump(2));
  return dir / "manifest.json";
}

TEST(Cli, ReportWritesEverything) {
  const fs::path dir = Fresh("report");
  const fs::path m = WriteManifest(dir);
  EXPECT_EQ(run({"report", "--manifest", m.string(), "--out", (dir / "out").string()}), kOk);
  for (const char* f : {"report.json", "table1.csv", "spectra.csv", "averaging_curves.csv", "anova.csv"}) {
    EXPECT_TRUE(fs::exists(dir / "out" / f)) << f;
  }
}

TEST(Cli, FlagsOverrideManifest) {
  const fs::path dir = Fresh("flags");
  const fs::path m = WriteManifest(dir);
  ASSERT_EQ(run({"report", "--manifest", m.string(), "--out", (dir / "out").string(), "--format", "json",
                 "--cutoff-hz", "0", "--alpha", "0.01", "--t-test", "welch", "--f-max-hz", "40", "--bin-width-hz",
                 "2", "--fit-fundamental", "on", "--seed", "12"}),
            kOk);
  const json r = json::parse(app::read_file(dir / "out" / "report.json"));
  EXPECT_TRUE(r["parameters"]["cutoff_hz"].is_null());
  EXPECT_EQ(r["parameters"]["alpha"], 0.01);
  EXPECT_EQ(r["parameters"]["t_test"], "welch");
  EXPECT_EQ(r["parameters"]["fit_fundamental"], true);
  EXPECT_EQ(r["parameters"]["seed"], 12);
  EXPECT_EQ(r["trial_sets"][0]["spectra"]["total"]["mean"].size(), 21u);
  EXPECT_FALSE(fs::exists(dir / "out" / "table1.csv"));
}

TEST(Cli, GenerateThenAnalyzeMatchesInMemoryRun) {
  const fs::path dir = Fresh("generate");
  const fs::path m = WriteManifest(dir);
  ASSERT_EQ(run({"generate", "--manifest", m.string(), "--out", (dir / "gen").string()}), kOk);
  EXPECT_TRUE(fs::exists(dir / "gen" / "traces" / "ref" / "trial_01.csv"));
  ASSERT_EQ(run({"report", "--manifest", (dir / "gen" / "manifest.json").string(), "--out", (dir / "a").string(),
                 "--format", "csv"}),
            kOk);
  ASSERT_EQ(run({"report", "--manifest", m.string(), "--out", (dir / "b").string(), "--format", "csv"}), kOk);
  EXPECT_EQ(app::read_file(dir / "a" / "table1.csv"), app::read_file(dir / "b" / "table1.csv"));
  EXPECT_EQ(app::read_file(dir / "a" / "noise_components.csv"), app::read_file(dir / "b" / "noise_components.csv"));
}

TEST(Cli, DecomposeMetricsAndCompare) {
  const fs::path dir = Fresh("subcommands");
  const fs::path m = WriteManifest(dir);
  EXPECT_EQ(run({"decompose", "--manifest", m.string(), "--out", (dir / "d").string()}), kOk);
  EXPECT_TRUE(fs::exists(dir / "d" / "ref" / "deterministic.csv"));
  EXPECT_TRUE(fs::exists(dir / "d" / "cmp" / "stochastic.csv"));
  EXPECT_EQ(run({"metrics", "--manifest", m.string(), "--out", (dir / "m").string(), "--format", "json"}), kOk);
  const json r = json::parse(app::read_file(dir / "m" / "report.json"));
  EXPECT_TRUE(r["comparisons"].empty());
  EXPECT_EQ(run({"compare", "--manifest", m.string(), "--out", (dir / "c").string()}), kOk);
  EXPECT_TRUE(fs::exists(dir / "c" / "table1.csv"));
  EXPECT_TRUE(fs::exists(dir / "c" / "comparisons.json"));
}

TEST(Cli, ExitCodes) {
  const fs::path dir = Fresh("exit");
  EXPECT_EQ(run({"report", "--manifest", (dir / "missing.json").string()}), kIoFailure);
  app::write_file_atomic(dir / "bad.json", "{ not json");
  EXPECT_EQ(run({"report", "--manifest", (dir / "bad.json").string()}), kValidationFailure);
  const fs::path m = WriteManifest(dir);
  EXPECT_EQ(run({"report", "--manifest", m.string(), "--alpha", "2"}), kValidationFailure);
  EXPECT_EQ(run({"report", "--manifest", m.string(), "--t-test", "paired"}), kValidationFailure);
  EXPECT_EQ(run({"frobnicate"}), kValidationFailure);
  const fs::path zero = WriteManifest(Fresh("exit_zero"), 0.0);
  json doc = json::parse(app::read_file(zero));
  doc["trial_sets"][0]["synth"]["stochastic_sigma"] = 0.0;
  app::write_file_atomic(zero, doc.dump());
  EXPECT_EQ(run({"report", "--manifest", zero.string(), "--out", (dir / "z").string()}), kDegenerateWarning);
}

}  // namespace
}  // namespace simnoise::cli
