#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "simnoise/app/analysis.hpp"

namespace simnoise::app {

nlohmann::json to_json(const ComparisonReport& report);

// Inverse of to_json. ParseError on a malformed document.
ComparisonReport report_from_json(const nlohmann::json& doc);

enum class ExportFormat { kJson, kCsv, kAll };

ExportFormat parse_export_format(const std::string& text);

// Plot-ready tables, one string per file name.
//   table1.csv            one row per (pair, noise kind, test)
//   snr_vs_intensity.csv  per-set SNR mean / sd
//   noise_components.csv  rms of total / deterministic / stochastic noise, DSR
//   spectra.csv           per-set spectra of each noise component
//   averaging_curves.csv  residual rms vs n and 1/sqrt(n)
//   anova.csv             every ANOVA table row
//   warnings.csv
std::vector<std::pair<std::string, std::string>> render_csv_tables(const ComparisonReport& report);

// Content is a pure function of the report, so identical inputs give
// byte-identical files. Each file is written atomically. Returns the paths
// written. IoError with the path on failure.
std::vector<std::filesystem::path> export_report(const ComparisonReport& report, ExportFormat format,
                                                 const std::filesystem::path& out_dir);

}  // namespace simnoise::app
