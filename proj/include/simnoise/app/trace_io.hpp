#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "simnoise/signal.hpp"

namespace simnoise::app {

// Trace files are comma-separated text with one header row, values in m/s^2.
//
//   acceleration_mps2          single column; the rate must be declared
//   0.0012                     by the caller (manifest sample_rate_hz)
//   ...
//
//   time_s,acceleration_mps2   two columns; the rate is inferred from the
//   0,0.0012                   timestamps, which must be uniformly spaced to
//   0.002,-0.0031              1 part in 10^4
//
// Blank lines are ignored. Errors name the 1-based line number.
Signal parse_trace(std::string_view text, std::optional<double> declared_rate_hz,
                   const std::string& source_name = "<trace>");

// IoError when the file cannot be read.
Signal load_trace(const std::filesystem::path& path,
                  std::optional<double> declared_rate_hz = std::nullopt);

enum class TraceLayout { kTimeAndValue, kValueOnly };

std::string format_trace(const Signal& signal, TraceLayout layout = TraceLayout::kTimeAndValue);

void write_trace(const std::filesystem::path& path, const Signal& signal,
                 TraceLayout layout = TraceLayout::kTimeAndValue);

// Shortest decimal that round-trips to the same double.
std::string format_number(double value);

// Writes to a sibling temporary file and renames it over `path`. Creates the
// parent directory. IoError on failure.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

}  // namespace simnoise::app
