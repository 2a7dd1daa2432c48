#include "simnoise/app/trace_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "simnoise/error.hpp"

namespace simnoise::app {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> SplitCells(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    cells.push_back(Trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

[[noreturn]] void Fail(const std::string& source, std::size_t line, const std::string& what) {
  std::ostringstream msg;
  msg << source << ":" << line << ": " << what;
  throw ParseError(msg.str());
}

double ParseCell(std::string_view cell, const std::string& source, std::size_t line) {
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(value)) {
    Fail(source, line, "non-numeric cell '" + std::string(cell) + "'");
  }
  return value;
}

// Rates recovered from decimal timestamps carry rounding; snap to 1 uHz when
// that is within 1e-9 relative.
double SnapRate(double rate) {
  const double snapped = std::round(rate * 1e6) / 1e6;
  return std::abs(snapped - rate) <= 1e-9 * rate ? snapped : rate;
}

}  // namespace

Signal parse_trace(std::string_view text, std::optional<double> declared_rate_hz,
                   const std::string& source_name) {
  std::vector<double> times;
  std::vector<double> values;
  std::vector<std::size_t> line_numbers;
  std::size_t columns = 0;
  bool header_seen = false;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? eol : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    line = Trim(line);
    if (line.empty()) continue;
    const auto cells = SplitCells(line);
    if (!header_seen) {
      header_seen = true;
      columns = cells.size();
      if (columns != 1 && columns != 2) {
        Fail(source_name, line_no, "expected 1 or 2 columns, header has " + std::to_string(columns));
      }
      continue;
    }
    if (cells.size() != columns) {
      Fail(source_name, line_no, "expected " + std::to_string(columns) + " cells, got " +
                                     std::to_string(cells.size()));
    }
    if (columns == 2) times.push_back(ParseCell(cells[0], source_name, line_no));
    values.push_back(ParseCell(cells.back(), source_name, line_no));
    line_numbers.push_back(line_no);
  }
  if (!header_seen) Fail(source_name, 1, "empty file");
  if (values.empty()) Fail(source_name, line_no, "no data rows after the header");

  double rate = 0.0;
  if (columns == 1 || times.size() < 2) {
    if (!declared_rate_hz) {
      Fail(source_name, line_numbers.front(),
           columns == 1 ? "single-column trace needs a declared sample rate"
                        : "cannot infer sample rate from a single timestamp");
    }
    rate = *declared_rate_hz;
  } else {
    // The median step is the nominal spacing, so a single gap is reported at
    // its own row rather than skewing the reference.
    std::vector<double> steps(times.size() - 1);
    for (std::size_t i = 1; i < times.size(); ++i) steps[i - 1] = times[i] - times[i - 1];
    std::vector<double> sorted = steps;
    std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
    const double nominal = sorted[sorted.size() / 2];
    if (!(nominal > 0.0)) Fail(source_name, line_numbers[1], "timestamps are not increasing");
    for (std::size_t i = 0; i < steps.size(); ++i) {
      if (std::abs(steps[i] - nominal) > 1e-4 * nominal) {
        std::ostringstream what;
        what << "non-uniform timestamp spacing (" << steps[i] << " s vs nominal " << nominal << " s)";
        Fail(source_name, line_numbers[i + 1], what.str());
      }
    }
    const double span = times.back() - times.front();
    rate = SnapRate(static_cast<double>(times.size() - 1) / span);
    if (declared_rate_hz && std::abs(*declared_rate_hz - rate) > 1e-4 * rate) {
      std::ostringstream what;
      what << "timestamps imply " << rate << " Hz but " << *declared_rate_hz << " Hz was declared";
      throw ValidationError(source_name + ": " + what.str());
    }
  }
  try {
    return Signal(std::move(values), rate);
  } catch (const ParameterError& e) {
    throw ParseError(source_name + ": " + e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("read failed for " + path.string());
  return buffer.str();
}

Signal load_trace(const std::filesystem::path& path, std::optional<double> declared_rate_hz) {
  return parse_trace(read_file(path), declared_rate_hz, path.string());
}

std::string format_number(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc()) throw ParameterError("number formatting failed");
  return std::string(buffer, ptr);
}

std::string format_trace(const Signal& signal, TraceLayout layout) {
  std::string out;
  out.reserve(signal.size() * 32);
  if (layout == TraceLayout::kTimeAndValue) {
    out += "time_s,acceleration_mps2\n";
  } else {
    out += "acceleration_mps2\n";
  }
  for (std::size_t k = 0; k < signal.size(); ++k) {
    if (layout == TraceLayout::kTimeAndValue) {
      out += format_number(static_cast<double>(k) / signal.sample_rate_hz());
      out += ',';
    }
    out += format_number(signal[k]);
    out += '\n';
  }
  return out;
}

void write_trace(const std::filesystem::path& path, const Signal& signal, TraceLayout layout) {
  write_file_atomic(path, format_trace(signal, layout));
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

}  // namespace simnoise::app
