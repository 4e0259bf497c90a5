#include "atomlens/cli/csv.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <istream>
#include <optional>
#include <ostream>
#include <string_view>

#include <fmt/format.h>

namespace atomlens::cli {
namespace {

constexpr std::array<std::string_view, 4> kRequired = {"detuning_mhz", "counts_signal",
                                                       "counts_reference", "dwell_s"};
constexpr std::string_view kBackground = "background_rate_hz";

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

template <typename T>
T parse_number(std::string_view field, std::size_t line, std::string_view column) {
  T value{};
  const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || end != field.data() + field.size() || field.empty()) {
    throw CsvParseError(line, "cannot parse " + std::string(column) + " value '" +
                                  std::string(field) + "'");
  }
  return value;
}

}  // namespace

std::vector<spectro::SpectrumPoint> read_spectrum_csv(std::istream& in) {
  std::string raw;
  std::size_t line_no = 0;
  if (!std::getline(in, raw)) throw CsvParseError(1, "missing header");
  ++line_no;
  if (!raw.empty() && raw.back() == '\r') raw.pop_back();

  const auto header = split(raw);
  if (header.size() < kRequired.size() ||
      !std::equal(kRequired.begin(), kRequired.end(), header.begin())) {
    throw CsvParseError(line_no, "header must start with detuning_mhz,counts_signal,counts_reference,dwell_s");
  }
  const bool has_background = header.size() == kRequired.size() + 1 && header.back() == kBackground;
  if (header.size() > kRequired.size() && !has_background) {
    throw CsvParseError(line_no, "unknown column; only background_rate_hz may follow dwell_s");
  }

  std::vector<spectro::SpectrumPoint> points;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (raw.empty()) continue;
    const auto fields = split(raw);
    if (fields.size() != header.size()) {
      throw CsvParseError(line_no, "expected " + std::to_string(header.size()) + " fields, found " +
                                       std::to_string(fields.size()));
    }
    spectro::SpectrumPoint p{};
    p.detuning = parse_number<double>(fields[0], line_no, kRequired[0]);
    p.counts_signal = parse_number<std::int64_t>(fields[1], line_no, kRequired[1]);
    p.counts_reference = parse_number<std::int64_t>(fields[2], line_no, kRequired[2]);
    p.dwell = parse_number<double>(fields[3], line_no, kRequired[3]);
    if (has_background) p.background_rate = parse_number<double>(fields[4], line_no, kBackground);
    if (p.counts_signal < 0 || p.counts_reference < 0) {
      throw CsvParseError(line_no, "counts must be non-negative");
    }
    if (!(p.dwell > 0.0)) throw CsvParseError(line_no, "dwell_s must be positive");
    points.push_back(p);
  }
  if (points.empty()) throw CsvParseError(line_no, "no data rows");
  return points;
}

void write_spectrum_csv(std::ostream& out, std::span<const spectro::SpectrumPoint> points) {
  const bool background = std::any_of(points.begin(), points.end(),
                                      [](const auto& p) { return p.background_rate.has_value(); });
  out << "detuning_mhz,counts_signal,counts_reference,dwell_s";
  if (background) out << ',' << kBackground;
  out << '\n';
  for (const auto& p : points) {
    out << fmt::format("{},{},{},{}", p.detuning, p.counts_signal, p.counts_reference, p.dwell);
    if (background) out << fmt::format(",{}", p.background_rate.value_or(0.0));
    out << '\n';
  }
}

}  // namespace atomlens::cli
