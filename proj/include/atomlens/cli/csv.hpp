#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "atomlens/spectro.hpp"

// Spectrum CSV: one header line
//   detuning_mhz,counts_signal,counts_reference,dwell_s[,background_rate_hz]
// then one row per point. Comma separated, '.' decimal separator, LF line
// endings (a trailing CR is tolerated on input).

namespace atomlens::cli {

class CsvParseError : public std::runtime_error {
 public:
  CsvParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

std::vector<spectro::SpectrumPoint> read_spectrum_csv(std::istream& in);

// Writes the background column when any point carries a background rate.
void write_spectrum_csv(std::ostream& out, std::span<const spectro::SpectrumPoint> points);

}  // namespace atomlens::cli
