#include <cmath>
#include <random>

#include "atomlens/errors.hpp"
#include "atomlens/focus.hpp"
#include "atomlens/spectro.hpp"

namespace atomlens::spectro {
namespace {

// Live time per detuning point, s.
constexpr double kReflectionDwell = 3000.0;
constexpr double kTransmissionDwell = 20.0;

std::int64_t sample_poisson(std::mt19937_64& rng, double mean) {
  if (mean <= 0.0) return 0;
  return std::poisson_distribution<std::int64_t>(mean)(rng);
}

}  // namespace

double model_transmission(double detuning, const LineTruth& truth) {
  return 1.0 - lorentzian(detuning, focus::extinction(truth.r_sc), truth.center, truth.fwhm);
}

double model_reflection(double detuning, const LineTruth& truth) {
  return lorentzian(detuning, focus::reflectivity(truth.r_sc), truth.center, truth.fwhm);
}

SyntheticSpectrum generate_spectrum(const LineTruth& truth, const CountRates& rates, double dwell,
                                    std::span<const double> detunings, std::uint64_t seed) {
  if (!(truth.r_sc >= 0.0 && truth.r_sc <= 2.0)) {
    throw DomainError("generate_spectrum: r_sc must lie in [0, 2]");
  }
  if (!(truth.fwhm > 0.0)) throw DomainError("generate_spectrum: fwhm must be positive");
  if (!(rates.reference_rate > 0.0) || !(rates.background_rate >= 0.0)) {
    throw DomainError("generate_spectrum: reference rate must be positive, background >= 0");
  }
  if (!(dwell > 0.0)) throw DomainError("generate_spectrum: dwell must be positive");
  if (detunings.empty()) throw DomainError("generate_spectrum: empty detuning grid");

  std::mt19937_64 rng(seed);
  const double incident = rates.reference_rate * dwell;
  const double background = rates.background_rate * dwell;

  SyntheticSpectrum out;
  out.transmission.reserve(detunings.size());
  out.reflection.reserve(detunings.size());
  for (const double detuning : detunings) {
    std::int64_t reference = sample_poisson(rng, incident);
    // A zero reference draw cannot be normalized; redraw. Only reachable at
    // incident means below ~10 counts.
    while (reference == 0) reference = sample_poisson(rng, incident);
    const std::int64_t transmitted = sample_poisson(rng, incident * model_transmission(detuning, truth));
    const std::int64_t reflected =
        sample_poisson(rng, incident * model_reflection(detuning, truth) + background);
    out.transmission.push_back({detuning, transmitted, reference, dwell, std::nullopt, std::nullopt});
    out.reflection.push_back({detuning, reflected, reference, dwell, rates.background_rate, std::nullopt});
  }
  return out;
}

std::vector<double> detuning_grid(double start, double stop, double step) {
  if (!(step > 0.0) || !std::isfinite(start) || !std::isfinite(stop) || stop < start) {
    throw DomainError("detuning_grid: requires start <= stop and step > 0");
  }
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) grid[i] = start + static_cast<double>(i) * step;
  return grid;
}

Scenario reference_scenario() {
  constexpr double peak_reflection_rate = 13.0;  // 1/s above background
  const double r_sc = focus::rsc_from_extinction(0.082);
  const double reference_rate = peak_reflection_rate / focus::reflectivity(r_sc);
  return {{r_sc, 37.1, 8.1}, {reference_rate, 250.0}, kReflectionDwell, kTransmissionDwell,
          detuning_grid(17.0, 57.0, 1.0)};
}

}  // namespace atomlens::spectro
