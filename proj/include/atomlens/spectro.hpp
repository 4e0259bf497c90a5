#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

// Photon-count spectra: normalization with Poisson error propagation,
// Lorentzian line fits and a seeded synthetic generator.
//
// Detunings are in MHz relative to the unperturbed atomic transition.

namespace atomlens::spectro {

struct SpectrumPoint {
  double detuning;                  // MHz
  std::int64_t counts_signal;       // with atom
  std::int64_t counts_reference;    // normalization interval, no atom
  double dwell;                     // s
  std::optional<double> background_rate;   // detector dark rate, 1/s
  std::optional<double> reference_dwell;   // s; defaults to dwell
};

struct NormalizedPoint {
  double detuning;
  double value;
  double sigma;
  // Set when no signal count was observed and sigma is the one-count bound
  // from the reference channel.
  bool one_sided = false;
};

// T = N_sig / N_ref (dwell-corrected), sigma_T = T sqrt(1/N_sig + 1/N_ref).
std::vector<NormalizedPoint> normalize_transmission(std::span<const SpectrumPoint> points);

// R = (N_f - b t) / N_ref with variance (N_f + b t) / N_ref^2 + R^2 / N_ref.
// A per-point background_rate overrides the argument. Negative values are
// kept.
std::vector<NormalizedPoint> normalize_reflection(std::span<const SpectrumPoint> points,
                                                  double background_rate);

// A (w/2)^2 / ((x - x0)^2 + (w/2)^2).
double lorentzian(double detuning, double amplitude, double center, double fwhm);

struct DataPoint {
  double x;
  double y;
  double sigma;
};

struct LorentzParams {
  double amplitude;
  double center;
  double fwhm;
};

struct FitOptions {
  // Fixed baseline: 1 for transmission, 0 for reflection. The model is
  // offset + lorentzian(x, amplitude, center, fwhm), so dips carry a
  // negative amplitude.
  double offset = 0.0;
  std::optional<LorentzParams> initial;
  int max_cycles = 200;
};

enum class FitStatus {
  converged,
  max_cycles,  // best-so-far parameters reported
  degenerate,  // flat data or singular curvature; parameters are not a fit
};

struct LorentzFit {
  double amplitude = 0.0;
  double center = 0.0;
  double fwhm = 0.0;
  double offset = 0.0;
  double sigma_amplitude = 0.0;
  double sigma_center = 0.0;
  double sigma_fwhm = 0.0;
  double chi2 = 0.0;
  double chi2_reduced = 0.0;
  int cycles = 0;
  FitStatus status = FitStatus::degenerate;
};

// Default starting point: center at the extremal deviation from the
// offset, width half the x-span, amplitude that deviation.
LorentzParams initial_guess(std::span<const DataPoint> data, double offset);

// Levenberg-Marquardt minimization of sum ((y - model) / sigma)^2 over
// amplitude, center and fwhm. Requires at least 4 points with sigma > 0.
LorentzFit fit_lorentzian(std::span<const DataPoint> data, const FitOptions& options = {});

std::vector<DataPoint> to_fit_data(std::span<const NormalizedPoint> points);

std::string to_string(FitStatus status);

struct LineTruth {
  double r_sc;    // on-resonance scattering ratio
  double center;  // MHz
  double fwhm;    // MHz
};

struct CountRates {
  double reference_rate;   // 1/s at the detector without atom
  double background_rate;  // 1/s, reflection detector
};

struct SyntheticSpectrum {
  std::vector<SpectrumPoint> transmission;
  std::vector<SpectrumPoint> reflection;
};

// Model curves: extinction and reflectivity share one Lorentzian profile
// whose peak values follow from r_sc.
double model_transmission(double detuning, const LineTruth& truth);
double model_reflection(double detuning, const LineTruth& truth);

// Poisson-sampled counts for both channels from a seeded mt19937_64. Per
// point the draws are: reference, transmission signal, reflection signal.
SyntheticSpectrum generate_spectrum(const LineTruth& truth, const CountRates& rates, double dwell,
                                    std::span<const double> detunings, std::uint64_t seed);

// Evenly spaced grid start, start + step, ... up to stop (inclusive within
// a 1e-9 step fraction).
std::vector<double> detuning_grid(double start, double stop, double step);

struct Scenario {
  LineTruth truth;
  CountRates rates;
  double dwell;               // reflection channel, s per point
  double transmission_dwell;  // transmission channel, s per point
  std::vector<double> detunings;
};

// Measurement at the scale of the single-atom lens experiment: 8.2 %
// resonant extinction, line center 37.1 MHz, FWHM 8.1 MHz, a 13 1/s
// reflection signal on a 250 1/s detector background collected for 50 min
// per point, 41 points over 17..57 MHz. The transmission exposure is the
// one at which a fit reaches uncertainties of about 0.1 MHz (center),
// 0.3 MHz (width) and 0.002 (extinction).
Scenario reference_scenario();

}  // namespace atomlens::spectro
