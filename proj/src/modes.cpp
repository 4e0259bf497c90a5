#include "atomlens/modes.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "atomlens/constants.hpp"
#include "atomlens/errors.hpp"
#include "atomlens/focus.hpp"

namespace atomlens::modes {
namespace {

using std::numbers::pi;
namespace k = constants;

void require_positive(double v, const char* op, const char* name) {
  if (!(std::isfinite(v) && v > 0.0)) {
    throw DomainError(std::string(op) + ": " + name + " must be positive");
  }
}

NormConstant from_volume(double angular_frequency, double volume) {
  return {std::sqrt(k::hbar * angular_frequency / (2.0 * k::vacuum_permittivity * volume)), volume};
}

}  // namespace

double rayleigh_range(double waist, double wavelength) {
  require_positive(waist, "rayleigh_range", "waist");
  require_positive(wavelength, "rayleigh_range", "wavelength");
  return pi * waist * waist / wavelength;
}

double mode_volume_paraxial(double waist, double length) {
  require_positive(waist, "mode_volume_paraxial", "waist");
  require_positive(length, "mode_volume_paraxial", "length");
  return 0.5 * pi * length * waist * waist;
}

double dispersion_omega(double wavenumber, double waist) {
  require_positive(wavenumber, "dispersion_omega", "wavenumber");
  require_positive(waist, "dispersion_omega", "waist");
  return k::speed_of_light * std::sqrt(wavenumber * wavenumber + 2.0 / (waist * waist));
}

NormConstant norm_paraxial(double angular_frequency, double waist, double length) {
  require_positive(angular_frequency, "norm_paraxial", "angular frequency");
  const double volume = mode_volume_paraxial(waist, length);
  NormConstant result{
      std::sqrt(k::hbar * angular_frequency / (pi * waist * waist * length * k::vacuum_permittivity)),
      volume};
  const double wavelength = 2.0 * pi * k::speed_of_light / angular_frequency;
  result.outside_paraxial_domain = length >= rayleigh_range(waist, wavelength);
  return result;
}

NormConstant norm_focused_running(double wavelength, double length, double focusing) {
  require_positive(wavelength, "norm_focused_running", "wavelength");
  require_positive(length, "norm_focused_running", "length");
  const double r_sc = focus::scattering_ratio(focusing);
  const double omega = 2.0 * pi * k::speed_of_light / wavelength;
  const double value = std::sqrt(pi * k::hbar * omega * r_sc /
                                 (3.0 * wavelength * wavelength * length * k::vacuum_permittivity));
  // Effective volume implied by E = sqrt(hbar omega / (2 eps0 V)).
  const double volume = 1.5 * wavelength * wavelength * length / (pi * r_sc);
  return {value, volume};
}

NormConstant norm_standing_wave(double wavelength, double length, double focusing) {
  require_positive(wavelength, "norm_standing_wave", "wavelength");
  require_positive(length, "norm_standing_wave", "length");
  const double r_sc = focus::scattering_ratio(focusing);
  const double omega = 2.0 * pi * k::speed_of_light / wavelength;
  const double value = std::sqrt(2.0 * pi * k::hbar * omega * r_sc /
                                 (3.0 * wavelength * wavelength * length * k::vacuum_permittivity));
  const double volume = 0.75 * wavelength * wavelength * length / (pi * r_sc);
  return {value, volume};
}

ContinuumDensity continuum_density_factor(double length) {
  require_positive(length, "continuum_density_factor", "length");
  return {length, length / (2.0 * pi * k::speed_of_light)};
}

double standing_wave_wavenumber(int mode_number, double length) {
  if (mode_number <= 0) throw DomainError("standing_wave_wavenumber: mode number must be positive");
  require_positive(length, "standing_wave_wavenumber", "length");
  return mode_number * pi / length;
}

int standing_wave_mode_number(double wavenumber, double length, double rel_tol) {
  require_positive(wavenumber, "standing_wave_mode_number", "wavenumber");
  require_positive(length, "standing_wave_mode_number", "length");
  const double n = wavenumber * length / pi;
  const double nearest = std::round(n);
  if (nearest < 1.0 || nearest > 2147483647.0 || std::abs(n - nearest) > rel_tol * n) {
    throw DomainError("standing_wave_mode_number: k L / pi is not an integer");
  }
  return static_cast<int>(nearest);
}

NormConstant normalize(const ModeSpec& spec) {
  require_positive(spec.angular_frequency, "normalize", "angular frequency");
  const double wavelength = 2.0 * pi * k::speed_of_light / spec.angular_frequency;
  switch (spec.boundary) {
    case Boundary::periodic_running:
      if (spec.focusing == 0.0) {
        return norm_paraxial(spec.angular_frequency, spec.waist, spec.quantization_length);
      }
      return norm_focused_running(wavelength, spec.quantization_length, spec.focusing);
    case Boundary::standing_wave:
      if (spec.focusing == 0.0) {
        // Standing wave of a paraxial mode: half the running-wave volume.
        const NormConstant running =
            norm_paraxial(spec.angular_frequency, spec.waist, spec.quantization_length);
        NormConstant result = from_volume(spec.angular_frequency, 0.5 * running.mode_volume);
        result.outside_paraxial_domain = running.outside_paraxial_domain;
        return result;
      }
      return norm_standing_wave(wavelength, spec.quantization_length, spec.focusing);
    case Boundary::continuum:
      break;
  }
  throw DomainError("normalize: the continuum has no discrete normalization constant");
}

}  // namespace atomlens::modes
