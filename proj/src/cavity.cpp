#include "atomlens/cavity.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "atomlens/constants.hpp"
#include "atomlens/errors.hpp"
#include "atomlens/focus.hpp"

namespace atomlens::cavity {
namespace {

using std::numbers::pi;
namespace k = constants;

void require_positive(double v, const char* op, const char* name) {
  if (!(std::isfinite(v) && v > 0.0)) {
    throw DomainError(std::string(op) + ": " + name + " must be positive");
  }
}

}  // namespace

void AtomLine::validate() const {
  require_positive(wavelength, "AtomLine", "wavelength");
  require_positive(lifetime, "AtomLine", "lifetime");
}

AtomLine rubidium_d2() { return {k::rb87_d2_wavelength, k::rb87_d2_lifetime}; }

double CavityDesign::max_focusing() const { return max_focusing_from_angle(half_opening); }

double effective_dipole(const AtomLine& line, double clebsch_gordan) {
  line.validate();
  require_positive(clebsch_gordan, "effective_dipole", "Clebsch-Gordan coefficient");
  const double lambda3 = line.wavelength * line.wavelength * line.wavelength;
  return clebsch_gordan *
         std::sqrt(3.0 * k::vacuum_permittivity * k::planck * lambda3 / (8.0 * pi * pi * line.lifetime));
}

Coupling coupling_g0(double focusing, double length, const AtomLine& line, double clebsch_gordan) {
  line.validate();
  require_positive(length, "coupling_g0", "cavity length");
  require_positive(clebsch_gordan, "coupling_g0", "Clebsch-Gordan coefficient");
  const double r_sc = focus::scattering_ratio(focusing);
  const double rate =
      clebsch_gordan * std::sqrt(pi * k::speed_of_light * r_sc / (line.lifetime * length));
  return {rate, rate / (2.0 * pi)};
}

double focusing_for_coupling(double target_rad_per_s, double length, const AtomLine& line,
                             double clebsch_gordan) {
  line.validate();
  require_positive(target_rad_per_s, "focusing_for_coupling", "target coupling");
  require_positive(length, "focusing_for_coupling", "cavity length");
  require_positive(clebsch_gordan, "focusing_for_coupling", "Clebsch-Gordan coefficient");
  const double g = target_rad_per_s / clebsch_gordan;
  const double r_sc = g * g * line.lifetime * length / (pi * k::speed_of_light);
  return focus::effective_focusing_from_rsc(r_sc);
}

double diffraction_loss(double focusing, double max_focusing) {
  require_positive(focusing, "diffraction_loss", "focusing");
  require_positive(max_focusing, "diffraction_loss", "maximal focusing");
  const double ratio = max_focusing / focusing;
  return std::exp(-2.0 * ratio * ratio);
}

double finesse_estimate(double round_trip_loss) {
  if (!(round_trip_loss > 0.0 && round_trip_loss < 1.0)) {
    throw DomainError("finesse_estimate: round-trip loss must lie in (0, 1)");
  }
  return 2.0 * pi / round_trip_loss;
}

LensEllipse anaclastic_lens(double focal_length, double refractive_index) {
  require_positive(focal_length, "anaclastic_lens", "focal length");
  if (!(std::isfinite(refractive_index) && refractive_index > 1.0)) {
    throw DomainError("anaclastic_lens: refractive index must exceed 1");
  }
  const double n = refractive_index;
  return {focal_length * n / (n + 1.0), focal_length * std::sqrt((n - 1.0) / (n + 1.0))};
}

double max_focusing_from_angle(double half_opening) {
  if (!(half_opening > 0.0 && half_opening < 0.5 * pi)) {
    throw DomainError("max_focusing_from_angle: half-opening angle must lie in (0, pi/2)");
  }
  return std::tan(half_opening);
}

}  // namespace atomlens::cavity
