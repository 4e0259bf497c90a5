#include "atomlens/focus.hpp"

#include <cmath>
#include <algorithm>
#include <cstdint>
#include <numbers>
#include <string>
#include <utility>

#include <boost/math/tools/roots.hpp>

#include "atomlens/errors.hpp"
#include "atomlens/specfun.hpp"

namespace atomlens::focus {
namespace {

// Below this u the relative correction to 3u^2 is under 1e-200.
constexpr double kAsymptoticFocusing = 1e-100;

void require_nonnegative(double value, const char* what) {
  if (std::isnan(value) || value < 0.0) throw DomainError(std::string(what) + ": requires r_sc >= 0");
}

Maximum locate_maximum() {
  // R_sc is unimodal with its peak between u = 1 and u = 4.
  constexpr double inv_phi = std::numbers::phi - 1.0;
  double a = 1.0;
  double b = 4.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = scattering_ratio(c);
  double fd = scattering_ratio(d);
  while (b - a > 1e-10) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = scattering_ratio(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = scattering_ratio(d);
    }
  }
  const double u = 0.5 * (a + b);
  return {u, scattering_ratio(u)};
}

}  // namespace

void FocusGeometry::validate() const {
  const auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(waist_before_lens) || !positive(focal_length) || !positive(wavelength)) {
    throw DomainError("FocusGeometry: waist, focal length and wavelength must be positive");
  }
}

double scattering_ratio(double u) {
  if (std::isnan(u) || u <= 0.0) throw DomainError("scattering_ratio: requires u > 0");
  if (std::isinf(u)) throw DomainError("scattering_ratio: u must be finite");
  if (u < kAsymptoticFocusing) return 3.0 * u * u;
  const double x = 1.0 / (u * u);
  const double bracket =
      specfun::scaled_upper_gamma(-0.25, x) + u * specfun::scaled_upper_gamma(0.25, x);
  return 0.75 / (u * u * u) * bracket * bracket;
}

double extinction(double r_sc) {
  require_nonnegative(r_sc, "extinction");
  const double amplitude = 1.0 - 0.5 * r_sc;
  return 1.0 - amplitude * amplitude;
}

double reflectivity(double r_sc) {
  require_nonnegative(r_sc, "reflectivity");
  return 0.25 * r_sc * r_sc;
}

double field_enhancement_sq(const FocusGeometry& geom) {
  geom.validate();
  const double ratio = geom.waist_before_lens / geom.wavelength;
  return std::numbers::pi * std::numbers::pi * ratio * ratio * scattering_ratio(geom.focusing()) /
         3.0;
}

ScatterResult scatter(double u) {
  const double r = scattering_ratio(u);
  return {u, r, extinction(r), reflectivity(r), std::nullopt, u > kValidFocusingLimit};
}

ScatterResult scatter(const FocusGeometry& geom) {
  geom.validate();
  ScatterResult result = scatter(geom.focusing());
  result.enhancement_sq = field_enhancement_sq(geom);
  return result;
}

const Maximum& scattering_maximum() {
  static const Maximum maximum = locate_maximum();
  return maximum;
}

double effective_focusing_from_rsc(double r_sc_measured) {
  if (std::isnan(r_sc_measured) || r_sc_measured <= 0.0) {
    throw DomainError("effective_focusing_from_rsc: requires r_sc > 0");
  }
  const Maximum& peak = scattering_maximum();
  if (r_sc_measured > peak.r_sc) {
    throw OutOfRangeError("effective_focusing_from_rsc: r_sc exceeds the maximum " +
                          std::to_string(peak.r_sc));
  }
  if (r_sc_measured == peak.r_sc) return peak.u;

  // R_sc < 3u^2 everywhere, so half the small-u estimate is a valid lower end.
  const double lower = std::min(0.5 * std::sqrt(r_sc_measured / 3.0), 0.5 * peak.u);
  const auto residual = [r_sc_measured](double u) { return scattering_ratio(u) - r_sc_measured; };
  std::uintmax_t max_iter = 200;
  const auto [lo, hi] = boost::math::tools::toms748_solve(
      residual, lower, peak.u, residual(lower), peak.r_sc - r_sc_measured,
      boost::math::tools::eps_tolerance<double>(50), max_iter);
  return 0.5 * (lo + hi);
}

double rsc_from_extinction(double extinction_value) {
  if (!(extinction_value >= 0.0 && extinction_value <= 1.0)) {
    throw DomainError("rsc_from_extinction: extinction must lie in [0, 1]");
  }
  return 2.0 * (1.0 - std::sqrt(1.0 - extinction_value));
}

double rsc_from_reflectivity(double reflectivity_value) {
  if (!(reflectivity_value >= 0.0 && reflectivity_value <= 1.0)) {
    throw DomainError("rsc_from_reflectivity: reflectivity must lie in [0, 1]");
  }
  return 2.0 * std::sqrt(reflectivity_value);
}

}  // namespace atomlens::focus
