#pragma once

#include <optional>

// Semiclassical model of a two-level atom at the focus of a strongly focused
// Gaussian beam. All lengths in metres.

namespace atomlens::focus {

// Beam waist just before the focusing lens, the lens focal length and the
// vacuum wavelength. The focusing parameter u = w_L / f equals tan(Theta) of
// the focused beam's divergence half-angle.
struct FocusGeometry {
  double waist_before_lens;
  double focal_length;
  double wavelength;

  double focusing() const { return waist_before_lens / focal_length; }
  // Throws DomainError unless all fields are positive and finite.
  void validate() const;
};

struct ScatterResult {
  double u;
  double r_sc;
  double extinction;    // 1 - T on resonance
  double reflectivity;  // R on resonance
  std::optional<double> enhancement_sq;  // (E_A/E_L)^2, needs a full geometry
  bool beyond_validity;                  // u > kValidFocusingLimit
};

// Above this focusing parameter results are returned with a validity flag.
inline constexpr double kValidFocusingLimit = 10.0;

// R_sc(u) = 3/(4u^3) e^(2/u^2) [Gamma(-1/4, 1/u^2) + u Gamma(1/4, 1/u^2)]^2,
// evaluated through the scaled incomplete gamma function.
double scattering_ratio(double u);

// 1 - |1 - r_sc/2|^2.
double extinction(double r_sc);
// r_sc^2 / 4.
double reflectivity(double r_sc);

// (E_A/E_L)^2 = pi^2 w_L^2 R_sc(u) / (3 lambda^2).
double field_enhancement_sq(const FocusGeometry& geom);

ScatterResult scatter(double u);
ScatterResult scatter(const FocusGeometry& geom);

struct Maximum {
  double u;
  double r_sc;
};

// Location and value of the global maximum of R_sc, found once by
// golden-section search and cached.
const Maximum& scattering_maximum();

// Inverse of scattering_ratio on the ascending branch (0, argmax].
// Throws OutOfRangeError when r_sc is not in (0, max R_sc].
double effective_focusing_from_rsc(double r_sc_measured);

// Inversions of the resonant extinction and reflectivity, branch r_sc in [0, 2].
double rsc_from_extinction(double extinction_value);
double rsc_from_reflectivity(double reflectivity_value);

}  // namespace atomlens::focus
