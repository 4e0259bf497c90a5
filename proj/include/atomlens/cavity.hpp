#pragma once

// Cavity-QED estimates for a near-concentric cavity whose mode is strongly
// focused onto a single atom.

namespace atomlens::cavity {

struct AtomLine {
  double wavelength;  // m
  double lifetime;    // s

  void validate() const;
};

// 87Rb D2 with the nominal 780 nm wavelength and 26.25 ns lifetime.
AtomLine rubidium_d2();

struct CavityDesign {
  double length;            // L, m
  double focusing;          // u
  double half_opening;      // Theta_0, rad
  double lens_focal;        // f, m
  double refractive_index;  // n

  double max_focusing() const;  // u_0 = tan(Theta_0)
};

struct Coupling {
  double rad_per_s;  // g0 / hbar
  double hz;         // g0 / (2 pi hbar)
};

struct LensEllipse {
  double half_axis_longitudinal;  // m
  double half_axis_transverse;    // m
};

// d_eff = cg * sqrt(3 eps0 h lambda^3 / (8 pi^2 tau)); cg is the
// Clebsch-Gordan coefficient of the driven transition.
double effective_dipole(const AtomLine& line, double clebsch_gordan = 1.0);

// Standing-wave coupling g0/hbar = cg * sqrt(pi c R_sc(u) / (tau L)).
Coupling coupling_g0(double focusing, double length, const AtomLine& line,
                     double clebsch_gordan = 1.0);

// Smallest focusing parameter for which g0/hbar reaches target_rad_per_s.
// Throws OutOfRangeError if no u on the ascending branch reaches it.
double focusing_for_coupling(double target_rad_per_s, double length, const AtomLine& line,
                             double clebsch_gordan = 1.0);

// Round-trip diffraction loss exp(-2 u0^2 / u^2).
double diffraction_loss(double focusing, double max_focusing);

// F = 2 pi / rho for total fractional round-trip loss rho in (0, 1).
double finesse_estimate(double round_trip_loss);

// Elliptical convex face of a lens that collimates the focused cavity mode
// without spherical aberration.
LensEllipse anaclastic_lens(double focal_length, double refractive_index);

// u_0 = tan(Theta_0) for 0 < Theta_0 < pi/2.
double max_focusing_from_angle(double half_opening);

}  // namespace atomlens::cavity
