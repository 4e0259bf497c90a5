#pragma once

// Field quantization bookkeeping for Gaussian modes in a box of length L.
//
// A mode j carries the single-photon field amplitude
//   E_j = sqrt(hbar w_j / (2 eps0 V_j)),
// with V_j = (1/2) integral |g_j|^2 over the quantization volume (vacuum,
// electric part only). The operator-level objects (field operator, ladder
// operators, free Hamiltonian) are not represented; only the scalar
// normalization constants that enter coupling strengths are computed.

namespace atomlens::modes {

enum class Boundary {
  periodic_running,
  standing_wave,
  continuum,
};

struct ModeSpec {
  double quantization_length;  // L, m
  Boundary boundary;
  double waist;                // w0 for paraxial modes, m (unused when focusing > 0)
  double focusing;             // u; 0 selects the plain paraxial mode
  double angular_frequency;    // omega, rad/s
};

struct NormConstant {
  double value;        // V/m
  double mode_volume;  // m^3
  // Set when the plain paraxial formula is used with L >= z_R.
  bool outside_paraxial_domain = false;
};

// Spectral density L/(2 pi c) that converts a sum over longitudinal modes into
// a frequency integral. Physical results must not depend on the length it
// carries.
struct ContinuumDensity {
  double quantization_length;  // m
  double seconds_per_radian;   // L / (2 pi c)

  // Longitudinal mode spacing 2 pi c / L, rad/s.
  double mode_spacing() const { return 1.0 / seconds_per_radian; }
};

double rayleigh_range(double waist, double wavelength);

// V = pi L w^2 / 2.
double mode_volume_paraxial(double waist, double length);

// omega = c sqrt(k^2 + 2/w^2).
double dispersion_omega(double wavenumber, double waist);

// E = sqrt(hbar omega / (pi w^2 L eps0)).
NormConstant norm_paraxial(double angular_frequency, double waist, double length);

// E = sqrt(pi hbar omega R_sc(u) / (3 lambda^2 L eps0)), omega = 2 pi c / lambda.
NormConstant norm_focused_running(double wavelength, double length, double focusing);

// Standing-wave cavity: the effective volume halves, E grows by sqrt(2).
NormConstant norm_standing_wave(double wavelength, double length, double focusing);

ContinuumDensity continuum_density_factor(double length);

// Standing-wave wavenumber k = N pi / L.
double standing_wave_wavenumber(int mode_number, double length);
// Mode number N with k = N pi / L; throws DomainError if k is not such a
// multiple to within rel_tol.
int standing_wave_mode_number(double wavenumber, double length, double rel_tol = 1e-9);

// Dispatches on spec.boundary and spec.focusing. Throws DomainError for
// Boundary::continuum, which has no discrete normalization.
NormConstant normalize(const ModeSpec& spec);

}  // namespace atomlens::modes
