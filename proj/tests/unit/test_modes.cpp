#include <cmath>
#include <numbers>

#include "doctest.h"

#include "atomlens/constants.hpp"
#include "atomlens/errors.hpp"
#include "atomlens/focus.hpp"
#include "atomlens/modes.hpp"

using namespace atomlens;
using namespace atomlens::modes;
using std::numbers::pi;

namespace {

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

constexpr double kLambda = 780e-9;
const double kOmega = 2.0 * pi * constants::speed_of_light / kLambda;

// E = sqrt(hbar omega / (2 eps0 V)).
double field_from_volume(double omega, double volume) {
  return std::sqrt(constants::hbar * omega / (2.0 * constants::vacuum_permittivity * volume));
}

}  // namespace

TEST_SUITE("modes") {

TEST_CASE("constants table") {
  CHECK(constants::speed_of_light == 299792458.0);
  CHECK(constants::planck == 6.62607015e-34);
  CHECK(constants::vacuum_permittivity == 8.8541878128e-12);
  CHECK(rel_err(constants::hbar, 1.054571817e-34) < 1e-9);
}

TEST_CASE("paraxial mode volume") {
  CHECK(rel_err(mode_volume_paraxial(1e-3, 1.0), pi / 2.0 * 1e-6) < 1e-15);
  CHECK(rel_err(mode_volume_paraxial(2e-3, 1.0), 4.0 * mode_volume_paraxial(1e-3, 1.0)) < 1e-15);
  CHECK(rel_err(mode_volume_paraxial(1.25e-3, 10e-3), 2.454369260617026e-08) < 1e-12);
  CHECK_THROWS_AS(mode_volume_paraxial(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(mode_volume_paraxial(1e-3, -1.0), DomainError);
}

TEST_CASE("dispersion relation") {
  const double c = constants::speed_of_light;
  const double k = 8.06e6;
  CHECK(std::abs(dispersion_omega(k, 1.0) / (c * k) - 1.0) < 1e-13);

  const double w = 2e-3;
  CHECK(rel_err(dispersion_omega(std::sqrt(2.0) / w, w), 2.0 * c / w) < 1e-15);

  const double k780 = 2.0 * pi / kLambda;
  const double shift = dispersion_omega(k780, 1.25e-3) / (c * k780) - 1.0;
  CHECK(rel_err(shift, 9.863009251840252272489796029094e-9) < 1e-6);
  CHECK(rel_err(shift, 1.0 / (k780 * k780 * 1.25e-3 * 1.25e-3)) < 1e-6);

  CHECK_THROWS_AS(dispersion_omega(0.0, 1e-3), DomainError);
  CHECK_THROWS_AS(dispersion_omega(1.0, 0.0), DomainError);
}

TEST_CASE("paraxial normalization") {
  const NormConstant n = norm_paraxial(kOmega, 1.25e-3, 10e-3);
  CHECK(rel_err(n.value, 0.7654763027076210819912555870610) < 1e-12);
  CHECK(rel_err(n.value, field_from_volume(kOmega, mode_volume_paraxial(1.25e-3, 10e-3))) < 1e-14);
  CHECK(n.mode_volume == mode_volume_paraxial(1.25e-3, 10e-3));
  CHECK_FALSE(n.outside_paraxial_domain);
  CHECK(rel_err(norm_paraxial(kOmega, 1.25e-3, 5e-3).value, std::sqrt(2.0) * n.value) < 1e-14);

  // z_R = pi w^2 / lambda = 4.03 m at w = 1 mm.
  CHECK(rayleigh_range(1e-3, kLambda) == doctest::Approx(4.02768).epsilon(1e-5));
  CHECK_FALSE(norm_paraxial(kOmega, 1e-3, 1.0).outside_paraxial_domain);
  CHECK(norm_paraxial(kOmega, 1e-3, 10.0).outside_paraxial_domain);
  CHECK_THROWS_AS(norm_paraxial(-1.0, 1e-3, 1.0), DomainError);
}

TEST_CASE("focused running-wave normalization") {
  const NormConstant n = norm_focused_running(kLambda, 10e-3, 0.5);
  CHECK(rel_err(n.value, 1593.280072715855488091146529599) < 1e-12);

  // Paraxial constant times the field enhancement, as a second route.
  const double f = 4.5e-3;
  const double waist = 0.5 * f;
  const double via_enhancement = norm_paraxial(kOmega, waist, 10e-3).value *
                                 std::sqrt(focus::field_enhancement_sq({waist, f, kLambda}));
  CHECK(rel_err(n.value, via_enhancement) < 1e-12);

  // u -> 0: value ~ u sqrt(3) * sqrt(pi hbar omega / (3 lambda^2 L eps0)).
  const double scale = std::sqrt(pi * constants::hbar * kOmega /
                                 (3.0 * kLambda * kLambda * 10e-3 * constants::vacuum_permittivity));
  const double u = 1e-4;
  CHECK(rel_err(norm_focused_running(kLambda, 10e-3, u).value, u * std::sqrt(3.0) * scale) < 1e-7);
}

TEST_CASE("standing-wave normalization") {
  for (const double u : {0.1, 0.5, 1.0, 2.0}) {
    for (const double length : {1e-3, 10e-3, 0.1}) {
      const NormConstant running = norm_focused_running(kLambda, length, u);
      const NormConstant standing = norm_standing_wave(kLambda, length, u);
      CHECK(rel_err(standing.value / running.value, std::sqrt(2.0)) < 1e-15);
      CHECK(rel_err(standing.mode_volume, 0.5 * running.mode_volume) < 1e-15);
    }
  }
}

TEST_CASE("property: every normalization equals sqrt(hbar w / 2 eps0 V) for its volume") {
  for (const double u : {0.05, 0.278, 0.7, 1.6, 2.2}) {
    for (const double length : {1e-3, 10e-3, 50e-3}) {
      const NormConstant running = norm_focused_running(kLambda, length, u);
      const NormConstant standing = norm_standing_wave(kLambda, length, u);
      const NormConstant paraxial = norm_paraxial(kOmega, u * 4.5e-3, length);
      CHECK(rel_err(running.value, field_from_volume(kOmega, running.mode_volume)) < 1e-12);
      CHECK(rel_err(standing.value, field_from_volume(kOmega, standing.mode_volume)) < 1e-12);
      CHECK(rel_err(paraxial.value, field_from_volume(kOmega, paraxial.mode_volume)) < 1e-12);
    }
  }
}

TEST_CASE("continuum density factor") {
  const double c = constants::speed_of_light;
  CHECK(rel_err(continuum_density_factor(2.0 * pi * c).seconds_per_radian, 1.0) < 1e-15);
  CHECK(rel_err(continuum_density_factor(2.0).seconds_per_radian,
                2.0 * continuum_density_factor(1.0).seconds_per_radian) < 1e-15);
  const ContinuumDensity d = continuum_density_factor(10e-3);
  CHECK(d.mode_spacing() == doctest::Approx(1.88365e11).epsilon(1e-5));
  CHECK(d.mode_spacing() / (2.0 * pi) == doctest::Approx(29.9792458e9));
  CHECK_THROWS_AS(continuum_density_factor(0.0), DomainError);
}

TEST_CASE("standing-wave mode numbers") {
  const double length = 10e-3;
  const double k = standing_wave_wavenumber(25641, length);
  CHECK(standing_wave_mode_number(k, length) == 25641);
  CHECK_THROWS_AS(standing_wave_mode_number(k * (1.0 + 1e-6), length), DomainError);
  CHECK_THROWS_AS(standing_wave_wavenumber(0, length), DomainError);
}

TEST_CASE("normalize dispatches on the boundary kind") {
  const ModeSpec running{10e-3, Boundary::periodic_running, 0.0, 0.5, kOmega};
  CHECK(rel_err(normalize(running).value, norm_focused_running(kLambda, 10e-3, 0.5).value) < 1e-15);
  ModeSpec standing = running;
  standing.boundary = Boundary::standing_wave;
  CHECK(rel_err(normalize(standing).value, norm_standing_wave(kLambda, 10e-3, 0.5).value) < 1e-15);

  const ModeSpec paraxial{10e-3, Boundary::periodic_running, 1.25e-3, 0.0, kOmega};
  CHECK(normalize(paraxial).value == norm_paraxial(kOmega, 1.25e-3, 10e-3).value);
  ModeSpec paraxial_standing = paraxial;
  paraxial_standing.boundary = Boundary::standing_wave;
  CHECK(rel_err(normalize(paraxial_standing).value, std::sqrt(2.0) * normalize(paraxial).value) < 1e-14);

  ModeSpec continuum = running;
  continuum.boundary = Boundary::continuum;
  CHECK_THROWS_AS(normalize(continuum), DomainError);
}

}  // TEST_SUITE
