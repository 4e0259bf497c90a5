#pragma once

#include <iosfwd>
#include <span>
#include <string>

// Command-line front end. Subcommands:
//   rsc       scattering ratio, extinction, reflectivity (optionally a u sweep)
//   coupling  cavity coupling g0, diffraction loss, finesse (optionally a u sweep)
//   lens      anaclastic lens half axes and u0 = tan(Theta0)
//   fit       Lorentzian fit of a spectrum CSV
//   synth     seeded synthetic spectrum CSV
//   sweep     combined u table of scattering and coupling quantities
//
// Units at this boundary are mm, nm, ns, MHz and degrees; they are converted
// to SI before any computation.

namespace atomlens::cli {

enum ExitCode : int {
  kOk = 0,
  kParameterError = 2,
  kInputError = 3,
  kNumericalFailure = 4,
};

// Runs one invocation. `args` excludes the program name. Reports go to `out`
// (or to --output), errors to `err` as a JSON object.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace atomlens::cli
