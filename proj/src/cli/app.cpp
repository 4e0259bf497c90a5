#include "atomlens/cli/app.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "atomlens/cavity.hpp"
#include "atomlens/cli/csv.hpp"
#include "atomlens/errors.hpp"
#include "atomlens/focus.hpp"
#include "atomlens/modes.hpp"
#include "atomlens/spectro.hpp"

namespace atomlens::cli {
namespace {

using Json = nlohmann::ordered_json;
using std::numbers::pi;

constexpr double kMm = 1e-3;
constexpr double kNm = 1e-9;
constexpr double kNs = 1e-9;
constexpr double kDeg = pi / 180.0;

// Errors raised by the front end itself, tagged with their exit code.
struct CommandError : std::runtime_error {
  CommandError(ExitCode code, const std::string& message, Json detail = nullptr)
      : std::runtime_error(message), code(code), detail(std::move(detail)) {}
  ExitCode code;
  Json detail;
};

std::string_view kind_of(int code) {
  switch (code) {
    case kParameterError:
      return "parameter_error";
    case kInputError:
      return "input_error";
    case kNumericalFailure:
      return "numerical_failure";
    default:
      return "error";
  }
}

int report_error(std::ostream& err, int code, const std::string& message, const Json& detail = nullptr) {
  Json body;
  body["code"] = code;
  body["kind"] = kind_of(code);
  body["message"] = message;
  if (!detail.is_null()) body["detail"] = detail;
  Json doc;
  doc["error"] = std::move(body);
  err << doc.dump() << '\n';
  return code;
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

// Parses "start:stop:step".
std::vector<double> parse_range(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw CommandError(kParameterError, "range '" + text + "' must be start:stop:step");
    }
  }
  if (parts.size() != 3) throw CommandError(kParameterError, "range '" + text + "' must be start:stop:step");
  return spectro::detuning_grid(parts[0], parts[1], parts[2]);
}

struct Output {
  std::string path;
  std::string format = "json";
};

void add_output_options(CLI::App* cmd, Output& output, bool with_format) {
  cmd->add_option("-o,--output", output.path, "Write the result to this file instead of stdout");
  if (with_format) {
    cmd->add_option("--format", output.format, "Report format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
  }
}

void emit(const Output& output, const std::string& text, std::ostream& out) {
  if (output.path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(output.path, std::ios::binary);
  if (!file) throw CommandError(kInputError, "cannot open output file " + output.path);
  file << text;
  if (!file) throw CommandError(kInputError, "failed writing output file " + output.path);
}

// Flat report as JSON, or as a one-row CSV table when format == "csv".
std::string render(const Json& report, const std::string& format) {
  if (format == "json") return report.dump(2) + "\n";
  std::string header;
  std::string row;
  for (const auto& [key, value] : report.items()) {
    if (!header.empty()) {
      header += ',';
      row += ',';
    }
    header += key;
    row += value.is_null() ? "" : value.is_string() ? value.get<std::string>() : value.dump();
  }
  return header + "\n" + row + "\n";
}

// ---------------------------------------------------------------- rsc

struct RscOptions {
  std::optional<double> u;
  std::optional<double> waist_mm;
  std::optional<double> focal_mm;
  double lambda_nm = 780.0;
  std::string sweep;
  Output output;
};

Json rsc_report(const RscOptions& o) {
  std::optional<focus::FocusGeometry> geometry;
  double u = 0.0;
  if (o.u) {
    u = *o.u;
  } else if (o.waist_mm && o.focal_mm) {
    geometry = focus::FocusGeometry{*o.waist_mm * kMm, *o.focal_mm * kMm, o.lambda_nm * kNm};
    u = geometry->focusing();
  } else {
    throw CommandError(kParameterError, "rsc needs --u or both --w-l-mm and --f-mm");
  }
  const focus::ScatterResult s = geometry ? focus::scatter(*geometry) : focus::scatter(u);
  Json r;
  r["u"] = s.u;
  r["r_sc"] = s.r_sc;
  r["extinction"] = s.extinction;
  r["reflectivity"] = s.reflectivity;
  r["enhancement_sq"] = optional_number(s.enhancement_sq);
  r["divergence_half_angle_deg"] = std::atan(s.u) / kDeg;
  r["validity_warning"] = s.beyond_validity;
  return r;
}

std::string rsc_sweep(const RscOptions& o) {
  std::string table = "kind,u,r_sc,extinction,reflectivity\n";
  const auto row = [&table](std::string_view kind, double u) {
    const double r = focus::scattering_ratio(u);
    table += fmt::format("{},{},{},{},{}\n", kind, u, r, focus::extinction(r), focus::reflectivity(r));
  };
  for (const double u : parse_range(o.sweep)) row("grid", u);
  row("maximum", focus::scattering_maximum().u);
  return table;
}

// ----------------------------------------------------------- coupling

struct CouplingOptions {
  std::optional<double> u;
  double length_mm = 10.0;
  double tau_ns = 26.25;
  double lambda_nm = 780.0;
  double u0 = 1.0;
  double loss_budget = 0.0;
  double clebsch_gordan = 1.0;
  std::string sweep;
  Output output;
};

Json coupling_report(const CouplingOptions& o) {
  if (!o.u) throw CommandError(kParameterError, "coupling needs --u (or --sweep)");
  if (!(o.loss_budget >= 0.0)) throw CommandError(kParameterError, "--loss-budget must be >= 0");
  const double u = *o.u;
  const double length = o.length_mm * kMm;
  const cavity::AtomLine line{o.lambda_nm * kNm, o.tau_ns * kNs};
  const cavity::Coupling g = cavity::coupling_g0(u, length, line, o.clebsch_gordan);
  const double loss = cavity::diffraction_loss(u, o.u0);
  const double total_loss = loss + o.loss_budget;
  const modes::NormConstant norm = modes::norm_standing_wave(line.wavelength, length, u);
  const double natural_rate = 1.0 / line.lifetime;

  std::optional<double> threshold;
  try {
    threshold = cavity::focusing_for_coupling(natural_rate, length, line, o.clebsch_gordan);
  } catch (const OutOfRangeError&) {
  }
  std::optional<double> finesse;
  if (total_loss > 0.0 && total_loss < 1.0) finesse = cavity::finesse_estimate(total_loss);

  Json r;
  r["u"] = u;
  r["L_mm"] = o.length_mm;
  r["lambda_nm"] = o.lambda_nm;
  r["tau_ns"] = o.tau_ns;
  r["r_sc"] = focus::scattering_ratio(u);
  r["d_eff_C_m"] = cavity::effective_dipole(line, o.clebsch_gordan);
  r["g0_rad_per_s"] = g.rad_per_s;
  r["g0_over_2pi_MHz"] = g.hz * 1e-6;
  r["natural_linewidth_MHz"] = natural_rate / (2.0 * pi) * 1e-6;
  r["u_for_natural_linewidth"] = optional_number(threshold);
  r["u0"] = o.u0;
  r["diffraction_loss"] = loss;
  r["round_trip_loss"] = total_loss;
  r["finesse_for_budget"] = optional_number(finesse);
  r["mode_volume"] = norm.mode_volume;
  r["norm_constant"] = norm.value;
  return r;
}

std::string coupling_sweep(const CouplingOptions& o) {
  const double length = o.length_mm * kMm;
  const cavity::AtomLine line{o.lambda_nm * kNm, o.tau_ns * kNs};
  std::string table = "u,r_sc,g0_rad_per_s,g0_over_2pi_MHz,diffraction_loss\n";
  for (const double u : parse_range(o.sweep)) {
    const cavity::Coupling g = cavity::coupling_g0(u, length, line, o.clebsch_gordan);
    table += fmt::format("{},{},{},{},{}\n", u, focus::scattering_ratio(u), g.rad_per_s, g.hz * 1e-6,
                         cavity::diffraction_loss(u, o.u0));
  }
  return table;
}

// --------------------------------------------------------------- lens

struct LensOptions {
  std::optional<double> focal_mm;
  std::optional<double> index;
  std::optional<double> theta_deg;
  Output output;
};

Json lens_report(const LensOptions& o) {
  if (!(o.focal_mm && o.index) && !o.theta_deg) {
    throw CommandError(kParameterError, "lens needs --f-mm with --n, or --theta-deg");
  }
  if (o.focal_mm.has_value() != o.index.has_value()) {
    throw CommandError(kParameterError, "--f-mm and --n must be given together");
  }
  Json r;
  r["f_mm"] = optional_number(o.focal_mm);
  r["n"] = optional_number(o.index);
  if (o.focal_mm) {
    const cavity::LensEllipse e = cavity::anaclastic_lens(*o.focal_mm * kMm, *o.index);
    r["half_axis_longitudinal_mm"] = e.half_axis_longitudinal / kMm;
    r["half_axis_transverse_mm"] = e.half_axis_transverse / kMm;
  } else {
    r["half_axis_longitudinal_mm"] = nullptr;
    r["half_axis_transverse_mm"] = nullptr;
  }
  r["theta_deg"] = optional_number(o.theta_deg);
  r["u0_for_theta"] =
      o.theta_deg ? Json(cavity::max_focusing_from_angle(*o.theta_deg * kDeg)) : Json(nullptr);
  return r;
}

// ---------------------------------------------------------------- fit

struct FitCommandOptions {
  std::string input;
  std::string channel = "transmission";
  std::optional<double> background_rate;
  std::string residuals;
  Output output;
};

std::vector<spectro::SpectrumPoint> load_spectrum(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw CommandError(kInputError, "cannot open input file " + path);
  try {
    return read_spectrum_csv(file);
  } catch (const CsvParseError& e) {
    throw CommandError(kInputError, path + ": " + e.what(), Json{{"line", e.line()}});
  }
}

Json fit_json(const spectro::LorentzFit& fit) {
  Json r;
  r["status"] = spectro::to_string(fit.status);
  r["cycles"] = fit.cycles;
  r["offset"] = fit.offset;
  r["amplitude"] = fit.amplitude;
  r["sigma_amplitude"] = fit.sigma_amplitude;
  r["center_mhz"] = fit.center;
  r["sigma_center_mhz"] = fit.sigma_center;
  r["fwhm_mhz"] = fit.fwhm;
  r["sigma_fwhm_mhz"] = fit.sigma_fwhm;
  r["chi2"] = fit.chi2;
  r["chi2_reduced"] = fit.chi2_reduced;
  return r;
}

std::string residual_table(std::span<const spectro::DataPoint> data, const spectro::LorentzFit& fit) {
  std::string table = "detuning_mhz,value,sigma,model,normalized_residual\n";
  for (const auto& d : data) {
    const double model = fit.offset + spectro::lorentzian(d.x, fit.amplitude, fit.center, fit.fwhm);
    table += fmt::format("{},{},{},{},{}\n", d.x, d.y, d.sigma, model, (d.y - model) / d.sigma);
  }
  return table;
}

Json fit_report(const FitCommandOptions& o) {
  std::vector<spectro::SpectrumPoint> points = load_spectrum(o.input);
  const bool transmission = o.channel == "transmission";

  std::vector<spectro::NormalizedPoint> normalized;
  if (transmission) {
    normalized = spectro::normalize_transmission(points);
  } else {
    if (o.background_rate) {
      for (auto& p : points) p.background_rate.reset();
    } else if (!std::all_of(points.begin(), points.end(),
                            [](const auto& p) { return p.background_rate.has_value(); })) {
      throw CommandError(kParameterError,
                         "reflection fit needs --background-rate or a background_rate_hz column");
    }
    normalized = spectro::normalize_reflection(points, o.background_rate.value_or(0.0));
  }
  const std::vector<spectro::DataPoint> data = spectro::to_fit_data(normalized);

  spectro::FitOptions options;
  options.offset = transmission ? 1.0 : 0.0;
  const spectro::LorentzFit fit = spectro::fit_lorentzian(data, options);
  if (fit.status != spectro::FitStatus::converged) {
    throw CommandError(kNumericalFailure, "Lorentzian fit failed: " + spectro::to_string(fit.status),
                       fit_json(fit));
  }

  Json r;
  r["channel"] = o.channel;
  r["points"] = data.size();
  r["one_sided_points"] =
      std::count_if(normalized.begin(), normalized.end(), [](const auto& p) { return p.one_sided; });
  const Json fitted = fit_json(fit);
  for (const auto& [key, value] : fitted.items()) r[key] = value;

  // Resonant value of the line and the scattering ratio it implies.
  const double peak = transmission ? -fit.amplitude : fit.amplitude;
  r["peak_value"] = peak;
  std::optional<double> r_sc;
  std::optional<double> sigma_r_sc;
  std::optional<double> u_eff;
  if (peak > 0.0 && peak < 1.0) {
    r_sc = transmission ? focus::rsc_from_extinction(peak) : focus::rsc_from_reflectivity(peak);
    const double slope = transmission ? 1.0 / std::sqrt(1.0 - peak) : 1.0 / std::sqrt(peak);
    sigma_r_sc = slope * fit.sigma_amplitude;
    try {
      u_eff = focus::effective_focusing_from_rsc(*r_sc);
    } catch (const OutOfRangeError&) {
    }
  }
  r["r_sc_inferred"] = optional_number(r_sc);
  r["sigma_r_sc_inferred"] = optional_number(sigma_r_sc);
  r["effective_focusing"] = optional_number(u_eff);

  if (!o.residuals.empty()) emit(Output{o.residuals, "csv"}, residual_table(data, fit), std::cout);
  return r;
}

// -------------------------------------------------------------- synth

struct SynthOptions {
  std::optional<double> r_sc;
  std::optional<double> extinction;
  double center_mhz = 37.1;
  double fwhm_mhz = 8.1;
  std::optional<double> reference_rate;
  double background_rate = 250.0;
  std::optional<double> dwell_s;
  std::string grid = "17:57:1";
  std::uint64_t seed = 42;
  std::string channel = "transmission";
  Output output;
};

std::string synth_csv(const SynthOptions& o) {
  const spectro::Scenario reference = spectro::reference_scenario();
  spectro::LineTruth truth{reference.truth.r_sc, o.center_mhz, o.fwhm_mhz};
  if (o.r_sc) truth.r_sc = *o.r_sc;
  if (o.extinction) truth.r_sc = focus::rsc_from_extinction(*o.extinction);
  const spectro::CountRates rates{o.reference_rate.value_or(reference.rates.reference_rate),
                                  o.background_rate};
  const std::vector<double> grid = parse_range(o.grid);
  const bool transmission = o.channel == "transmission";
  const double dwell =
      o.dwell_s.value_or(transmission ? reference.transmission_dwell : reference.dwell);
  const spectro::SyntheticSpectrum s = spectro::generate_spectrum(truth, rates, dwell, grid, o.seed);
  std::ostringstream csv;
  write_spectrum_csv(csv, transmission ? s.transmission : s.reflection);
  return csv.str();
}

// -------------------------------------------------------------- sweep

struct SweepOptions {
  std::string range;
  double length_mm = 10.0;
  double tau_ns = 26.25;
  double lambda_nm = 780.0;
  double u0 = 1.0;
  Output output;
};

std::string sweep_table(const SweepOptions& o) {
  const double length = o.length_mm * kMm;
  const cavity::AtomLine line{o.lambda_nm * kNm, o.tau_ns * kNs};
  std::string table = "u,r_sc,extinction,reflectivity,g0_over_2pi_MHz,diffraction_loss\n";
  for (const double u : parse_range(o.range)) {
    const double r = focus::scattering_ratio(u);
    table += fmt::format("{},{},{},{},{},{}\n", u, r, focus::extinction(r), focus::reflectivity(r),
                         cavity::coupling_g0(u, length, line).hz * 1e-6,
                         cavity::diffraction_loss(u, o.u0));
  }
  return table;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Strong-focusing atom-light coupling calculator", "atomlens"};
  app.set_config("--config", "", "TOML/INI file with the same keys as the flags (flags win)");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);

  RscOptions rsc;
  auto* rsc_cmd = app.add_subcommand("rsc", "Scattering ratio, extinction and reflectivity");
  auto* rsc_u = rsc_cmd->add_option("--u", rsc.u, "Focusing parameter u = w_L/f");
  auto* rsc_w = rsc_cmd->add_option("--w-l-mm", rsc.waist_mm, "Beam waist before the lens, mm");
  auto* rsc_f = rsc_cmd->add_option("--f-mm", rsc.focal_mm, "Lens focal length, mm");
  rsc_cmd->add_option("--lambda-nm", rsc.lambda_nm, "Wavelength, nm")->capture_default_str();
  rsc_cmd->add_option("--sweep", rsc.sweep, "u grid start:stop:step, emits CSV");
  rsc_u->excludes(rsc_w)->excludes(rsc_f);
  rsc_w->needs(rsc_f);
  rsc_f->needs(rsc_w);
  add_output_options(rsc_cmd, rsc.output, true);

  CouplingOptions coupling;
  auto* coupling_cmd = app.add_subcommand("coupling", "Cavity coupling g0, diffraction loss, finesse");
  coupling_cmd->add_option("--u", coupling.u, "Focusing parameter");
  coupling_cmd->add_option("--L-mm", coupling.length_mm, "Cavity length, mm")->capture_default_str();
  coupling_cmd->add_option("--tau-ns", coupling.tau_ns, "Excited-state lifetime, ns")->capture_default_str();
  coupling_cmd->add_option("--lambda-nm", coupling.lambda_nm, "Wavelength, nm")->capture_default_str();
  coupling_cmd->add_option("--u0", coupling.u0, "Maximal focusing tan(Theta0)")->capture_default_str();
  coupling_cmd->add_option("--loss-budget", coupling.loss_budget,
                           "Round-trip loss besides diffraction (mirrors, absorption)")
      ->capture_default_str();
  coupling_cmd->add_option("--cg", coupling.clebsch_gordan, "Clebsch-Gordan coefficient")
      ->capture_default_str();
  coupling_cmd->add_option("--sweep", coupling.sweep, "u grid start:stop:step, emits CSV");
  add_output_options(coupling_cmd, coupling.output, true);

  LensOptions lens;
  auto* lens_cmd = app.add_subcommand("lens", "Anaclastic lens ellipse and u0 from an opening angle");
  lens_cmd->add_option("--f-mm", lens.focal_mm, "Focal length, mm");
  lens_cmd->add_option("--n", lens.index, "Refractive index");
  lens_cmd->add_option("--theta-deg", lens.theta_deg, "Half-opening angle, degrees");
  add_output_options(lens_cmd, lens.output, true);

  FitCommandOptions fit;
  auto* fit_cmd = app.add_subcommand("fit", "Lorentzian fit of a spectrum CSV");
  fit_cmd->add_option("-i,--input", fit.input, "Spectrum CSV")->required();
  fit_cmd->add_option("--channel", fit.channel, "Channel")
      ->check(CLI::IsMember({"transmission", "reflection"}))
      ->capture_default_str();
  fit_cmd->add_option("--background-rate", fit.background_rate, "Detector background, 1/s");
  fit_cmd->add_option("--residuals", fit.residuals, "Write the residual table CSV here");
  add_output_options(fit_cmd, fit.output, true);

  SynthOptions synth;
  auto* synth_cmd = app.add_subcommand("synth", "Seeded synthetic spectrum CSV");
  auto* synth_rsc = synth_cmd->add_option("--r-sc", synth.r_sc, "Resonant scattering ratio");
  auto* synth_ext = synth_cmd->add_option("--extinction", synth.extinction, "Resonant extinction 1-T");
  synth_rsc->excludes(synth_ext);
  synth_cmd->add_option("--center-mhz", synth.center_mhz, "Line center, MHz")->capture_default_str();
  synth_cmd->add_option("--fwhm-mhz", synth.fwhm_mhz, "Line FWHM, MHz")->capture_default_str();
  synth_cmd->add_option("--ref-rate", synth.reference_rate, "Reference count rate, 1/s");
  synth_cmd->add_option("--background-rate", synth.background_rate, "Background rate, 1/s")
      ->capture_default_str();
  synth_cmd->add_option("--dwell-s", synth.dwell_s,
                        "Dwell per point, s (default 20 for transmission, 3000 for reflection)");
  synth_cmd->add_option("--grid", synth.grid, "Detuning grid start:stop:step, MHz")->capture_default_str();
  synth_cmd->add_option("--seed", synth.seed, "RNG seed")->capture_default_str();
  synth_cmd->add_option("--channel", synth.channel, "Channel")
      ->check(CLI::IsMember({"transmission", "reflection"}))
      ->capture_default_str();
  add_output_options(synth_cmd, synth.output, false);

  SweepOptions sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Table of scattering and coupling quantities over u");
  sweep_cmd->add_option("--range", sweep.range, "u grid start:stop:step")->required();
  sweep_cmd->add_option("--L-mm", sweep.length_mm, "Cavity length, mm")->capture_default_str();
  sweep_cmd->add_option("--tau-ns", sweep.tau_ns, "Excited-state lifetime, ns")->capture_default_str();
  sweep_cmd->add_option("--lambda-nm", sweep.lambda_nm, "Wavelength, nm")->capture_default_str();
  sweep_cmd->add_option("--u0", sweep.u0, "Maximal focusing tan(Theta0)")->capture_default_str();
  add_output_options(sweep_cmd, sweep.output, false);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    return report_error(err, kParameterError, e.what());
  }

  try {
    if (rsc_cmd->parsed()) {
      if (!rsc.sweep.empty()) {
        emit(rsc.output, rsc_sweep(rsc), out);
      } else {
        emit(rsc.output, render(rsc_report(rsc), rsc.output.format), out);
      }
    } else if (coupling_cmd->parsed()) {
      if (!coupling.sweep.empty()) {
        emit(coupling.output, coupling_sweep(coupling), out);
      } else {
        emit(coupling.output, render(coupling_report(coupling), coupling.output.format), out);
      }
    } else if (lens_cmd->parsed()) {
      emit(lens.output, render(lens_report(lens), lens.output.format), out);
    } else if (fit_cmd->parsed()) {
      emit(fit.output, render(fit_report(fit), fit.output.format), out);
    } else if (synth_cmd->parsed()) {
      emit(synth.output, synth_csv(synth), out);
    } else if (sweep_cmd->parsed()) {
      emit(sweep.output, sweep_table(sweep), out);
    }
  } catch (const CommandError& e) {
    return report_error(err, e.code, e.what(), e.detail);
  } catch (const DomainError& e) {
    return report_error(err, kParameterError, e.what());
  } catch (const OutOfRangeError& e) {
    return report_error(err, kParameterError, e.what());
  } catch (const ConvergenceError& e) {
    return report_error(err, kNumericalFailure, e.what());
  } catch (const OverflowError& e) {
    return report_error(err, kNumericalFailure, e.what());
  }
  return kOk;
}

}  // namespace atomlens::cli
