#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "atomlens/errors.hpp"
#include "atomlens/spectro.hpp"

namespace atomlens::spectro {
namespace {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

constexpr double kObjectiveTolerance = 1e-10;
constexpr double kStepTolerance = 1e-8;

Vec3 pack(const LorentzParams& p) { return {p.amplitude, p.center, p.fwhm}; }

double chi2(std::span<const DataPoint> data, double offset, const Vec3& p) {
  double sum = 0.0;
  for (const DataPoint& d : data) {
    const double r = (d.y - offset - lorentzian(d.x, p[0], p[1], p[2])) / d.sigma;
    sum += r * r;
  }
  return sum;
}

// Gauss-Newton curvature J^T J and gradient J^T r of the weighted residuals.
void normal_equations(std::span<const DataPoint> data, double offset, const Vec3& p, Mat3& jtj,
                      Vec3& jtr) {
  jtj.setZero();
  jtr.setZero();
  const double half = 0.5 * p[2];
  for (const DataPoint& d : data) {
    const double dx = d.x - p[1];
    const double denom = dx * dx + half * half;
    const double shape = half * half / denom;
    const double model = offset + p[0] * shape;
    const double w = 1.0 / d.sigma;
    Vec3 j;
    j[0] = shape * w;
    j[1] = p[0] * shape * 2.0 * dx / denom * w;
    j[2] = p[0] * half * dx * dx / (denom * denom) * w;
    const double r = (d.y - model) * w;
    jtj.noalias() += j * j.transpose();
    jtr += j * r;
  }
}

}  // namespace

double lorentzian(double detuning, double amplitude, double center, double fwhm) {
  if (!(fwhm > 0.0)) throw DomainError("lorentzian: fwhm must be positive");
  const double half = 0.5 * fwhm;
  const double dx = detuning - center;
  return amplitude * half * half / (dx * dx + half * half);
}

LorentzParams initial_guess(std::span<const DataPoint> data, double offset) {
  if (data.empty()) throw DomainError("initial_guess: no data");
  const auto extremal = std::max_element(data.begin(), data.end(), [offset](const auto& a, const auto& b) {
    return std::abs(a.y - offset) < std::abs(b.y - offset);
  });
  const auto [lo, hi] = std::minmax_element(data.begin(), data.end(),
                                            [](const auto& a, const auto& b) { return a.x < b.x; });
  return {extremal->y - offset, extremal->x, 0.5 * (hi->x - lo->x)};
}

LorentzFit fit_lorentzian(std::span<const DataPoint> data, const FitOptions& options) {
  if (data.size() < 4) throw DomainError("fit_lorentzian: at least 4 points are required");
  for (const DataPoint& d : data) {
    if (!(d.sigma > 0.0) || !std::isfinite(d.y) || !std::isfinite(d.x)) {
      throw DomainError("fit_lorentzian: every point needs finite x, y and sigma > 0");
    }
  }

  LorentzFit fit;
  fit.offset = options.offset;

  const auto [ymin, ymax] = std::minmax_element(data.begin(), data.end(),
                                                [](const auto& a, const auto& b) { return a.y < b.y; });
  if (ymin->y == ymax->y) {
    fit.status = FitStatus::degenerate;
    return fit;
  }

  Vec3 p = pack(options.initial.value_or(initial_guess(data, options.offset)));
  if (!(p[2] > 0.0)) throw DomainError("fit_lorentzian: initial fwhm must be positive");

  double objective = chi2(data, options.offset, p);
  double damping = 1e-3;
  Mat3 jtj;
  Vec3 jtr;
  normal_equations(data, options.offset, p, jtj, jtr);
  FitStatus status = FitStatus::max_cycles;

  int cycle = 0;
  while (cycle < options.max_cycles) {
    ++cycle;
    Mat3 damped = jtj;
    damped.diagonal() += damping * jtj.diagonal();
    const Vec3 step = damped.ldlt().solve(jtr);
    const Vec3 trial = p + step;
    const double trial_objective =
        (std::isfinite(step.sum()) && trial[2] > 0.0) ? chi2(data, options.offset, trial) : INFINITY;

    if (trial_objective <= objective) {
      const double decrease = objective - trial_objective;
      const bool small_step =
          (step.array().abs() <= kStepTolerance * (p.array().abs() + kStepTolerance)).all();
      p = trial;
      objective = trial_objective;
      damping = std::max(damping / 10.0, 1e-12);
      normal_equations(data, options.offset, p, jtj, jtr);
      if (objective == 0.0 || decrease <= kObjectiveTolerance * objective || small_step) {
        status = FitStatus::converged;
        break;
      }
    } else {
      damping *= 10.0;
      if (damping > 1e16) {
        // No descent direction left at machine precision.
        status = FitStatus::converged;
        break;
      }
    }
  }

  fit.amplitude = p[0];
  fit.center = p[1];
  fit.fwhm = p[2];
  fit.chi2 = objective;
  fit.chi2_reduced = objective / static_cast<double>(data.size() - 3);
  fit.cycles = cycle;
  fit.status = status;

  Eigen::FullPivLU<Mat3> lu(jtj);
  if (!lu.isInvertible()) {
    fit.status = FitStatus::degenerate;
    return fit;
  }
  // Covariance scaled by the reduced chi-square.
  const Mat3 covariance = lu.inverse() * fit.chi2_reduced;
  fit.sigma_amplitude = std::sqrt(std::max(covariance(0, 0), 0.0));
  fit.sigma_center = std::sqrt(std::max(covariance(1, 1), 0.0));
  fit.sigma_fwhm = std::sqrt(std::max(covariance(2, 2), 0.0));
  return fit;
}

std::string to_string(FitStatus status) {
  switch (status) {
    case FitStatus::converged:
      return "converged";
    case FitStatus::max_cycles:
      return "max_cycles";
    case FitStatus::degenerate:
      return "degenerate";
  }
  return "unknown";
}

}  // namespace atomlens::spectro
