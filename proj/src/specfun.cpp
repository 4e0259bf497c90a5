#include "atomlens/specfun.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "atomlens/errors.hpp"

namespace atomlens::specfun {
namespace {

constexpr int kMaxIterations = 500;
constexpr double kConvergence = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min() / kConvergence;

bool is_nonpositive_integer(double s) { return s <= 0.0 && std::floor(s) == s; }

// Power series of the lower function, with e^-x x^s factored out:
// sum_{n>=0} x^n / (s (s+1) ... (s+n)).
double lower_series(double s, double x) {
  double term = 1.0 / s;
  double sum = term;
  for (int n = 1; n <= kMaxIterations; ++n) {
    term *= x / (s + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * kConvergence) return sum;
  }
  throw ConvergenceError("upper_gamma: lower series did not converge", sum, std::abs(term));
}

// Legendre continued fraction for e^x x^-s Gamma(s, x), evaluated with the
// modified Lentz method. Valid for any real s when x > 0.
double upper_fraction(double s, double x) {
  double b = x + 1.0 - s;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIterations; ++i) {
    const double an = -i * (i - s);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) <= kConvergence) return h;
  }
  throw ConvergenceError("upper_gamma: continued fraction did not converge", h, 0.0);
}

void check_order(double s) {
  if (!std::isfinite(s)) throw DomainError("upper_gamma: order must be finite");
  if (is_nonpositive_integer(s)) {
    throw DomainError("upper_gamma: non-positive integer order " + std::to_string(s) +
                      " is not supported");
  }
}

}  // namespace

double scaled_upper_gamma(double s, double x) {
  check_order(s);
  if (!(x > 0.0)) throw DomainError("scaled_upper_gamma: requires x > 0");
  if (std::isinf(x)) throw DomainError("scaled_upper_gamma: x must be finite");

  // Shift negative orders into (0, 1] for the series branch.
  int shifts = 0;
  double shifted = s;
  while (shifted <= 0.0) {
    shifted += 1.0;
    ++shifts;
  }

  double value;
  if (x >= shifted + 1.0) {
    value = std::pow(x, s) * upper_fraction(s, x);
  } else {
    // e^x Gamma(s', x) = e^x Gamma(s') - x^s' * series.
    value = std::exp(x) * std::tgamma(shifted) - std::pow(x, shifted) * lower_series(shifted, x);
    // Downward recurrence e^x Gamma(a, x) = (e^x Gamma(a+1, x) - x^a) / a.
    for (double a = shifted - 1.0; shifts > 0; a -= 1.0, --shifts) {
      value = (value - std::pow(x, a)) / a;
    }
  }
  if (std::isinf(value)) throw OverflowError("scaled_upper_gamma: result overflows");
  return value;
}

double upper_gamma(double s, double x) {
  check_order(s);
  if (std::isnan(x) || x < 0.0) throw DomainError("upper_gamma: requires x >= 0");
  if (x == 0.0) {
    if (s <= 0.0) throw DomainError("upper_gamma: Gamma(s, 0) diverges for s <= 0");
    const double complete = std::tgamma(s);
    if (std::isinf(complete)) throw OverflowError("upper_gamma: complete gamma overflows");
    return complete;
  }
  if (std::isinf(x)) return 0.0;
  return std::exp(-x) * scaled_upper_gamma(s, x);
}

double quadrature_oracle_scaled_gamma(double s, double x, double tol) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("quadrature_oracle_gamma: requires x > 0");
  if (!(tol >= 1e-14)) throw DomainError("quadrature_oracle_gamma: tol must be >= 1e-14");

  // Integrand exponent s w - x (e^w - 1); its peak is at e^w = s / x when s > x.
  const auto exponent = [s, x](double w) { return s * w - x * std::expm1(w); };
  const double peak = (s > x) ? exponent(std::log(s / x)) : 0.0;
  // Unit pieces for x <~ 1; for large x the integrand decays on a scale 1/x.
  const double width = 1.0 / (1.0 + x);
  const double w_peak = (s > x) ? std::log(s / x) : 0.0;
  double upper = width;
  while (upper < w_peak || exponent(upper) > peak - 60.0) upper += width;

  using Integrator = boost::math::quadrature::gauss_kronrod<double, 31>;
  const auto integrand = [&exponent, peak](double w) { return std::exp(exponent(w) - peak); };
  double total = 0.0;
  double total_error = 0.0;
  for (double a = 0.0; a < upper; a += width) {
    double error = 0.0;
    total += Integrator::integrate(integrand, a, a + width, 10, tol, &error);
    total_error += error;
  }
  if (!(total_error <= tol * std::abs(total))) {
    throw ConvergenceError("quadrature_oracle_gamma: tolerance not reached",
                           std::pow(x, s) * std::exp(peak) * total,
                           total_error / std::abs(total));
  }
  return std::pow(x, s) * std::exp(peak) * total;
}

double quadrature_oracle_gamma(double s, double x, double tol) {
  return std::exp(-x) * quadrature_oracle_scaled_gamma(s, x, tol);
}

}  // namespace atomlens::specfun
