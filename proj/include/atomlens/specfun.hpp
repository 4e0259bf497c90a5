#pragma once

// Upper incomplete gamma function for real order.
//
// The exponentially scaled form e^x * Gamma(s, x) is the primary entry point:
// it stays finite for x far beyond the range where e^-x underflows, which is
// where the strong-focusing formulas evaluate it (x = 1/u^2).

namespace atomlens::specfun {

// Order and argument of Gamma(s, x). s must not be a non-positive integer;
// x > 0 is required whenever s <= 0.
struct GammaArgs {
  double s;
  double x;
};

// Gamma(s, x) = integral from x to infinity of t^(s-1) e^-t dt.
// Throws DomainError for x < 0, for x == 0 with s <= 0, and for non-positive
// integer s. Throws OverflowError when the result exceeds double range.
double upper_gamma(double s, double x);
inline double upper_gamma(GammaArgs a) { return upper_gamma(a.s, a.x); }

// e^x * Gamma(s, x) for x > 0.
double scaled_upper_gamma(double s, double x);
inline double scaled_upper_gamma(GammaArgs a) { return scaled_upper_gamma(a.s, a.x); }

// Independent reference evaluation by adaptive Gauss-Kronrod quadrature of
// x^s * integral over w in [0, inf) of exp(s w - x (e^w - 1)), i.e. the
// substitution t = x e^w. Returns Gamma(s, x); the achieved relative error
// estimate is below tol or ConvergenceError is thrown. Intended for tests.
double quadrature_oracle_gamma(double s, double x, double tol);

// Scaled variant of the oracle: e^x * Gamma(s, x).
double quadrature_oracle_scaled_gamma(double s, double x, double tol);

}  // namespace atomlens::specfun
