#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"

#include "atomlens/errors.hpp"
#include "atomlens/specfun.hpp"

using namespace atomlens;
using specfun::quadrature_oracle_gamma;
using specfun::scaled_upper_gamma;
using specfun::upper_gamma;

namespace {

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  return g;
}

}  // namespace

TEST_SUITE("specfun") {

TEST_CASE("closed forms") {
  CHECK(rel_err(upper_gamma(1.0, 1.0), std::exp(-1.0)) < 1e-15);
  CHECK(rel_err(upper_gamma(0.5, 0.0), std::sqrt(std::numbers::pi)) < 1e-15);
  CHECK(rel_err(upper_gamma(0.5, 1.0), std::sqrt(std::numbers::pi) * std::erfc(1.0)) < 1e-13);
  CHECK(rel_err(scaled_upper_gamma(1.0, 5.0), 1.0) < 1e-15);
}

// 40-digit values from tests/oracles/reference_values.py.
TEST_CASE("extended-precision reference values") {
  struct Case {
    double s, x, value;
  };
  const Case cases[] = {
      {0.25, 1.0, 0.2462555291934987088744974330686},
      {-0.25, 1.0, 0.1969865104349430180986527646919},
      {1.5, 0.01, 0.8855642445373384687495870078376},
      {-0.25, 0.01, 7.789517373460475976989653810796},
      {2.0, 50.0, 9.836624224615980693388448364288e-21},
      {-0.9, 0.05, 13.29373665593644721103169901869},
      {0.25, 700.0, 7.237269293829326107307820153864e-307},
  };
  for (const Case& c : cases) {
    CAPTURE(c.s);
    CAPTURE(c.x);
    CHECK(rel_err(upper_gamma(c.s, c.x), c.value) < 1e-12);
  }
  CHECK(rel_err(scaled_upper_gamma(0.25, 1000.0), 0.005619203052473203404604096648) < 1e-13);
  CHECK(rel_err(scaled_upper_gamma(-0.25, 4.0), 0.1396463145318334810402518535) < 1e-13);
  CHECK(rel_err(scaled_upper_gamma(-0.25, 1e6), 3.162273707330197998538880721641e-08) < 1e-13);
  CHECK(rel_err(scaled_upper_gamma(0.25, 1e6), 3.162275288464284683729562415185e-05) < 1e-13);
}

TEST_CASE("Gamma(1/4, 1) against the quadrature oracle") {
  const double oracle = quadrature_oracle_gamma(0.25, 1.0, 1e-13);
  CHECK(rel_err(oracle, 0.2462555291934987088744974330686) < 1e-13);
  CHECK(rel_err(upper_gamma(0.25, 1.0), oracle) < 1e-12);
}

TEST_CASE("quadrature oracle") {
  CHECK(rel_err(quadrature_oracle_gamma(1.0, 2.0, 1e-12), std::exp(-2.0)) < 1e-12);
  CHECK(rel_err(quadrature_oracle_gamma(0.5, 1.0, 1e-12), 0.2788055852806619764992326110774) < 1e-12);
  CHECK(rel_err(quadrature_oracle_gamma(-0.25, 1.0, 1e-12), upper_gamma(-0.25, 1.0)) < 1e-11);
  CHECK_THROWS_AS(quadrature_oracle_gamma(0.5, 0.0, 1e-12), DomainError);
  CHECK_THROWS_AS(quadrature_oracle_gamma(0.5, 1.0, 1e-16), DomainError);
}

TEST_CASE("large-x asymptote of the scaled form") {
  const double s = 0.25;
  const double x = 1000.0;
  const double asymptote = std::pow(x, s - 1.0) * (1.0 + (s - 1.0) / x);
  CHECK(rel_err(scaled_upper_gamma(s, x), asymptote) < 1e-5);
  // Far beyond e^-x underflow.
  const double big = 1e12;
  CHECK(rel_err(scaled_upper_gamma(-0.25, big), std::pow(big, -1.25)) < 1e-11);
}

TEST_CASE("recurrence links negative and positive orders") {
  const double x = 4.0;
  const double via_recurrence = (scaled_upper_gamma(0.75, x) - std::pow(x, -0.25)) / -0.25;
  CHECK(rel_err(scaled_upper_gamma(-0.25, x), via_recurrence) < 1e-13);
}

TEST_CASE("domain and overflow errors are distinct") {
  CHECK_THROWS_AS(upper_gamma(-0.25, 0.0), DomainError);
  CHECK_THROWS_AS(upper_gamma(0.0, 0.0), DomainError);
  CHECK_THROWS_AS(upper_gamma(0.5, -1.0), DomainError);
  CHECK_THROWS_AS(upper_gamma(-1.0, 2.0), DomainError);
  CHECK_THROWS_AS(scaled_upper_gamma(0.5, 0.0), DomainError);
  CHECK_THROWS_AS(scaled_upper_gamma(0.5, -3.0), DomainError);
  CHECK_THROWS_AS(upper_gamma(-3.5, 1e-100), OverflowError);
  CHECK_THROWS_AS(upper_gamma(180.0, 0.0), OverflowError);
}

TEST_CASE("property: recurrence residual") {
  // s in [-0.9, 2] avoiding the integer 0 and -1 endpoints of the shifted order.
  for (int i = 0; i <= 29; ++i) {
    const double s = -0.9 + i * 0.1 + 0.0137;
    for (const double x : log_grid(0.01, 100.0, 25)) {
      const double lhs = upper_gamma(s + 1.0, x);
      const double rhs = s * upper_gamma(s, x) + std::pow(x, s) * std::exp(-x);
      CAPTURE(s);
      CAPTURE(x);
      CHECK(std::abs(lhs - rhs) <= 1e-11 * std::abs(lhs));
    }
  }
}

TEST_CASE("property: scaled and unscaled forms agree") {
  for (const double s : {-0.75, -0.25, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0}) {
    for (const double x : log_grid(1e-3, 650.0, 40)) {
      CAPTURE(s);
      CAPTURE(x);
      CHECK(rel_err(scaled_upper_gamma(s, x), std::exp(x) * upper_gamma(s, x)) < 1e-12);
    }
  }
}

TEST_CASE("property: strictly decreasing in x") {
  for (const double s : {-0.25, 0.25, 0.75, 1.5}) {
    double previous = upper_gamma(s, 1e-3);
    for (const double x : log_grid(1.1e-3, 600.0, 300)) {
      const double value = upper_gamma(s, x);
      CAPTURE(s);
      CAPTURE(x);
      CHECK(value < previous);
      previous = value;
    }
  }
}

TEST_CASE("property: agreement with the quadrature oracle") {
  for (const double s : {-0.25, 0.25, 0.5, 0.75, 1.0, 1.5}) {
    for (const double x : log_grid(1e-2, 1e2, 20)) {
      CAPTURE(s);
      CAPTURE(x);
      CHECK(rel_err(upper_gamma(s, x), quadrature_oracle_gamma(s, x, 1e-13)) <= 1e-11);
    }
  }
}

}  // TEST_SUITE
