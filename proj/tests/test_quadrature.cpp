#include <doctest.h>

#include <cmath>
#include <random>

#include "omegabound/quadrature.hpp"
#include "oracles/ei_series.hpp"

using omegabound::exp_integral;
using omegabound::exp_integral_scaled;
using omegabound::QuadratureSpec;

TEST_CASE("exp_integral: worked values") {
  CHECK(exp_integral(0.0, 1.0 / 321.0, 0.5) == doctest::Approx(std::log(0.5 * 321.0)).epsilon(1e-15));
  const double ei21 = exp_integral(1.0, 1.0, 2.0);
  CHECK(std::fabs(ei21 / 3.0591165396459534 - 1.0) < 1e-10);
  CHECK(std::fabs(ei21 / static_cast<double>(oracle::ei_difference(1, 1, 2)) - 1.0) < 1e-10);
  const double lo = 1.0 / 321.0;
  const double v = exp_integral(100.0, lo, 0.01);
  CHECK(std::fabs(v / 2.1466015776295162 - 1.0) < 1e-10);
  CHECK(std::fabs(v / static_cast<double>(oracle::ei_difference(100, lo, 0.01)) - 1.0) < 1e-10);
  CHECK(exp_integral(3.0, 0.2, 0.2) == 0.0);
}

TEST_CASE("exp_integral: errors") {
  CHECK_THROWS_AS(exp_integral(1.0, 0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(exp_integral(1.0, -1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(exp_integral(1.0, 2.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(exp_integral(-1.0, 1.0, 2.0), std::domain_error);
  CHECK_THROWS_AS(exp_integral(800.0, 0.5, 1.0), std::domain_error);
  CHECK_THROWS_AS(exp_integral(1.0, 1.0, 2.0, QuadratureSpec{1e-3, 60}), std::invalid_argument);
  CHECK_THROWS_AS(exp_integral(1.0, 1.0, 2.0, QuadratureSpec{1e-12, 5}), std::invalid_argument);
  // Depth 10 cannot resolve a 1e-15 tolerance on a steep integrand.
  CHECK_THROWS_AS(exp_integral(690.0, 1e-6, 1.0, QuadratureSpec{1e-15, 10}), omegabound::PrecisionError);
}

TEST_CASE("exp_integral_scaled matches and extends the unscaled form") {
  for (double alpha : {0.5, 10.0, 300.0}) {
    const double unscaled = exp_integral(alpha, 0.01, 1.5);
    const double scaled = exp_integral_scaled(alpha, 0.01, 1.5);
    CHECK(std::fabs(std::log(unscaled) - (alpha * 1.5 + std::log(scaled))) < 1e-12 * (1 + alpha));
  }
  // alpha*b = 16384 * 0.43 overflows unscaled; scaled stays finite and near 1/(alpha b).
  const double big = exp_integral_scaled(16384.0, 0.1, 0.43);
  CHECK(big == doctest::Approx(1.0 / (16384.0 * 0.43)).epsilon(1e-3));
}

TEST_CASE("property: additivity, monotonicity in alpha, bracketing") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    const double a = 1e-3 + 0.3 * unit(rng);
    const double c = a * (1.0 + 20.0 * unit(rng));
    const double b = a + (c - a) * unit(rng);
    const double alpha = unit(rng) * 600.0 / c;
    const QuadratureSpec spec;
    const double whole = exp_integral(alpha, a, c, spec);
    const double parts = exp_integral(alpha, a, b, spec) + exp_integral(alpha, b, c, spec);
    CHECK(std::fabs(whole - parts) <= 10 * spec.rel_tol * whole);

    const double alpha2 = std::min(alpha * (1.0 + unit(rng)) + 1e-3, 699.0 / c);
    if (alpha2 <= alpha) continue;
    CHECK(exp_integral(alpha, a, c) < exp_integral(alpha2, a, c));

    CHECK(std::log(c / a) <= whole * (1 + 1e-12));
    CHECK(whole <= std::exp(alpha * c) * std::log(c / a) * (1 + 1e-12));
  }
}
