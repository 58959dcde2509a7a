#include "omegabound/bounds.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace omegabound {

BoundParams BoundParams::first(int h, Rational delta, int degree) {
  BoundParams p{h, delta, degree, degree > 0 ? h / degree : 0};
  p.validate();
  return p;
}

void BoundParams::validate() const {
  if (h < 3) throw std::domain_error("BoundParams: h must be at least 3");
  if (!(delta.num() > 0 && delta.num() < delta.den())) {
    throw std::domain_error("BoundParams: delta must lie in (0, 1)");
  }
  if (degree < 2) throw std::domain_error("BoundParams: degree must be at least 2");
  if (k < h / degree || k < 1) throw std::domain_error("BoundParams: k below [h/degree]");
  if (k > h - 1) throw std::domain_error("BoundParams: k above h-1");
}

double BoundParams::s_max() const {
  return (degree - (k - 1) * delta.to_double()) / static_cast<double>(h - k + 1);
}

double BoundParams::log_range() const {
  // s_max/delta = (degree*den - (k-1)*num) / ((h-k+1)*num), exact in integers.
  const std::int64_t top = static_cast<std::int64_t>(degree) * delta.den() -
                           static_cast<std::int64_t>(k - 1) * delta.num();
  const std::int64_t bottom = static_cast<std::int64_t>(h - k + 1) * delta.num();
  if (top <= bottom) return top == bottom ? 0.0 : -1.0;
  return std::log1p(static_cast<double>(top - bottom) / static_cast<double>(bottom));
}

double BoundParams::lower_sum() const {
  return static_cast<double>(h - k - 3) / static_cast<double>(h - k - 1);
}

LogNumber closed_form_bound(const BoundParams& p) {
  p.validate();
  const double range = p.log_range();
  if (range <= 0.0) return LogNumber::zero();
  return ln_pow_int(LogNumber::from_log(std::log(range)), p.k) / ln_factorial(p.k);
}

LogNumber first_bound(int h, Rational delta, int degree) {
  if (degree < 2) throw std::domain_error("first_bound: degree must be at least 2");
  if (h / degree < 1) throw std::domain_error("first_bound: [h/degree] must be at least 1");
  return closed_form_bound(BoundParams::first(h, delta, degree));
}

LogNumber second_bound_term(const BoundParams& p, double alpha, const QuadratureSpec& spec) {
  p.validate();
  if (p.k > p.h - 2) throw std::domain_error("second_bound_term: k must be at most h-2");
  if (!(alpha >= 0.0)) throw std::domain_error("second_bound_term: alpha must be non-negative");
  if (p.empty_region()) return LogNumber::zero();
  const double a = p.delta.to_double();
  const double b = p.s_max();
  // log of the integral, formed from the exp(-alpha*b)-scaled quadrature.
  const double log_integral = alpha * b + std::log(exp_integral_scaled(alpha, a, b, spec));
  const double log_value = -alpha * p.lower_sum() + p.k * log_integral;
  return LogNumber::from_log(log_value) / ln_factorial(p.k);
}

TiltChoice optimize_alpha(const BoundParams& p, const QuadratureSpec& spec) {
  TiltChoice best{p.k, 0.0, second_bound_term(p, 0.0, spec), 1};
  if (best.term_value.is_zero()) return best;

  auto eval = [&](double alpha) {
    ++best.evaluations;
    return second_bound_term(p, alpha, spec);
  };

  std::array<double, 18> grid{};
  grid[0] = 0.0;
  for (int j = -2; j <= 14; ++j) grid[static_cast<std::size_t>(j + 3)] = std::ldexp(1.0, j);

  std::size_t best_index = 0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const LogNumber v = eval(grid[i]);
    if (v < best.term_value) {
      best.term_value = v;
      best.alpha = grid[i];
      best_index = i;
    }
  }

  double lo = best_index == 0 ? 0.0 : grid[best_index - 1];
  double hi = best_index + 1 < grid.size() ? grid[best_index + 1] : grid[best_index];
  if (hi <= lo) return best;

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  LogNumber f1 = eval(x1);
  LogNumber f2 = eval(x2);
  for (int iter = 0; iter < 80 && (hi - lo) > 1e-9 * (1.0 + hi); ++iter) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = eval(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = eval(x2);
    }
  }
  if (f1 < best.term_value) {
    best.term_value = f1;
    best.alpha = x1;
  }
  if (f2 < best.term_value) {
    best.term_value = f2;
    best.alpha = x2;
  }
  return best;
}

SecondBound second_bound_detailed(int h, Rational delta, int K, const QuadratureSpec& spec) {
  const int k_min = h / 3;
  if (h < 3) throw std::domain_error("second_bound: h must be at least 3");
  if (K < k_min || K > h - 1) throw std::domain_error("second_bound: K outside [[h/3], h-1]");
  SecondBound out;
  for (int k = k_min; k < K; ++k) {
    BoundParams p{h, delta, 3, k};
    out.tilts.push_back(optimize_alpha(p, spec));
    out.value = out.value + out.tilts.back().term_value;
  }
  out.final_term = closed_form_bound(BoundParams{h, delta, 3, K});
  out.value = out.value + out.final_term;
  return out;
}

LogNumber second_bound(int h, Rational delta, int K, const QuadratureSpec& spec) {
  return second_bound_detailed(h, delta, K, spec).value;
}

}  // namespace omegabound
