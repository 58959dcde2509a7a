#include "omegabound/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace omegabound {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo;
  double hi;
  double value;
  double error;
  int depth;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel gauss_kronrod(const F& f, double lo, double hi, int depth) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double fsum = f(center - dx) + f(center + dx);
    kronrod += kWgk[j] * fsum;
    if (j % 2 == 1) gauss += kWg[j / 2] * fsum;
  }
  kronrod *= half;
  gauss *= half;
  return {lo, hi, kronrod, std::fabs(kronrod - gauss), depth};
}

// Global adaptive bisection: always split the panel with the largest error
// estimate until the summed estimate meets the relative tolerance.
template <class F>
double integrate_positive(const F& f, double a, double b, const QuadratureSpec& spec) {
  std::priority_queue<Panel> panels;
  const Panel first = gauss_kronrod(f, a, b, 0);
  double total = first.value;
  double error = first.error;
  panels.push(first);
  // Re-summing from scratch every so often stops drift in the running totals.
  int splits = 0;
  while (error > spec.rel_tol * std::fabs(total)) {
    const Panel worst = panels.top();
    if (worst.depth >= spec.max_depth) {
      throw PrecisionError("exp_integral: tolerance not reached within max_depth");
    }
    panels.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    const Panel left = gauss_kronrod(f, worst.lo, mid, worst.depth + 1);
    const Panel right = gauss_kronrod(f, mid, worst.hi, worst.depth + 1);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
    if (++splits % 64 == 0) {
      auto copy = panels;
      total = 0.0;
      error = 0.0;
      while (!copy.empty()) {
        total += copy.top().value;
        error += copy.top().error;
        copy.pop();
      }
    }
  }
  // Final sum in ascending-position order for reproducibility.
  std::vector<Panel> all;
  all.reserve(panels.size());
  while (!panels.empty()) {
    all.push_back(panels.top());
    panels.pop();
  }
  std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.lo < y.lo; });
  double sum = 0.0;
  for (const auto& p : all) sum += p.value;
  return sum;
}

void check_domain(double alpha, double a, double b) {
  if (!(a > 0.0)) throw std::domain_error("exp_integral: lower limit must be positive");
  if (!(b >= a)) throw std::domain_error("exp_integral: upper limit below lower limit");
  if (!(alpha >= 0.0)) throw std::domain_error("exp_integral: alpha must be non-negative");
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0 && rel_tol < 1e-6)) {
    throw std::invalid_argument("QuadratureSpec: rel_tol must lie in (0, 1e-6)");
  }
  if (max_depth < 10) throw std::invalid_argument("QuadratureSpec: max_depth must be at least 10");
}

double exp_integral(double alpha, double a, double b, const QuadratureSpec& spec) {
  spec.validate();
  check_domain(alpha, a, b);
  if (alpha * b > 700.0) throw std::domain_error("exp_integral: alpha*b exceeds 700");
  if (a == b) return 0.0;
  if (alpha == 0.0) return std::log(b / a);
  return integrate_positive([alpha](double s) { return std::exp(alpha * s) / s; }, a, b, spec);
}

double exp_integral_scaled(double alpha, double a, double b, const QuadratureSpec& spec) {
  spec.validate();
  check_domain(alpha, a, b);
  if (a == b) return 0.0;
  if (alpha == 0.0) return std::log(b / a);
  return integrate_positive([alpha, b](double s) { return std::exp(alpha * (s - b)) / s; }, a, b,
                            spec);
}

}  // namespace omegabound
