#pragma once

#include <stdexcept>

namespace omegabound {

struct QuadratureSpec {
  double rel_tol = 1e-12;
  int max_depth = 60;

  /// Throws std::invalid_argument unless 0 < rel_tol < 1e-6 and max_depth >= 10.
  void validate() const;
};

/// Adaptive refinement could not reach the requested tolerance.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Integral of exp(alpha*s)/s over [a, b].
///
/// Requires 0 < a <= b, alpha >= 0 and alpha*b <= 700; violations throw
/// std::domain_error. Returns 0 when a == b.
double exp_integral(double alpha, double a, double b, const QuadratureSpec& spec = {});

/// Integral of exp(alpha*(s - b))/s over [a, b], i.e. exp_integral scaled by
/// exp(-alpha*b). Has no upper limit on alpha*b, which lets callers work with
/// log(exp_integral) = alpha*b + log(exp_integral_scaled) when the unscaled
/// value would overflow.
double exp_integral_scaled(double alpha, double a, double b, const QuadratureSpec& spec = {});

}  // namespace omegabound
