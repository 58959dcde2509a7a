#pragma once

#include <cstdint>
#include <vector>

#include "omegabound/log_number.hpp"
#include "omegabound/quadrature.hpp"
#include "omegabound/rational.hpp"

namespace omegabound {

/// One bound term: h large prime factors above X^delta, of which the k
/// smallest form the modulus d = p_1...p_k, for a polynomial of the given degree.
struct BoundParams {
  int h = 3;
  Rational delta{1, 321};
  int degree = 3;
  int k = 1;

  /// Parameters with k = [h/degree], the choice of the first estimate.
  static BoundParams first(int h, Rational delta, int degree = 3);

  /// Throws std::domain_error unless h >= 3, 0 < delta < 1, degree >= 2 and
  /// [h/degree] <= k <= h-1.
  void validate() const;

  /// Upper end of each exponent, (degree - (k-1)delta) / (h-k+1).
  double s_max() const;
  /// log(s_max / delta), computed from exact integer numerator and denominator.
  /// Non-positive exactly when the region is empty.
  double log_range() const;
  bool empty_region() const { return log_range() <= 0.0; }
  /// (h-k-3)/(h-k-1), the lower bound on the exponent sum when k < K.
  double lower_sum() const;
};

/// Tilt parameter for one k-term of the second estimate.
struct TiltChoice {
  int k = 0;
  double alpha = 0.0;
  LogNumber term_value;
  int evaluations = 0;
};

/// (1/k!) (log(s_max/delta))^k for arbitrary valid k; zero on an empty region.
LogNumber closed_form_bound(const BoundParams& p);

/// First estimate with k = [h/degree]. Zero once s_max <= delta, which for
/// degree 3 and delta = 1/321 means every h > 963.
LogNumber first_bound(int h, Rational delta, int degree = 3);

/// exp(-alpha (h-k-3)/(h-k-1)) / k! * (integral_delta^{s_max} e^{alpha s} ds/s)^k.
/// Requires [h/degree] <= k <= h-2 and alpha >= 0. Zero on an empty region.
LogNumber second_bound_term(const BoundParams& p, double alpha, const QuadratureSpec& spec = {});

/// Minimises second_bound_term over alpha >= 0: scans {0} and 2^j for
/// -2 <= j <= 14, then golden-section refines between the neighbours of the
/// best grid point. Never worse than alpha = 0.
TiltChoice optimize_alpha(const BoundParams& p, const QuadratureSpec& spec = {});

struct SecondBound {
  LogNumber value;
  std::vector<TiltChoice> tilts;  // k = [h/3] .. K-1
  LogNumber final_term;           // the untilted k = K term
};

/// Second estimate for degree 3: optimised tilted terms for [h/3] <= k < K plus
/// the closed form at k = K. Throws std::domain_error unless [h/3] <= K <= h-1.
SecondBound second_bound_detailed(int h, Rational delta, int K, const QuadratureSpec& spec = {});
LogNumber second_bound(int h, Rational delta, int K, const QuadratureSpec& spec = {});

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

/// Monte-Carlo estimate of the integral of prod 1/s_i over the exact region:
/// delta <= s_1 <= ... <= s_k and s_1+...+s_{k-1}+(h-k+1)s_k <= degree. With
/// the lower constraint the region additionally has sum s_i <= 1 and, unless
/// it is vacuous (lower_sum() <= k*delta), sum s_i >= lower_sum().
///
/// Samples the box [delta, s_max]^k uniformly; each unordered sample is sorted
/// and the result divided by k!. Requires k <= 8 and samples >= 1e5.
McEstimate region_integral_mc(const BoundParams& p, bool with_lower_constraint, std::int64_t samples,
                              std::uint64_t seed);

}  // namespace omegabound
