#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "omegabound/bounds.hpp"
#include "omegabound/log_number.hpp"
#include "omegabound/quadrature.hpp"
#include "omegabound/rational.hpp"

namespace omegabound {

struct AggregateConfig {
  Rational delta{1, 321};
  int H = 132;
  int split_h = 190;
  int h_max = 963;
  int K_offset = 20;
  double S_lower = 9.2e-8;
  QuadratureSpec quadrature{};
  int jobs = 1;

  /// Throws std::invalid_argument on H < 1, H >= split_h, split_h > h_max + 1
  /// or K_offset < 0. K_offset = 0 makes the second estimate collapse to the first.
  void validate() const;
  /// [h/3] + K_offset, clamped to h-1.
  int K_for(int h) const;
  /// min(h, [1/delta]).
  int weight_cap(int h) const;
};

enum class TailMethod { first, second };

const char* to_string(TailMethod m);

struct PerHTerm {
  int h = 0;
  TailMethod method = TailMethod::first;
  int K = 0;            // K used by the second estimate, [h/3] for the first
  LogNumber bound;      // c(h, delta)
  LogNumber term;       // min(h, [1/delta]) * 2^h * c(h, delta)
};

struct WeightedTail {
  LogNumber sum;
  std::vector<PerHTerm> terms;
  std::vector<TiltChoice> tilts;  // second method only, in (h, k) order
};

/// Sum over h_from <= h <= h_to of min(h, [1/delta]) 2^h c(h, delta), summed in
/// ascending h. An empty range (h_from > h_to) gives zero. Requires
/// H < h_from and h_to <= h_max otherwise.
WeightedTail weighted_tail(const AggregateConfig& cfg, int h_from, int h_to, TailMethod method);

struct AggregateReport {
  int H = 0;
  LogNumber tail_first;    // h >= split_h, first estimate
  LogNumber tail_second;   // H < h < split_h, second estimate
  LogNumber tail_total;
  LogNumber alpha_proportion;
  LogNumber varpi;         // alpha * delta / 2
  LogNumber count_bound;   // delta * alpha^2, coefficient of the final count
  std::vector<PerHTerm> per_h_terms;
  std::vector<TiltChoice> tilt_choices;
};

/// S_lower did not exceed the tail, so the weight chain gives no positive proportion.
struct AggregateFailure {
  int H = 0;
  LogNumber tail_first;
  LogNumber tail_second;
  LogNumber tail_total;
  LogNumber S_lower;
  std::string reason;
};

using AggregateResult = std::variant<AggregateReport, AggregateFailure>;

AggregateResult final_constants(const AggregateConfig& cfg);

/// One result per H in [H_from, H_to]. The per-h terms are computed once and
/// shared; each tail is re-summed in ascending h, so an entry is identical to
/// final_constants at that H.
std::vector<AggregateResult> sweep_H(const AggregateConfig& cfg, int H_from, int H_to);

/// Entry with the largest varpi, if any entry succeeded.
std::optional<AggregateReport> best_by_varpi(const std::vector<AggregateResult>& sweep);

}  // namespace omegabound
