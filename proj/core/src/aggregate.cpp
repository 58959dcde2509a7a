#include "omegabound/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "omegabound/parallel.hpp"

namespace omegabound {

namespace {

struct HResult {
  PerHTerm term;
  std::vector<TiltChoice> tilts;
};

HResult compute_h(const AggregateConfig& cfg, int h, TailMethod method) {
  HResult r;
  r.term.h = h;
  r.term.method = method;
  if (method == TailMethod::first) {
    r.term.K = h / 3;
    r.term.bound = first_bound(h, cfg.delta, 3);
  } else {
    r.term.K = cfg.K_for(h);
    SecondBound sb = second_bound_detailed(h, cfg.delta, r.term.K, cfg.quadrature);
    r.term.bound = sb.value;
    r.tilts = std::move(sb.tilts);
  }
  const LogNumber weight = LogNumber::from_log(std::log(static_cast<double>(cfg.weight_cap(h))) +
                                               h * std::log(2.0));
  r.term.term = weight * r.term.bound;
  return r;
}

std::vector<HResult> compute_range(const AggregateConfig& cfg, int h_from, int h_to, TailMethod method) {
  if (h_from > h_to) return {};
  std::vector<HResult> out(static_cast<std::size_t>(h_to - h_from + 1));
  parallel_for(out.size(), cfg.jobs, [&](std::size_t i) {
    out[i] = compute_h(cfg, h_from + static_cast<int>(i), method);
  });
  return out;
}

// Sums the terms with h > H in ascending h.
WeightedTail sum_above(const std::vector<HResult>& results, int H) {
  WeightedTail tail;
  for (const auto& r : results) {
    if (r.term.h <= H) continue;
    tail.sum = tail.sum + r.term.term;
    tail.terms.push_back(r.term);
    tail.tilts.insert(tail.tilts.end(), r.tilts.begin(), r.tilts.end());
  }
  return tail;
}

AggregateResult assemble(const AggregateConfig& cfg, int H, const WeightedTail& first,
                         const WeightedTail& second) {
  const LogNumber total = first.sum + second.sum;
  const LogNumber s_lower = LogNumber::from_real(cfg.S_lower);
  const LogNumber margin = s_lower - total;
  if (margin.sign() <= 0) {
    return AggregateFailure{H, first.sum, second.sum, total, s_lower,
                            "S_lower " + to_scientific(s_lower) + " does not exceed tail_total " +
                                to_scientific(total) + ": no positive proportion"};
  }
  AggregateReport report;
  report.H = H;
  report.tail_first = first.sum;
  report.tail_second = second.sum;
  report.tail_total = total;
  const double log_weight = -H * std::log(2.0) - std::log(static_cast<double>(cfg.weight_cap(H)));
  report.alpha_proportion = LogNumber::from_log(log_weight) * margin;
  const LogNumber delta = LogNumber::from_log(std::log(static_cast<double>(cfg.delta.num())) -
                                              std::log(static_cast<double>(cfg.delta.den())));
  report.varpi = report.alpha_proportion * delta / LogNumber::from_real(2.0);
  report.count_bound = delta * ln_pow_int(report.alpha_proportion, 2);
  report.per_h_terms = second.terms;
  report.per_h_terms.insert(report.per_h_terms.end(), first.terms.begin(), first.terms.end());
  report.tilt_choices = second.tilts;
  return report;
}

void check_range(const AggregateConfig& cfg, int h_from, int h_to) {
  if (h_from > h_to) return;
  if (h_from <= cfg.H) throw std::invalid_argument("weighted_tail: h_from must exceed H");
  if (h_to > cfg.h_max) throw std::invalid_argument("weighted_tail: h_to must not exceed h_max");
}

}  // namespace

void AggregateConfig::validate() const {
  if (!(delta.num() > 0 && delta.num() < delta.den())) {
    throw std::invalid_argument("AggregateConfig: delta must lie in (0, 1)");
  }
  if (H < 1) throw std::invalid_argument("AggregateConfig: H must be at least 1");
  if (H >= split_h) throw std::invalid_argument("AggregateConfig: H must be below split_h");
  if (split_h > h_max + 1) throw std::invalid_argument("AggregateConfig: split_h must be at most h_max + 1");
  if (K_offset < 0) throw std::invalid_argument("AggregateConfig: K_offset must be non-negative");
  quadrature.validate();
}

int AggregateConfig::K_for(int h) const { return std::min(h / 3 + K_offset, h - 1); }

int AggregateConfig::weight_cap(int h) const {
  const std::int64_t cap = delta.floor_reciprocal();
  return static_cast<int>(std::min<std::int64_t>(h, cap));
}

const char* to_string(TailMethod m) { return m == TailMethod::first ? "first" : "second"; }

WeightedTail weighted_tail(const AggregateConfig& cfg, int h_from, int h_to, TailMethod method) {
  cfg.validate();
  check_range(cfg, h_from, h_to);
  return sum_above(compute_range(cfg, h_from, h_to, method), h_from - 1);
}

AggregateResult final_constants(const AggregateConfig& cfg) {
  cfg.validate();
  const WeightedTail first = weighted_tail(cfg, cfg.split_h, cfg.h_max, TailMethod::first);
  const WeightedTail second = weighted_tail(cfg, cfg.H + 1, cfg.split_h - 1, TailMethod::second);
  return assemble(cfg, cfg.H, first, second);
}

std::vector<AggregateResult> sweep_H(const AggregateConfig& cfg, int H_from, int H_to) {
  std::vector<AggregateResult> out;
  if (H_from > H_to) return out;
  AggregateConfig lowest = cfg;
  lowest.H = H_from;
  lowest.validate();
  AggregateConfig highest = cfg;
  highest.H = H_to;
  highest.validate();

  const auto firsts = compute_range(cfg, cfg.split_h, cfg.h_max, TailMethod::first);
  const auto seconds = compute_range(cfg, H_from + 1, cfg.split_h - 1, TailMethod::second);
  const WeightedTail first = sum_above(firsts, cfg.split_h - 1);
  for (int H = H_from; H <= H_to; ++H) {
    AggregateConfig at = cfg;
    at.H = H;
    out.push_back(assemble(at, H, first, sum_above(seconds, H)));
  }
  return out;
}

std::optional<AggregateReport> best_by_varpi(const std::vector<AggregateResult>& sweep) {
  std::optional<AggregateReport> best;
  for (const auto& r : sweep) {
    const auto* rep = std::get_if<AggregateReport>(&r);
    if (rep && (!best || rep->varpi > best->varpi)) best = *rep;
  }
  return best;
}

}  // namespace omegabound
