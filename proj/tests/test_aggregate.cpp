#include <doctest.h>

#include <cmath>

#include "omegabound/aggregate.hpp"
#include "omegabound/parallel.hpp"

using namespace omegabound;

namespace {

AggregateConfig defaults() {
  AggregateConfig cfg;
  cfg.jobs = default_jobs();
  return cfg;
}

}  // namespace

TEST_CASE("AggregateConfig") {
  AggregateConfig cfg = defaults();
  CHECK_NOTHROW(cfg.validate());
  CHECK(cfg.K_for(133) == 64);
  CHECK(cfg.K_for(20) == 19);
  CHECK(cfg.weight_cap(320) == 320);
  CHECK(cfg.weight_cap(321) == 321);
  CHECK(cfg.weight_cap(322) == 321);
  CHECK(cfg.weight_cap(963) == 321);
  AggregateConfig bad = cfg;
  bad.H = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.H = 190;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.split_h = 965;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("weighted_tail") {
  const AggregateConfig cfg = defaults();
  SUBCASE("empty range") {
    const WeightedTail t = weighted_tail(cfg, 200, 199, TailMethod::first);
    CHECK(t.sum.is_zero());
    CHECK(t.terms.empty());
  }
  SUBCASE("range checks") {
    CHECK_THROWS_AS(weighted_tail(cfg, 132, 140, TailMethod::first), std::invalid_argument);
    CHECK_THROWS_AS(weighted_tail(cfg, 200, 964, TailMethod::first), std::invalid_argument);
  }
  SUBCASE("first estimate above 190 and the kink at 321") {
    const WeightedTail t = weighted_tail(cfg, 190, 963, TailMethod::first);
    CHECK(t.sum < LogNumber::from_real(9.2e-10));
    CHECK(t.terms.size() == 774u);
    for (const auto& term : t.terms) {
      const double weight = std::min(term.h, 321) * std::pow(2.0, term.h);
      if (!term.bound.is_zero()) {
        CHECK(term.term.log_mag() == doctest::Approx(std::log(weight) + term.bound.log_mag()).epsilon(1e-12));
      }
    }
    const auto& at321 = t.terms[321 - 190];
    const auto& at322 = t.terms[322 - 190];
    CHECK(at321.h == 321);
    CHECK(at321.term.log_mag() - at321.bound.log_mag() == doctest::Approx(std::log(321.0) + 321 * std::log(2.0)));
    CHECK(at322.term.log_mag() - at322.bound.log_mag() == doctest::Approx(std::log(321.0) + 322 * std::log(2.0)));
    const auto& at320 = t.terms[320 - 190];
    CHECK(at320.term.log_mag() - at320.bound.log_mag() == doctest::Approx(std::log(320.0) + 320 * std::log(2.0)));
  }
  SUBCASE("terms beyond 963 vanish") {
    AggregateConfig wide = cfg;
    wide.h_max = 1100;
    const WeightedTail t = weighted_tail(wide, 950, 1100, TailMethod::first);
    for (const auto& term : t.terms) {
      if (term.h > 963) {
        CHECK(term.term.is_zero());
      } else if (term.h < 963) {
        CHECK_FALSE(term.term.is_zero());
      }
    }
  }
  SUBCASE("second method with K = [h/3] reproduces the first method termwise") {
    AggregateConfig collapsed = cfg;
    collapsed.K_offset = 0;
    collapsed.H = 100;
    const WeightedTail second = weighted_tail(collapsed, 101, 300, TailMethod::second);
    const WeightedTail first = weighted_tail(collapsed, 101, 300, TailMethod::first);
    REQUIRE(second.terms.size() == first.terms.size());
    for (std::size_t i = 0; i < first.terms.size(); ++i) {
      CHECK(second.terms[i].K == first.terms[i].K);
      CHECK(relative_difference(second.terms[i].term, first.terms[i].term) < 1e-9);
    }
    AggregateConfig negative = cfg;
    negative.K_offset = -1;
    CHECK_THROWS_AS(negative.validate(), std::invalid_argument);
  }
}

TEST_CASE("split invariance") {
  const AggregateConfig cfg = defaults();
  const WeightedTail whole = weighted_tail(cfg, 190, 963, TailMethod::first);
  const WeightedTail left = weighted_tail(cfg, 190, 400, TailMethod::first);
  const WeightedTail right = weighted_tail(cfg, 401, 963, TailMethod::first);
  CHECK(relative_difference(whole.sum, left.sum + right.sum) < 1e-9);

  const WeightedTail mid = weighted_tail(cfg, 133, 189, TailMethod::second);
  const WeightedTail mid_left = weighted_tail(cfg, 133, 160, TailMethod::second);
  const WeightedTail mid_right = weighted_tail(cfg, 161, 189, TailMethod::second);
  CHECK(relative_difference(mid.sum, mid_left.sum + mid_right.sum) < 1e-9);
  CHECK(relative_difference(mid.sum + whole.sum, (mid_left.sum + mid_right.sum) + (left.sum + right.sum)) < 1e-9);
}

TEST_CASE("final_constants") {
  const AggregateConfig cfg = defaults();
  const AggregateResult result = final_constants(cfg);
  REQUIRE(std::holds_alternative<AggregateReport>(result));
  const auto& r = std::get<AggregateReport>(result);
  CHECK(r.H == 132);
  CHECK(relative_difference(r.tail_total, r.tail_first + r.tail_second) < 1e-9);
  CHECK(r.tail_first < LogNumber::from_real(9.2e-10));
  CHECK(r.tail_second < LogNumber::from_real(3.6e-8));
  CHECK(r.tail_total < LogNumber::from_real(3.7e-8));
  CHECK(r.alpha_proportion >= LogNumber::from_real(7.7e-50));
  CHECK(r.varpi >= LogNumber::from_real(1e-52));
  CHECK(std::fabs(r.varpi.log_mag() - (r.alpha_proportion.log_mag() + std::log(1.0 / 321.0) - std::log(2.0))) < 1e-12);
  CHECK(std::fabs(r.count_bound.log_mag() - (2 * r.alpha_proportion.log_mag() - std::log(321.0))) < 1e-12);
  // 2^H * 132 * alpha + tail_total recovers S_lower.
  const LogNumber recovered = r.alpha_proportion * LogNumber::from_log(132 * std::log(2.0) + std::log(132.0)) + r.tail_total;
  CHECK(std::fabs(recovered.to_real() / 9.2e-8 - 1.0) < 1e-9);
  CHECK(r.per_h_terms.size() == 57u + 774u);
  CHECK(r.per_h_terms.front().h == 133);
  CHECK(r.per_h_terms.front().method == TailMethod::second);
  CHECK(r.per_h_terms.back().h == 963);
  CHECK(r.tilt_choices.size() > 57u * 19u);
}

TEST_CASE("final_constants failure state") {
  AggregateConfig cfg = defaults();
  cfg.S_lower = 0.0;
  CHECK(std::holds_alternative<AggregateFailure>(final_constants(cfg)));

  // S_lower exactly equal to the tail: zero margin.
  const auto ok = std::get<AggregateReport>(final_constants(defaults()));
  cfg.S_lower = ok.tail_total.to_real();
  const AggregateResult equal = final_constants(cfg);
  REQUIRE(std::holds_alternative<AggregateFailure>(equal));
  CHECK(!std::get<AggregateFailure>(equal).reason.empty());
}

TEST_CASE("sweep_H") {
  const AggregateConfig cfg = defaults();
  const auto sweep = sweep_H(cfg, 120, 140);
  REQUIRE(sweep.size() == 21u);
  const auto at132 = std::get<AggregateReport>(sweep[12]);
  CHECK(at132.H == 132);
  const auto best = best_by_varpi(sweep);
  REQUIRE(best.has_value());
  CHECK(best->varpi >= at132.varpi);
  MESSAGE("H maximising varpi over 120..140: " << best->H);

  const auto single = sweep_H(cfg, 132, 132);
  REQUIRE(single.size() == 1u);
  const auto direct = std::get<AggregateReport>(final_constants(cfg));
  const auto& swept = std::get<AggregateReport>(single.front());
  CHECK(swept.tail_total == direct.tail_total);
  CHECK(swept.alpha_proportion == direct.alpha_proportion);
  CHECK(swept.varpi == direct.varpi);
  CHECK(at132.varpi == direct.varpi);

  AggregateConfig none = cfg;
  none.S_lower = 0.0;
  for (const auto& entry : sweep_H(none, 130, 134)) CHECK(std::holds_alternative<AggregateFailure>(entry));
}
