#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <stdexcept>

#include "omegabound/bounds.hpp"

namespace omegabound {

namespace {

// Uniform double in [0, 1) from the top 53 bits; avoids the
// implementation-defined behaviour of std::uniform_real_distribution.
double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

McEstimate region_integral_mc(const BoundParams& p, bool with_lower_constraint, std::int64_t samples,
                              std::uint64_t seed) {
  p.validate();
  if (p.k > 8) throw std::domain_error("region_integral_mc: k must be at most 8");
  if (samples < 100000) throw std::domain_error("region_integral_mc: need at least 1e5 samples");
  if (p.empty_region()) return {};

  const int k = p.k;
  const double lo = p.delta.to_double();
  const double hi = p.s_max();
  const double width = hi - lo;
  const double box_volume = std::pow(width, k);
  const double cap = static_cast<double>(p.degree);
  const double tail_weight = static_cast<double>(p.h - k + 1);
  const bool lower_active = with_lower_constraint && k <= p.h - 2 && p.lower_sum() > k * lo;
  const double lower = lower_active ? p.lower_sum() : 0.0;

  std::mt19937_64 rng(seed);
  std::array<double, 8> s{};
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::int64_t i = 0; i < samples; ++i) {
    for (int j = 0; j < k; ++j) s[static_cast<std::size_t>(j)] = lo + width * unit_uniform(rng);
    std::sort(s.begin(), s.begin() + k);
    double head = 0.0;
    double inv_prod = 1.0;
    for (int j = 0; j < k; ++j) {
      inv_prod /= s[static_cast<std::size_t>(j)];
      if (j + 1 < k) head += s[static_cast<std::size_t>(j)];
    }
    const double largest = s[static_cast<std::size_t>(k - 1)];
    const double total = head + largest;
    bool inside = head + tail_weight * largest <= cap;
    if (with_lower_constraint) inside = inside && total <= 1.0 && total >= lower;
    if (!inside) continue;
    sum += inv_prod;
    sum_sq += inv_prod * inv_prod;
  }

  const double n = static_cast<double>(samples);
  const double mean = sum / n;
  const double variance = std::max(0.0, sum_sq / n - mean * mean);
  double factorial = 1.0;
  for (int j = 2; j <= k; ++j) factorial *= j;
  const double scale = box_volume / factorial;
  return {mean * scale, std::sqrt(variance / (n - 1.0)) * scale};
}

}  // namespace omegabound
