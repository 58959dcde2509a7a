#include <cmath>
#include <stdexcept>

#include "omegabound/empirical.hpp"

namespace omegabound {

std::vector<std::uint64_t> decade_schedule(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t x = 10; x < limit; x *= 10) out.push_back(x);
  if (limit >= 2) out.push_back(limit);
  return out;
}

MertensResult mertens_check(const std::vector<std::uint64_t>& checkpoints) {
  MertensResult result;
  if (checkpoints.empty()) return result;
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (checkpoints[i] < 2) throw std::invalid_argument("mertens_check: checkpoints must be at least 2");
    if (i > 0 && checkpoints[i] <= checkpoints[i - 1]) {
      throw std::invalid_argument("mertens_check: checkpoints must be strictly increasing");
    }
  }
  if (checkpoints.back() > 100000000ULL) throw std::invalid_argument("mertens_check: limit above 1e8");

  const auto primes = primes_up_to(checkpoints.back());
  double sum = 0.0;
  std::uint64_t nu_total = 0;
  std::size_t next = 0;
  auto flush_until = [&](std::uint64_t bound) {
    while (next < checkpoints.size() && checkpoints[next] < bound) {
      const auto x = checkpoints[next++];
      result.points.push_back({x, sum, sum - std::log(static_cast<double>(x))});
    }
  };
  for (std::uint64_t p : primes) {
    flush_until(p);
    const int v = cube_root_count(p);
    nu_total += static_cast<std::uint64_t>(v);
    sum += v * std::log(static_cast<double>(p)) / static_cast<double>(p);
  }
  flush_until(UINT64_MAX);
  result.prime_count = primes.size();
  result.mean_nu = primes.empty() ? 0.0 : static_cast<double>(nu_total) / static_cast<double>(primes.size());
  return result;
}

}  // namespace omegabound
