#include <stdexcept>

#include "omegabound/empirical.hpp"

namespace omegabound {

namespace {

// Roots of x^3 + 2 modulo p^e, lifted from the roots mod p^(e-1). A root r
// mod p^j extends to r + t p^j for those t in [0, p) that stay roots; this
// covers the singular primes 2 and 3 as well as the Hensel case.
std::int64_t prime_power_count(u64 p, int e) {
  std::vector<u64> roots = cube_roots_of_minus_two(p);
  u64 modulus = p;
  for (int j = 1; j < e && !roots.empty(); ++j) {
    const u64 next = modulus * p;
    std::vector<u64> lifted;
    for (u64 r : roots) {
      for (u64 t = 0; t < p; ++t) {
        const u64 x = r + t * modulus;
        const u64 v = (mul_mod(mul_mod(x, x, next), x, next) + 2) % next;
        if (v == 0) lifted.push_back(x);
      }
    }
    roots = std::move(lifted);
    modulus = next;
  }
  return static_cast<std::int64_t>(roots.size());
}

}  // namespace

std::int64_t nu(std::uint64_t d) {
  if (d == 0) throw std::domain_error("nu: d must be positive");
  if (d > 1000000000000ULL) throw std::domain_error("nu: d above 1e12");
  std::int64_t result = 1;
  for (u64 p = 2; p * p <= d; ++p) {
    if (d % p != 0) continue;
    int e = 0;
    while (d % p == 0) {
      d /= p;
      ++e;
    }
    result *= prime_power_count(p, e);
    if (result == 0) return 0;
  }
  if (d > 1) result *= cube_root_count(d);
  return result;
}

std::int64_t nu_brute_force(std::uint64_t d) {
  if (d == 0) throw std::domain_error("nu_brute_force: d must be positive");
  std::int64_t count = 0;
  for (u64 x = 0; x < d; ++x) {
    if ((mul_mod(mul_mod(x, x, d), x, d) + 2) % d == 0) ++count;
  }
  return count;
}

}  // namespace omegabound
