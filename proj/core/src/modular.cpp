#include "omegabound/modular.hpp"

#include "montgomery.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace omegabound {

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 pow_mod(u64 base, u64 exp, u64 m) {
  if (m & 1) {
    const detail::Mont64 mont(m);
    return mont.from(detail::mont_pow(mont, mont.to(base), exp));
  }
  u64 result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

u128 mul_mod(u128 a, u128 b, u128 m) {
  if (m <= UINT64_MAX) return mul_mod(static_cast<u64>(a % m), static_cast<u64>(b % m), static_cast<u64>(m));
  a %= m;
  b %= m;
  if (m & 1) {
    // a b R^-1, then times R^2 R^-1.
    const detail::Mont128 mont(m);
    return mont.mul(mont.mul(a, b), mont.r2);
  }
  u128 result = 0;
  // Shift-and-add; m < 2^127 keeps every doubling below 2^128.
  while (b) {
    if (b & 1) {
      result += a;
      if (result >= m) result -= m;
    }
    a <<= 1;
    if (a >= m) a -= m;
    b >>= 1;
  }
  return result;
}

u128 pow_mod(u128 base, u128 exp, u128 m) {
  if (m <= UINT64_MAX && exp <= UINT64_MAX) {
    return pow_mod(static_cast<u64>(base % m), static_cast<u64>(exp), static_cast<u64>(m));
  }
  if (m & 1) {
    const detail::Mont128 mont(m);
    return mont.from(detail::mont_pow(mont, mont.to(base), exp));
  }
  u128 result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

namespace {

// Strong probable-prime test to base a, for odd n > 2 with n - 1 = d 2^s, in
// Montgomery form.
template <class M>
bool strong_probable_prime(const M& m, typename M::value_type a, typename M::value_type d, int s) {
  a %= m.n;
  if (a == 0) return true;
  const auto one = m.one();
  const auto minus_one = m.n - one;
  auto x = detail::mont_pow(m, m.to(a), d);
  if (x == one || x == minus_one) return true;
  for (int r = 1; r < s; ++r) {
    x = m.mul(x, x);
    if (x == minus_one) return true;
  }
  return false;
}

template <class M, std::size_t N>
bool miller_rabin(typename M::value_type n, const u64 (&bases)[N]) {
  const M m(n);
  auto d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : bases) {
    if (!strong_probable_prime(m, static_cast<typename M::value_type>(a), d, s)) return false;
  }
  return true;
}

}  // namespace

bool is_prime(u128 n) {
  static constexpr u64 kSmall[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
  // Deterministic for every n < 2^64.
  static constexpr u64 kBases64[] = {2, 325, 9375, 28178, 450775, 9780504, 1795265022};
  // 3317044064679887385961981 is the first strong pseudoprime to all 13 small-prime bases.
  const u128 limit = static_cast<u128>(3317044064679887ULL) * 1000000000ULL + 385961981ULL;
  if (n < 2) return false;
  if (n <= UINT64_MAX) {
    const auto v = static_cast<u64>(n);
    for (u64 p : kSmall) {
      if (v == p) return true;
      if (v % p == 0) return false;
    }
    return miller_rabin<detail::Mont64>(v, kBases64);
  }
  for (u64 p : kSmall) {
    if (n % p == 0) return false;
  }
  if (n >= limit) throw std::domain_error("is_prime: input beyond the deterministic range");
  return miller_rabin<detail::Mont128>(n, kSmall);
}

std::vector<u64> primes_up_to(u64 limit) {
  std::vector<u64> primes;
  if (limit < 2) return primes;
  primes.push_back(2);
  // index i stands for 2i+1
  const u64 half = (limit - 1) / 2;
  std::vector<bool> composite(half + 1, false);
  for (u64 i = 1; i <= half; ++i) {
    if (composite[i]) continue;
    const u64 p = 2 * i + 1;
    primes.push_back(p);
    for (u64 j = (p * p - 1) / 2; j <= half; j += p) composite[j] = true;
  }
  return primes;
}

namespace {

// Cube root of a cubic residue a modulo p == 1 (mod 3). Writes p-1 = 3^s t
// with 3 not dividing t; a^m with 3m == 1 (mod t) is a cube root up to an
// element of the 3-Sylow subgroup, which is then corrected digit by digit.
u64 cube_root_split_prime(u64 a, u64 p) {
  u64 t = p - 1;
  int s = 0;
  while (t % 3 == 0) {
    t /= 3;
    ++s;
  }
  u64 z = 2;
  while (pow_mod(z, (p - 1) / 3, p) == 1) ++z;
  const u64 c = pow_mod(z, t, p);  // generator of the 3-Sylow subgroup
  const u64 m = (t % 3 == 1) ? (2 * t + 1) / 3 : (t + 1) / 3;
  const u64 x = pow_mod(a, m, p);
  // x^3 = a * b with b = a^(3m-1) in the 3-Sylow subgroup.
  const u64 b = mul_mod(mul_mod(x, mul_mod(x, x, p), p), pow_mod(a, p - 2, p), p);

  u64 pow3[64];
  pow3[0] = 1;
  for (int i = 1; i <= s; ++i) pow3[i] = pow3[i - 1] * 3;
  const u64 omega = pow_mod(c, pow3[s - 1], p);
  const u64 omega2 = mul_mod(omega, omega, p);
  const u64 c_inv = pow_mod(c, p - 2, p);

  // Discrete log b = c^e in base 3.
  u64 e = 0;
  for (int i = 0; i < s; ++i) {
    const u64 reduced = mul_mod(b, pow_mod(c_inv, e, p), p);
    const u64 v = pow_mod(reduced, pow3[s - 1 - i], p);
    u64 digit = 0;
    if (v == omega) {
      digit = 1;
    } else if (v == omega2) {
      digit = 2;
    } else if (v != 1) {
      throw std::logic_error("cube_root: non-residue passed to the Sylow step");
    }
    e += digit * pow3[i];
  }
  if (e % 3 != 0) throw std::logic_error("cube_root: input is not a cubic residue");
  // (x * c^(-e/3))^3 = a * b * c^(-e) = a
  return mul_mod(x, pow_mod(c_inv, e / 3, p), p);
}

}  // namespace

int cube_root_count(u64 p) {
  if (p % 3 != 1) return 1;
  return pow_mod(p - 2, (p - 1) / 3, p) == 1 ? 3 : 0;
}

std::vector<u64> cube_roots_of_minus_two(u64 p) {
  if (p < 2) throw std::domain_error("cube_roots_of_minus_two: p must be prime");
  const u64 target = (p - 2 % p) % p;  // -2 mod p
  if (p % 3 != 1) {
    // Cubing is a bijection; its inverse is x -> x^((2p-1)/3).
    return {p == 3 ? 1 : pow_mod(target, (2 * p - 1) / 3, p)};
  }
  if (cube_root_count(p) == 0) return {};
  u64 z = 2;
  while (pow_mod(z, (p - 1) / 3, p) == 1) ++z;
  const u64 omega = pow_mod(z, (p - 1) / 3, p);
  const u64 r = cube_root_split_prime(target, p);
  std::vector<u64> roots{r, mul_mod(r, omega, p), mul_mod(r, mul_mod(omega, omega, p), p)};
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::string to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

}  // namespace omegabound
