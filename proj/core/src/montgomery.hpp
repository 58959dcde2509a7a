#pragma once

// Montgomery arithmetic modulo an odd n, with R = 2^64 (Mont64) or R = 2^128
// (Mont128). Residues live in Montgomery form x R mod n; multiplication costs
// a few word products instead of a hardware (or shift-add) division.

#include "omegabound/modular.hpp"

namespace omegabound::detail {

struct Mont64 {
  using value_type = u64;

  u64 n;
  u64 inv;  // n^-1 mod 2^64
  u64 r1;   // R mod n
  u64 r2;   // R^2 mod n

  explicit Mont64(u64 modulus) : n(modulus), inv(modulus) {
    for (int i = 0; i < 5; ++i) inv *= 2 - n * inv;
    r1 = static_cast<u64>((static_cast<u128>(1) << 64) % n);
    r2 = static_cast<u64>(static_cast<u128>(r1) * r1 % n);
  }

  // T R^-1 mod n for T < n R: hi(T) - hi(m n) with m = lo(T) n^-1, since the
  // low words of T and m n agree.
  u64 reduce(u128 t) const {
    const u64 m = static_cast<u64>(t) * inv;
    const u64 hi = static_cast<u64>(t >> 64);
    const u64 mn = static_cast<u64>((static_cast<u128>(m) * n) >> 64);
    return hi >= mn ? hi - mn : hi + (n - mn);
  }
  u64 mul(u64 a, u64 b) const { return reduce(static_cast<u128>(a) * b); }
  u64 add(u64 a, u64 b) const {
    const u64 s = a + b;
    return (s >= n || s < a) ? s - n : s;
  }
  u64 to(u64 x) const { return mul(x % n, r2); }
  u64 from(u64 x) const { return reduce(x); }
  u64 one() const { return r1; }
};

struct Mont128 {
  using value_type = u128;

  u128 n;
  u128 inv;  // n^-1 mod 2^128
  u128 r1;   // R mod n
  u128 r2;   // R^2 mod n

  explicit Mont128(u128 modulus) : n(modulus), inv(modulus) {
    for (int i = 0; i < 6; ++i) inv *= 2 - n * inv;
    r1 = (0 - n) % n;
    r2 = r1;
    for (int i = 0; i < 128; ++i) r2 = add(r2, r2);
  }

  struct Wide {
    u128 hi;
    u128 lo;
  };

  static Wide wide_mul(u128 a, u128 b) {
    const u128 a0 = static_cast<u64>(a);
    const u128 a1 = a >> 64;
    const u128 b0 = static_cast<u64>(b);
    const u128 b1 = b >> 64;
    const u128 p00 = a0 * b0;
    const u128 p01 = a0 * b1;
    const u128 p10 = a1 * b0;
    const u128 p11 = a1 * b1;
    const u128 mid = (p00 >> 64) + static_cast<u64>(p01) + static_cast<u64>(p10);
    return {p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64), static_cast<u64>(p00) | (mid << 64)};
  }

  u128 mul(u128 a, u128 b) const {
    const Wide t = wide_mul(a, b);
    const u128 m = t.lo * inv;
    const u128 mn = wide_mul(m, n).hi;
    return t.hi >= mn ? t.hi - mn : t.hi + (n - mn);
  }
  // Requires n < 2^127 so the sum cannot wrap.
  u128 add(u128 a, u128 b) const {
    const u128 s = a + b;
    return s >= n ? s - n : s;
  }
  u128 to(u128 x) const { return mul(x % n, r2); }
  u128 from(u128 x) const { return mul(x, 1); }
  u128 one() const { return r1; }
};

template <class M>
typename M::value_type mont_pow(const M& m, typename M::value_type base, typename M::value_type exp) {
  auto result = m.one();
  while (exp) {
    if (exp & 1) result = m.mul(result, base);
    base = m.mul(base, base);
    exp >>= 1;
  }
  return result;
}

}  // namespace omegabound::detail
