#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace omegabound {

using u64 = std::uint64_t;
__extension__ typedef unsigned __int128 u128;

u64 mul_mod(u64 a, u64 b, u64 m);
u64 pow_mod(u64 base, u64 exp, u64 m);
/// a*b mod m for moduli up to 2^127.
u128 mul_mod(u128 a, u128 b, u128 m);
u128 pow_mod(u128 base, u128 exp, u128 m);

/// Deterministic Miller-Rabin. The first 13 prime bases are a proof of
/// primality below 3.3e24, which covers every value factored here; larger
/// inputs throw std::domain_error.
bool is_prime(u128 n);

/// Primes up to and including limit, by an odd-only sieve of Eratosthenes.
std::vector<u64> primes_up_to(u64 limit);

/// All x in [0, p) with x^3 == -2 (mod p), ascending, for prime p.
/// p = 2, 3 and p == 2 (mod 3) give the single root (-2)^((2p-1)/3); for
/// p == 1 (mod 3) there are 0 or 3 roots, found by a cube-root analogue of
/// Tonelli-Shanks.
std::vector<u64> cube_roots_of_minus_two(u64 p);

/// Number of roots mod p without computing them.
int cube_root_count(u64 p);

std::string to_string(u128 v);

}  // namespace omegabound
