#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "omegabound/modular.hpp"

namespace omegabound {

/// Number of residues n mod d with n^3 + 2 == 0 (mod d). Multiplicative over
/// the prime-power factorisation of d; each prime power is handled by lifting
/// roots mod p one power at a time. Requires 1 <= d <= 1e12.
std::int64_t nu(std::uint64_t d);

/// nu by direct enumeration of all residues; O(d). Reference implementation.
std::int64_t nu_brute_force(std::uint64_t d);

/// Factorisation of n^3 + 2 with prime factors listed ascending.
struct FactorProfile {
  std::int64_t n = 0;
  u128 value = 0;
  std::vector<std::pair<u128, int>> factors;

  /// Prime factors >= threshold, counted with multiplicity.
  int omega_above(u128 threshold) const;
  /// Product of prime^multiplicity.
  u128 product() const;

  friend bool operator==(const FactorProfile&, const FactorProfile&) = default;
};

/// n ranges over (x_min, x_max]; threshold is the X^delta cut-off.
struct RangeJob {
  std::int64_t x_min = 0;
  std::int64_t x_max = 0;
  u128 threshold = 2;
  int h = 1;
  std::int64_t segment_size = 1 << 16;
  int jobs = 1;

  /// Throws std::invalid_argument unless 0 <= x_min < x_max <= 1e7,
  /// threshold >= 2, h >= 0 and segment_size >= 1.
  void validate() const;
};

/// A residual cofactor that could be neither certified prime nor split.
class FactorizationError : public std::runtime_error {
 public:
  FactorizationError(std::int64_t n, const std::string& what)
      : std::runtime_error(what), n_(n) {}
  std::int64_t n() const { return n_; }

 private:
  std::int64_t n_;
};

/// Sorted table of the roots of x^3 + 2 modulo every prime up to a limit.
struct RootTable {
  std::uint64_t prime_limit = 0;
  std::vector<std::uint64_t> primes;
  std::vector<std::uint8_t> counts;
  std::vector<std::uint64_t> roots;   // flattened
  std::vector<std::uint32_t> offsets; // roots of primes[i] start at offsets[i]

  static RootTable build(std::uint64_t prime_limit);

  /// Binary cache: 16-byte header ("N3RT", u32 version, u64 prime limit) then
  /// per prime: u64 p, u8 root count, u64 roots; all little-endian.
  void save(const std::filesystem::path& path) const;
  /// Throws std::runtime_error on a malformed file.
  static RootTable load(const std::filesystem::path& path);
  /// Loads path if it exists and covers prime_limit, else builds and writes it.
  static RootTable load_or_build(const std::filesystem::path& path, std::uint64_t prime_limit);

  friend bool operator==(const RootTable&, const RootTable&) = default;
};

inline constexpr std::uint32_t kRootTableVersion = 1;

using ProfileSink = std::function<void(const FactorProfile&)>;
/// Called once per completed segment with (segment index, n range end).
using ProgressSink = std::function<void(std::size_t, std::int64_t)>;

/// Exact factorisation of n^3 + 2 for every n in the job's range, delivered to
/// sink in increasing n. Segments are sieved independently: each prime p up to
/// x_max with roots r of x^3 + 2 is stripped from the n == r (mod p)
/// progressions, and the remaining cofactor (at most two primes above x_max)
/// is certified prime or split by Pollard-Brent rho. Throws FactorizationError
/// naming n if a cofactor resists.
void factor_range(const RangeJob& job, const ProfileSink& sink, const RootTable* table = nullptr,
                  const ProgressSink& progress = {});
std::vector<FactorProfile> factor_range(const RangeJob& job, const RootTable* table = nullptr);

/// #{n in (x_min, x_max] : omega_above(threshold) >= h}.
std::int64_t empirical_T(const RangeJob& job, const RootTable* table = nullptr,
                         const ProgressSink& progress = {});

struct MertensPoint {
  std::uint64_t x = 0;
  double sum = 0.0;        // sum over p <= x of nu(p) log p / p
  double deviation = 0.0;  // sum - log x
};

struct MertensResult {
  std::vector<MertensPoint> points;
  std::uint64_t prime_count = 0;  // primes up to the last checkpoint
  double mean_nu = 0.0;
};

/// Checkpoints 10, 100, ... below limit, then limit itself.
std::vector<std::uint64_t> decade_schedule(std::uint64_t limit);

/// Evaluates the running sum at each checkpoint (ascending, each <= 1e8).
MertensResult mertens_check(const std::vector<std::uint64_t>& checkpoints);

/// Splits a composite n into two non-trivial factors. Exposed for testing.
u128 pollard_brent(u128 n, std::uint64_t seed = 1);

}  // namespace omegabound
