#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "omegabound/empirical.hpp"
#include "omegabound/parallel.hpp"
#include "montgomery.hpp"

namespace omegabound {

namespace {

u128 gcd128(u128 a, u128 b) {
  while (b) {
    const u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u128 gcd_any(u128 a, u128 b) {
  if (a <= UINT64_MAX && b <= UINT64_MAX) return std::gcd(static_cast<u64>(a), static_cast<u64>(b));
  return gcd128(a, b);
}

// Brent's cycle-finding rho on x -> x^2 + c, run in Montgomery form: the
// representation scales every residue by the unit R, so the gcds are unchanged.
template <class M>
u128 brent(const M& m, std::uint64_t seed) {
  using U = typename M::value_type;
  const U n = m.n;
  const U c = m.to(static_cast<U>(seed % (n - 1) + 1));
  U y = m.to(static_cast<U>(seed * 0x9E3779B97F4A7C15ULL) % n);
  U g = 1;
  U q = m.one();
  U x = 0;
  U ys = 0;
  const std::uint64_t batch = 128;
  auto step = [&](U v) { return m.add(m.mul(v, v), c); };
  for (std::uint64_t r = 1; g == 1; r <<= 1) {
    x = y;
    for (std::uint64_t i = 0; i < r; ++i) y = step(y);
    for (std::uint64_t k = 0; k < r && g == 1; k += batch) {
      ys = y;
      for (std::uint64_t i = 0; i < std::min(batch, r - k); ++i) {
        y = step(y);
        q = m.mul(q, x > y ? x - y : y - x);
      }
      g = static_cast<U>(gcd_any(q, n));
    }
    if (r > (1ULL << 40)) return 0;
  }
  if (g == n) {
    do {
      ys = step(ys);
      g = static_cast<U>(gcd_any(x > ys ? x - ys : ys - x, n));
    } while (g == 1);
  }
  return g;
}

u128 isqrt128(u128 n) {
  u128 r = static_cast<u128>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

u128 cube_plus_two(std::int64_t n) {
  const u128 v = static_cast<u128>(n);
  return v * v * v + 2;
}

// Appends the prime factors of c, which has no prime factor up to limit. Such
// a c below limit^2 is prime outright.
void split_cofactor(std::int64_t n, u128 c, std::uint64_t limit, std::vector<std::pair<u128, int>>& out,
                    int depth = 0) {
  if (c == 1) return;
  if (depth > 8) throw FactorizationError(n, "factor_range: cofactor recursion too deep for n = " + std::to_string(n));
  if (c <= static_cast<u128>(limit) * limit || is_prime(c)) {
    out.emplace_back(c, 1);
    return;
  }
  const u128 root = isqrt128(c);
  if (root * root == c) {
    std::vector<std::pair<u128, int>> half;
    split_cofactor(n, root, limit, half, depth + 1);
    for (auto& [p, e] : half) out.emplace_back(p, 2 * e);
    return;
  }
  u128 f = 0;
  for (std::uint64_t seed = 1; seed <= 16 && (f == 0 || f == c); ++seed) f = pollard_brent(c, seed);
  if (f == 0 || f == c || f == 1) {
    throw FactorizationError(n, "factor_range: could not split cofactor " + to_string(c) + " of n^3+2 for n = " +
                                    std::to_string(n));
  }
  split_cofactor(n, f, limit, out, depth + 1);
  split_cofactor(n, c / f, limit, out, depth + 1);
}

void normalise(std::vector<std::pair<u128, int>>& factors) {
  std::sort(factors.begin(), factors.end());
  std::vector<std::pair<u128, int>> merged;
  for (const auto& f : factors) {
    if (!merged.empty() && merged.back().first == f.first) {
      merged.back().second += f.second;
    } else {
      merged.push_back(f);
    }
  }
  factors = std::move(merged);
}

struct Sieve {
  const RootTable& table;
  std::uint64_t limit;  // every prime up to here is stripped
};

// Strips every tabled prime from n^3 + 2 over [first, last]. residual[i] and
// small[i] describe n = first + i.
void strip_small_primes(const Sieve& sieve, std::int64_t first, std::int64_t last, std::vector<u128>& residual,
                        std::vector<std::vector<std::pair<u128, int>>>* small,
                        std::vector<int>* small_count, u128 threshold) {
  const std::size_t len = static_cast<std::size_t>(last - first + 1);
  residual.resize(len);
  for (std::size_t i = 0; i < len; ++i) residual[i] = cube_plus_two(first + static_cast<std::int64_t>(i));
  if (small) small->assign(len, {});
  if (small_count) small_count->assign(len, 0);

  const auto& t = sieve.table;
  const auto ufirst = static_cast<std::uint64_t>(first);
  for (std::size_t pi = 0; pi < t.primes.size(); ++pi) {
    const std::uint64_t p = t.primes[pi];
    if (p > sieve.limit) break;
    for (std::uint32_t ri = t.offsets[pi]; ri < t.offsets[pi] + t.counts[pi]; ++ri) {
      const std::uint64_t r = t.roots[ri];
      const std::uint64_t start = (r + p - ufirst % p) % p;
      for (std::uint64_t i = start; i < len; i += p) {
        int e = 0;
        u128& v = residual[i];
        if (v <= UINT64_MAX) {
          std::uint64_t w = static_cast<std::uint64_t>(v);
          while (w % p == 0) {
            w /= p;
            ++e;
          }
          v = w;
        } else {
          while (v % p == 0) {
            v /= p;
            ++e;
          }
        }
        if (small) (*small)[i].emplace_back(p, e);
        if (small_count && p >= threshold) (*small_count)[i] += e;
      }
    }
  }
}

struct SegmentPlan {
  std::vector<std::pair<std::int64_t, std::int64_t>> segments;  // inclusive n ranges
};

SegmentPlan plan_segments(const RangeJob& job) {
  SegmentPlan plan;
  for (std::int64_t lo = job.x_min + 1; lo <= job.x_max; lo += job.segment_size) {
    plan.segments.emplace_back(lo, std::min(job.x_max, lo + job.segment_size - 1));
  }
  return plan;
}

const RootTable& table_for(const RangeJob& job, const RootTable* table, RootTable& storage) {
  const auto need = static_cast<std::uint64_t>(std::max<std::int64_t>(job.x_max, 2));
  if (table && table->prime_limit >= need) return *table;
  storage = RootTable::build(need);
  return storage;
}

std::vector<FactorProfile> factor_segment(const Sieve& sieve, std::int64_t first, std::int64_t last) {
  std::vector<u128> residual;
  std::vector<std::vector<std::pair<u128, int>>> small;
  strip_small_primes(sieve, first, last, residual, &small, nullptr, 0);
  std::vector<FactorProfile> out(residual.size());
  for (std::size_t i = 0; i < residual.size(); ++i) {
    FactorProfile& prof = out[i];
    prof.n = first + static_cast<std::int64_t>(i);
    prof.value = cube_plus_two(prof.n);
    prof.factors = std::move(small[i]);
    split_cofactor(prof.n, residual[i], sieve.limit, prof.factors);
    normalise(prof.factors);
    if (prof.product() != prof.value) {
      throw FactorizationError(prof.n, "factor_range: factors do not reconstruct n^3+2 for n = " +
                                           std::to_string(prof.n));
    }
  }
  return out;
}

}  // namespace

int FactorProfile::omega_above(u128 threshold) const {
  int count = 0;
  for (const auto& [p, e] : factors) {
    if (p >= threshold) count += e;
  }
  return count;
}

u128 FactorProfile::product() const {
  u128 v = 1;
  for (const auto& [p, e] : factors) {
    for (int i = 0; i < e; ++i) v *= p;
  }
  return v;
}

void RangeJob::validate() const {
  if (x_min < 0 || x_min >= x_max) throw std::invalid_argument("RangeJob: need 0 <= x_min < x_max");
  if (x_max > 10000000) throw std::invalid_argument("RangeJob: x_max above 1e7");
  if (threshold < 2) throw std::invalid_argument("RangeJob: threshold must be at least 2");
  if (h < 0) throw std::invalid_argument("RangeJob: h must be non-negative");
  if (segment_size < 1) throw std::invalid_argument("RangeJob: segment_size must be positive");
}

u128 pollard_brent(u128 n, std::uint64_t seed) {
  if (n % 2 == 0) return 2;
  if (n <= UINT64_MAX) return brent(detail::Mont64(static_cast<u64>(n)), seed);
  return brent(detail::Mont128(n), seed);
}

void factor_range(const RangeJob& job, const ProfileSink& sink, const RootTable* table,
                  const ProgressSink& progress) {
  job.validate();
  RootTable storage;
  const Sieve sieve{table_for(job, table, storage), static_cast<std::uint64_t>(std::max<std::int64_t>(job.x_max, 2))};
  const SegmentPlan plan = plan_segments(job);
  const auto batch = static_cast<std::size_t>(std::max(1, job.jobs));
  for (std::size_t base = 0; base < plan.segments.size(); base += batch) {
    const std::size_t count = std::min(batch, plan.segments.size() - base);
    std::vector<std::vector<FactorProfile>> done(count);
    parallel_for(count, job.jobs, [&](std::size_t i) {
      const auto [lo, hi] = plan.segments[base + i];
      done[i] = factor_segment(sieve, lo, hi);
    });
    for (std::size_t i = 0; i < count; ++i) {
      for (const auto& prof : done[i]) sink(prof);
      if (progress) progress(base + i, plan.segments[base + i].second);
    }
  }
}

std::vector<FactorProfile> factor_range(const RangeJob& job, const RootTable* table) {
  std::vector<FactorProfile> out;
  factor_range(job, [&](const FactorProfile& p) { out.push_back(p); }, table);
  return out;
}

std::int64_t empirical_T(const RangeJob& job, const RootTable* table, const ProgressSink& progress) {
  job.validate();
  if (job.h == 0) return job.x_max - job.x_min;
  RootTable storage;
  const auto limit = static_cast<std::uint64_t>(std::max<std::int64_t>(job.x_max, 2));
  const Sieve sieve{table_for(job, table, storage), limit};
  const SegmentPlan plan = plan_segments(job);
  std::vector<std::int64_t> counts(plan.segments.size(), 0);
  // A cofactor left after stripping primes <= limit has at most two prime
  // factors, both above limit. When threshold <= limit + 1 a composite cofactor
  // therefore contributes exactly 2 and need not be split.
  const bool skip_split = job.threshold <= static_cast<u128>(limit) + 1;
  parallel_for(plan.segments.size(), job.jobs, [&](std::size_t s) {
    const auto [lo, hi] = plan.segments[s];
    std::vector<u128> residual;
    std::vector<int> small_count;
    strip_small_primes(sieve, lo, hi, residual, nullptr, &small_count, job.threshold);
    std::int64_t hits = 0;
    for (std::size_t i = 0; i < residual.size(); ++i) {
      int omega = small_count[i];
      const u128 c = residual[i];
      if (c > 1) {
        if (c <= static_cast<u128>(limit) * limit || is_prime(c)) {
          omega += c >= job.threshold ? 1 : 0;
        } else if (skip_split) {
          omega += 2;
        } else {
          std::vector<std::pair<u128, int>> big;
          split_cofactor(lo + static_cast<std::int64_t>(i), c, limit, big);
          for (const auto& [p, e] : big) omega += p >= job.threshold ? e : 0;
        }
      }
      if (omega >= job.h) ++hits;
    }
    counts[s] = hits;
  });
  std::int64_t total = 0;
  for (std::size_t s = 0; s < counts.size(); ++s) {
    total += counts[s];
    if (progress) progress(s, plan.segments[s].second);
  }
  return total;
}

}  // namespace omegabound
