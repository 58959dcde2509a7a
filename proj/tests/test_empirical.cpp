#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>

#include "omegabound/bounds.hpp"
#include "omegabound/empirical.hpp"
#include "oracles/trial_division.hpp"

using namespace omegabound;

TEST_CASE("nu worked values") {
  CHECK(nu(29) == 1);
  CHECK(nu(7) == 0);
  CHECK(nu(31) == 3);
  CHECK(nu(1) == 1);
  CHECK(nu(2) == 1);
  CHECK(nu(4) == 0);
  CHECK(nu(3) == 1);
  CHECK(nu(9) == 0);
  CHECK(nu(31 * 31) == 3);
  CHECK(nu(29 * 31) == 3);
  CHECK_THROWS_AS(nu(0), std::domain_error);
}

TEST_CASE("nu agrees with residue enumeration for every d <= 3000") {
  for (std::uint64_t d = 1; d <= 3000; ++d) CHECK(nu(d) == nu_brute_force(d));
}

TEST_CASE("property: nu is multiplicative on coprime pairs") {
  std::mt19937_64 rng(321);
  int tested = 0;
  while (tested < 500) {
    const std::uint64_t d1 = 1 + rng() % 1000;
    const std::uint64_t d2 = 1 + rng() % (1000000 / d1);
    if (std::gcd(d1, d2) != 1) continue;
    ++tested;
    const std::int64_t whole = nu_brute_force(d1 * d2);
    CHECK(whole == nu_brute_force(d1) * nu_brute_force(d2));
    CHECK(nu(d1 * d2) == whole);
  }
}

TEST_CASE("cube roots of -2 match enumeration for p <= 20000") {
  for (std::uint64_t p : primes_up_to(20000)) {
    std::vector<std::uint64_t> expected;
    for (std::uint64_t x = 0; x < p; ++x) {
      if ((mul_mod(mul_mod(x, x, p), x, p) + 2) % p == 0) expected.push_back(x);
    }
    const auto roots = cube_roots_of_minus_two(p);
    CHECK(roots == expected);
    CHECK(cube_root_count(p) == static_cast<int>(expected.size()));
    if (p > 3) CHECK((roots.size() == 0 || roots.size() == 1 || roots.size() == 3));
    if (p % 3 == 2) CHECK(roots.size() == 1);
  }
}

TEST_CASE("primality and splitting") {
  CHECK(is_prime(2));
  CHECK_FALSE(is_prime(1));
  CHECK(is_prime(4001));
  CHECK_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
  const u128 p = 10000000019ULL;
  const u128 q = 100000000003ULL;
  REQUIRE(is_prime(p));
  REQUIRE(is_prime(q));
  const u128 n = p * q;  // about 1e21, beyond 64 bits
  CHECK_FALSE(is_prime(n));
  const u128 f = pollard_brent(n, 1);
  CHECK((f == p || f == q));
  CHECK(to_string(n) == "1000000001930000000057");
}

TEST_CASE("factor_range small cases") {
  RangeJob job{0, 4, 2, 1, 2, 1};
  const auto profiles = factor_range(job);
  REQUIRE(profiles.size() == 4u);
  CHECK(profiles[0].n == 1);
  CHECK(profiles[0].value == 3);
  CHECK(profiles[0].omega_above(2) == 1);
  CHECK(profiles[2].value == 29);
  CHECK(profiles[2].omega_above(2) == 1);
  const auto& four = profiles[3];
  CHECK(four.value == 66);
  REQUIRE(four.factors.size() == 3u);
  CHECK(four.factors[0] == std::pair<u128, int>{2, 1});
  CHECK(four.factors[1] == std::pair<u128, int>{3, 1});
  CHECK(four.factors[2] == std::pair<u128, int>{11, 1});
  CHECK(four.omega_above(3) == 2);
}

TEST_CASE("factor_range matches trial division and reconstructs") {
  RangeJob job{0, 2500, 2, 1, 512, 2};
  std::int64_t seen = 0;
  factor_range(job, [&](const FactorProfile& prof) {
    ++seen;
    CHECK(prof.n == seen);
    CHECK(prof.product() == prof.value);
    const auto expected = oracle::trial_factor(static_cast<std::uint64_t>(prof.value));
    REQUIRE(expected.size() == prof.factors.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
      CHECK(prof.factors[i].first == expected[i].first);
      CHECK(prof.factors[i].second == expected[i].second);
    }
  });
  CHECK(seen == 2500);
}

TEST_CASE("prime powers count with multiplicity") {
  // 5^3 + 2 = 127; 23^3 + 2 = 12169 = 43 * 283; find an n where a square divides.
  RangeJob job{0, 3000, 2, 1, 512, 1};
  bool found_square = false;
  for (const auto& prof : factor_range(job)) {
    for (const auto& [p, e] : prof.factors) {
      if (e >= 2) {
        found_square = true;
        CHECK(prof.omega_above(p) >= e);
      }
    }
  }
  CHECK(found_square);
}

TEST_CASE("empirical_T") {
  RangeJob job{10, 20, 2, 3, 4, 1};
  int oracle_count = 0;
  for (std::uint64_t n = 11; n <= 20; ++n) oracle_count += oracle::omega_above(n * n * n + 2, 2) >= 3;
  CHECK(oracle_count == 2);
  CHECK(empirical_T(job) == oracle_count);
  job.h = 0;
  CHECK(empirical_T(job) == 10);
  job.h = 1;
  job.threshold = 8003;
  CHECK(empirical_T(job) == 0);
  CHECK_THROWS_AS(empirical_T(RangeJob{5, 5, 2, 1, 4, 1}), std::invalid_argument);
  CHECK_THROWS_AS(empirical_T(RangeJob{0, 20000000, 2, 1, 4, 1}), std::invalid_argument);
  CHECK_THROWS_AS(empirical_T(RangeJob{0, 20, 1, 1, 4, 1}), std::invalid_argument);
}

TEST_CASE("empirical_T agrees with full factorisation, including the split path") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 12; ++trial) {
    const std::int64_t x_min = static_cast<std::int64_t>(rng() % 50000);
    const std::int64_t x_max = x_min + 1 + static_cast<std::int64_t>(rng() % 3000);
    // Thresholds both below and above the sieve limit x_max.
    const u128 threshold = trial % 2 ? 2 + rng() % 200 : static_cast<u128>(x_max) + 2 + rng() % 1000000;
    const int h = static_cast<int>(rng() % 4);
    RangeJob job{x_min, x_max, threshold, h, 1 + static_cast<std::int64_t>(rng() % 700), 3};
    std::int64_t direct = 0;
    for (const auto& prof : factor_range(job)) direct += prof.omega_above(threshold) >= h;
    CHECK(empirical_T(job) == direct);
  }
}

TEST_CASE("property: empirical_T nonincreasing in h and threshold") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const std::int64_t x_min = static_cast<std::int64_t>(rng() % 100000);
    RangeJob job{x_min, x_min + 2000, 2 + rng() % 50, 1, 512, 2};
    std::int64_t previous = empirical_T(job);
    for (int h = 2; h <= 6; ++h) {
      job.h = h;
      const std::int64_t current = empirical_T(job);
      CHECK(current <= previous);
      previous = current;
    }
    job.h = 2;
    previous = empirical_T(job);
    for (int step = 0; step < 5; ++step) {
      job.threshold = job.threshold * 3;
      const std::int64_t current = empirical_T(job);
      CHECK(current <= previous);
      previous = current;
    }
  }
}

TEST_CASE("property: segment size does not change the profile stream") {
  const auto reference = factor_range(RangeJob{1000, 4000, 2, 1, 3000, 1});
  for (std::int64_t seg : {1, 7, 64, 1000, 5000}) {
    CHECK(factor_range(RangeJob{1000, 4000, 2, 1, seg, 3}) == reference);
  }
}

TEST_CASE("root table cache") {
  const auto dir = std::filesystem::temp_directory_path() / "omegabound_root_table_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "roots.bin";
  std::filesystem::remove(path);

  const RootTable built = RootTable::build(1000);
  built.save(path);
  CHECK(std::filesystem::file_size(path) ==
        16 + 9 * built.primes.size() + 8 * built.roots.size());
  {
    std::ifstream is(path, std::ios::binary);
    char head[16];
    is.read(head, 16);
    CHECK(std::string(head, 4) == "N3RT");
    CHECK(head[4] == 1);
    CHECK(static_cast<unsigned char>(head[8]) == (1000 & 0xFF));
    CHECK(static_cast<unsigned char>(head[9]) == (1000 >> 8));
  }
  CHECK(RootTable::load(path) == built);
  CHECK(RootTable::load_or_build(path, 500) == built);
  const RootTable bigger = RootTable::load_or_build(path, 2000);
  CHECK(bigger.prime_limit == 2000);
  CHECK(RootTable::load(path) == bigger);

  // A cached table produces the same answers as a fresh one.
  RangeJob job{100, 900, 5, 2, 128, 2};
  CHECK(empirical_T(job, &bigger) == empirical_T(job));

  {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    os << "garbage-garbage-garbage";
  }
  CHECK_THROWS_AS(RootTable::load(path), std::runtime_error);
  std::filesystem::remove_all(dir);
}

TEST_CASE("mertens_check") {
  const auto single = mertens_check({2});
  REQUIRE(single.points.size() == 1u);
  CHECK(single.points[0].sum == doctest::Approx(std::log(2.0) / 2));
  CHECK(single.points[0].deviation == doctest::Approx(-0.34657359).epsilon(1e-7));

  CHECK(decade_schedule(1000000) == std::vector<std::uint64_t>{10, 100, 1000, 10000, 100000, 1000000});
  CHECK(decade_schedule(5000) == std::vector<std::uint64_t>{10, 100, 1000, 5000});
  const auto result = mertens_check(decade_schedule(1000000));
  REQUIRE(result.points.size() == 6u);
  for (const auto& pt : result.points) CHECK(std::fabs(pt.deviation) <= 3.0);
  CHECK(result.prime_count == 78498u);
  CHECK(std::fabs(result.mean_nu - 1.0) <= 0.02);
  CHECK_THROWS_AS(mertens_check({100, 10}), std::invalid_argument);
  CHECK_THROWS_AS(mertens_check({1000000000}), std::invalid_argument);
}

TEST_CASE("desk-scale consistency with the first bound") {
  // X = 1e6, delta = 1/4: threshold X^(1/4) ~ 31.6. Finite-X o(1) terms are
  // material here, so this is only an envelope.
  const Rational delta{1, 4};
  for (int h : {3, 4, 6}) {
    RangeJob job{1000000, 2000000, 32, h, 1 << 16, 8};
    const double fraction = static_cast<double>(empirical_T(job)) / 1e6;
    const double bound = first_bound(h, delta).to_real();
    MESSAGE("h=" << h << " empirical " << fraction << " first_bound " << bound);
    CHECK(fraction <= bound + 0.05);
  }
}
