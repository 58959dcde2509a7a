#include <array>
#include <fstream>
#include <stdexcept>

#include "omegabound/empirical.hpp"

namespace omegabound {

namespace {

constexpr std::array<char, 4> kMagic = {'N', '3', 'R', 'T'};

template <class T>
void put_le(std::ostream& os, T v) {
  std::array<char, sizeof(T)> bytes{};
  for (std::size_t i = 0; i < sizeof(T); ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  os.write(bytes.data(), bytes.size());
}

template <class T>
T get_le(std::istream& is) {
  std::array<unsigned char, sizeof(T)> bytes{};
  is.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (!is) throw std::runtime_error("root table: truncated file");
  T v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(bytes[i]) << (8 * i);
  return v;
}

}  // namespace

RootTable RootTable::build(std::uint64_t prime_limit) {
  RootTable t;
  t.prime_limit = prime_limit;
  t.primes = primes_up_to(prime_limit);
  t.counts.reserve(t.primes.size());
  t.offsets.reserve(t.primes.size());
  for (std::uint64_t p : t.primes) {
    const auto roots = cube_roots_of_minus_two(p);
    t.offsets.push_back(static_cast<std::uint32_t>(t.roots.size()));
    t.counts.push_back(static_cast<std::uint8_t>(roots.size()));
    t.roots.insert(t.roots.end(), roots.begin(), roots.end());
  }
  return t;
}

void RootTable::save(const std::filesystem::path& path) const {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("root table: cannot write " + path.string());
  os.write(kMagic.data(), kMagic.size());
  put_le<std::uint32_t>(os, kRootTableVersion);
  put_le<std::uint64_t>(os, prime_limit);
  for (std::size_t i = 0; i < primes.size(); ++i) {
    put_le<std::uint64_t>(os, primes[i]);
    put_le<std::uint8_t>(os, counts[i]);
    for (std::uint32_t j = 0; j < counts[i]; ++j) put_le<std::uint64_t>(os, roots[offsets[i] + j]);
  }
  if (!os) throw std::runtime_error("root table: write failed for " + path.string());
}

RootTable RootTable::load(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("root table: cannot open " + path.string());
  std::array<char, 4> magic{};
  is.read(magic.data(), magic.size());
  if (!is || magic != kMagic) throw std::runtime_error("root table: bad magic in " + path.string());
  if (get_le<std::uint32_t>(is) != kRootTableVersion) {
    throw std::runtime_error("root table: unsupported version in " + path.string());
  }
  RootTable t;
  t.prime_limit = get_le<std::uint64_t>(is);
  std::uint64_t previous = 0;
  while (is.peek() != std::char_traits<char>::eof()) {
    const auto p = get_le<std::uint64_t>(is);
    const auto count = get_le<std::uint8_t>(is);
    if (p <= previous || p > t.prime_limit || count > 3) {
      throw std::runtime_error("root table: corrupt record in " + path.string());
    }
    previous = p;
    t.primes.push_back(p);
    t.counts.push_back(count);
    t.offsets.push_back(static_cast<std::uint32_t>(t.roots.size()));
    for (int j = 0; j < count; ++j) {
      const auto r = get_le<std::uint64_t>(is);
      if (r >= p) throw std::runtime_error("root table: root out of range in " + path.string());
      t.roots.push_back(r);
    }
  }
  return t;
}

RootTable RootTable::load_or_build(const std::filesystem::path& path, std::uint64_t prime_limit) {
  if (std::filesystem::exists(path)) {
    RootTable cached = load(path);
    if (cached.prime_limit >= prime_limit) return cached;
  }
  RootTable fresh = build(prime_limit);
  fresh.save(path);
  return fresh;
}

}  // namespace omegabound
