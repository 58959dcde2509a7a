#include "omegabound/rational.hpp"

#include <charconv>
#include <numeric>
#include <stdexcept>

namespace omegabound {

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc{} || ptr != end) {
    throw std::invalid_argument("not a rational: '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return {parse_int(text, text), 1};
  return {parse_int(text.substr(0, slash), text), parse_int(text.substr(slash + 1), text)};
}

std::int64_t Rational::floor_reciprocal() const {
  if (num_ <= 0) throw std::domain_error("floor_reciprocal of a non-positive rational");
  return den_ / num_;
}

std::string Rational::to_string() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

}  // namespace omegabound
