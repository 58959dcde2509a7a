#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace omegabound {

/// Exact positive-denominator rational in lowest terms. Used for the exponent
/// delta so that "1/321" never drifts through a decimal round trip.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t num, std::int64_t den);

  /// Parses "P/Q" or an integer "P". Throws std::invalid_argument.
  static Rational parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  /// floor(1/x) for x > 0.
  std::int64_t floor_reciprocal() const;
  std::string to_string() const;

  friend bool operator==(const Rational&, const Rational&) = default;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace omegabound
