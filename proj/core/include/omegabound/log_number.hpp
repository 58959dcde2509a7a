#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>

namespace omegabound {

/// Real number stored as a sign and the natural log of its magnitude.
///
/// Products, quotients and integer powers become additions in log space, so
/// values far outside the range of a double (the aggregate terms run from
/// roughly 1e-550 up to 1e300) can be formed and summed without overflow or
/// underflow. A sign of zero means exactly zero; log_mag is then meaningless
/// and normalised to 0.
class LogNumber {
 public:
  constexpr LogNumber() = default;

  static constexpr LogNumber zero() { return {}; }
  static constexpr LogNumber one() { return from_log(0.0); }
  /// Positive number exp(log_mag).
  static constexpr LogNumber from_log(double log_mag, int sign = 1) {
    LogNumber r;
    if (sign != 0) {
      r.sign_ = sign > 0 ? 1 : -1;
      r.log_mag_ = log_mag;
    }
    return r;
  }
  static LogNumber from_real(double x);

  constexpr int sign() const { return sign_; }
  constexpr double log_mag() const { return log_mag_; }
  constexpr bool is_zero() const { return sign_ == 0; }

  /// Nearest double; underflows to 0 and overflows to +-inf.
  double to_real() const;
  /// Decimal exponent floor(log10|x|); undefined for zero.
  double log10_mag() const;

  LogNumber operator-() const { return from_log(log_mag_, -sign_); }

  friend bool operator==(const LogNumber& a, const LogNumber& b) {
    if (a.sign_ != b.sign_) return false;
    return a.sign_ == 0 || a.log_mag_ == b.log_mag_;
  }
  friend std::partial_ordering operator<=>(const LogNumber& a, const LogNumber& b);

 private:
  int sign_ = 0;
  double log_mag_ = 0.0;
};

LogNumber ln_mul(const LogNumber& a, const LogNumber& b);
LogNumber ln_div(const LogNumber& a, const LogNumber& b);
LogNumber ln_add(const LogNumber& a, const LogNumber& b);
LogNumber ln_sub(const LogNumber& a, const LogNumber& b);
/// a^n. Throws std::domain_error for 0^n with n <= 0.
LogNumber ln_pow_int(const LogNumber& a, std::int64_t n);
/// k! via log-gamma. Throws std::domain_error for k < 0.
LogNumber ln_factorial(std::int64_t k);
/// Sum in the order given.
LogNumber ln_sum(std::span<const LogNumber> terms);

inline LogNumber operator*(const LogNumber& a, const LogNumber& b) { return ln_mul(a, b); }
inline LogNumber operator/(const LogNumber& a, const LogNumber& b) { return ln_div(a, b); }
inline LogNumber operator+(const LogNumber& a, const LogNumber& b) { return ln_add(a, b); }
inline LogNumber operator-(const LogNumber& a, const LogNumber& b) { return ln_sub(a, b); }

/// Relative difference |a-b| / max(|a|,|b|), evaluated in log space.
double relative_difference(const LogNumber& a, const LogNumber& b);

/// Scientific notation with `digits` significant digits, e.g. "9.1379971506816200e-10".
/// Works for magnitudes outside double range.
std::string to_scientific(const LogNumber& x, int digits = 17);

enum class RoundDir { up, down };
/// Two-significant-figure rendering rounded away from (up) or towards (down) zero
/// in magnitude, e.g. 1.1998e-52 -> "1.1e-52" (down) or "1.2e-52" (up).
std::string to_sig2(const LogNumber& x, RoundDir dir);

}  // namespace omegabound
