#include "omegabound/log_number.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace omegabound {

namespace {

constexpr double kLn10 = 2.302585092994045684;

// log(exp(x) + exp(y)) and log(exp(x) - exp(y)) for x >= y.
double log_add_exp(double x, double y) { return x + std::log1p(std::exp(y - x)); }
double log_sub_exp(double x, double y) { return x + std::log1p(-std::exp(y - x)); }

// Splits |x| as m * 10^e with 1 <= m < 10.
void decimal_split(const LogNumber& x, double& mantissa, long long& exponent) {
  const double l10 = x.log_mag() / kLn10;
  exponent = static_cast<long long>(std::floor(l10));
  mantissa = std::pow(10.0, l10 - static_cast<double>(exponent));
  if (mantissa >= 10.0) {
    mantissa /= 10.0;
    ++exponent;
  } else if (mantissa < 1.0) {
    mantissa *= 10.0;
    --exponent;
  }
}

}  // namespace

LogNumber LogNumber::from_real(double x) {
  if (x == 0.0) return zero();
  if (!std::isfinite(x)) throw std::domain_error("LogNumber::from_real: non-finite input");
  return from_log(std::log(std::fabs(x)), x > 0 ? 1 : -1);
}

double LogNumber::to_real() const {
  if (sign_ == 0) return 0.0;
  return sign_ * std::exp(log_mag_);
}

double LogNumber::log10_mag() const { return std::floor(log_mag_ / kLn10); }

std::partial_ordering operator<=>(const LogNumber& a, const LogNumber& b) {
  if (a.sign_ != b.sign_) return a.sign_ <=> b.sign_;
  if (a.sign_ == 0) return std::partial_ordering::equivalent;
  return a.sign_ > 0 ? a.log_mag_ <=> b.log_mag_ : b.log_mag_ <=> a.log_mag_;
}

LogNumber ln_mul(const LogNumber& a, const LogNumber& b) {
  if (a.is_zero() || b.is_zero()) return LogNumber::zero();
  return LogNumber::from_log(a.log_mag() + b.log_mag(), a.sign() * b.sign());
}

LogNumber ln_div(const LogNumber& a, const LogNumber& b) {
  if (b.is_zero()) throw std::domain_error("ln_div: division by zero");
  if (a.is_zero()) return LogNumber::zero();
  return LogNumber::from_log(a.log_mag() - b.log_mag(), a.sign() * b.sign());
}

LogNumber ln_add(const LogNumber& a, const LogNumber& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const LogNumber& big = a.log_mag() >= b.log_mag() ? a : b;
  const LogNumber& small = a.log_mag() >= b.log_mag() ? b : a;
  if (a.sign() == b.sign()) {
    return LogNumber::from_log(log_add_exp(big.log_mag(), small.log_mag()), a.sign());
  }
  if (big.log_mag() == small.log_mag()) return LogNumber::zero();
  return LogNumber::from_log(log_sub_exp(big.log_mag(), small.log_mag()), big.sign());
}

LogNumber ln_sub(const LogNumber& a, const LogNumber& b) { return ln_add(a, -b); }

LogNumber ln_pow_int(const LogNumber& a, std::int64_t n) {
  if (a.is_zero()) {
    if (n <= 0) throw std::domain_error("ln_pow_int: zero to a non-positive power");
    return LogNumber::zero();
  }
  const int sign = (a.sign() < 0 && (n % 2 != 0)) ? -1 : 1;
  return LogNumber::from_log(static_cast<double>(n) * a.log_mag(), sign);
}

LogNumber ln_factorial(std::int64_t k) {
  if (k < 0) throw std::domain_error("ln_factorial: negative argument");
  return LogNumber::from_log(std::lgamma(static_cast<double>(k) + 1.0));
}

LogNumber ln_sum(std::span<const LogNumber> terms) {
  LogNumber acc;
  for (const auto& t : terms) acc = ln_add(acc, t);
  return acc;
}

double relative_difference(const LogNumber& a, const LogNumber& b) {
  if (a == b) return 0.0;
  const LogNumber diff = ln_sub(a, b);
  if (diff.is_zero()) return 0.0;
  const double scale = std::max(a.is_zero() ? -std::numeric_limits<double>::infinity() : a.log_mag(),
                                b.is_zero() ? -std::numeric_limits<double>::infinity() : b.log_mag());
  return std::exp(diff.log_mag() - scale);
}

std::string to_scientific(const LogNumber& x, int digits) {
  if (x.is_zero()) return "0";
  double mantissa = 0.0;
  long long exponent = 0;
  decimal_split(x, mantissa, exponent);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits - 1, mantissa);
  // %.*f may round 9.99.. up to 10.0
  if (buf[0] == '1' && buf[1] == '0') {
    mantissa /= 10.0;
    ++exponent;
    std::snprintf(buf, sizeof buf, "%.*f", digits - 1, mantissa);
  }
  char out[96];
  std::snprintf(out, sizeof out, "%s%se%+03lld", x.sign() < 0 ? "-" : "", buf, exponent);
  return out;
}

std::string to_sig2(const LogNumber& x, RoundDir dir) {
  if (x.is_zero()) return "0";
  double mantissa = 0.0;
  long long exponent = 0;
  decimal_split(x, mantissa, exponent);
  // Guard the last ulp so that exact two-digit mantissas are not pushed a step.
  const double scaled = mantissa * 10.0;
  double tenths = dir == RoundDir::up ? std::ceil(scaled * (1.0 - 1e-14)) : std::floor(scaled * (1.0 + 1e-14));
  if (tenths >= 100.0) {
    tenths /= 10.0;
    ++exponent;
  }
  char out[64];
  std::snprintf(out, sizeof out, "%s%.1fe%+03lld", x.sign() < 0 ? "-" : "", tenths / 10.0, exponent);
  return out;
}

}  // namespace omegabound
