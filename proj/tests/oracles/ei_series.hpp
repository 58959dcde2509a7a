#pragma once

// Independent reference for the exponential integral, used only by tests.
//
// Ei(x) = gamma + ln x + sum_{n>=1} x^n / (n n!), so for 0 < a <= b
//   int_a^b e^{alpha s}/s ds = Ei(alpha b) - Ei(alpha a)
//                            = ln(b/a) + sum_n (x2^n - x1^n) / (n n!)
// with x1 = alpha a, x2 = alpha b. Every summand is positive, so nothing
// cancels; the sum is carried in long double.

#include <cmath>

namespace oracle {

inline long double ei_difference(long double alpha, long double a, long double b) {
  const long double log_ratio = std::log(b / a);
  if (alpha == 0.0L || a == b) return log_ratio;
  const long double x2 = alpha * b;
  long double power = 1.0L;  // x2^n / n!
  long double sum = 0.0L;
  for (int n = 1; n < 100000; ++n) {
    power *= x2 / n;
    // x2^n - x1^n = x2^n (1 - (a/b)^n)
    const long double term = power * -std::expm1(n * -log_ratio) / n;
    sum += term;
    if (n > x2 && term < 1e-22L * sum) break;
  }
  return log_ratio + sum;
}

/// Plain ln(k!) as a sum of logs.
inline long double log_factorial(int k) {
  long double s = 0.0L;
  for (int i = 2; i <= k; ++i) s += std::log(static_cast<long double>(i));
  return s;
}

}  // namespace oracle
