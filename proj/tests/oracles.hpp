//
// Copyright 2026 The dpgauss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef DPGAUSS_TESTS_ORACLES_H_
#define DPGAUSS_TESTS_ORACLES_H_

#include <cmath>
#include <cstdlib>

// Reference implementations in 80-bit long double, built from textbook
// series independent of the library's rational approximations: a Maclaurin
// series for erf in the center and a Gauss continued fraction for erfc in
// the tails.  Good to a few units in the last long-double place, which is
// ample for double-precision accuracy checks at 1e-14.

namespace dpgauss_test {

inline constexpr long double kOracleInvSqrtPi =
    0.564189583547756286948079451560772586L;
inline constexpr long double kOracleInvSqrt2 =
    0.707106781186547524400844362104849039L;

// erf via Maclaurin series; alternating terms peak near n = x^2, so keep
// |x| <= 1.5 where cancellation stays below the long-double epsilon.
inline long double OracleErfSeries(long double x) {
  long double term = x;
  long double sum = x;
  for (int n = 1; n < 200; ++n) {
    term *= -x * x / n;
    long double contribution = term / (2 * n + 1);
    sum += contribution;
    if (std::fabs(contribution) < 1e-25L * std::fabs(sum)) break;
  }
  return 2.0L * kOracleInvSqrtPi * sum;
}

// erfc via the Gauss continued fraction
//   erfc(x) = exp(-x^2)/sqrt(pi) / (x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
// evaluated with the modified Lentz algorithm; requires x > 0, used for
// x > 1.5 where it converges in a few dozen terms.
inline long double OracleErfcContinuedFraction(long double x) {
  const long double tiny = 1e-300L;
  long double f = x;
  long double c = f;
  long double d = 0.0L;
  for (int n = 1; n < 300; ++n) {
    long double a = 0.5L * n;
    d = x + a * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = x + a / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0L / d;
    long double ratio = c * d;
    f *= ratio;
    if (std::fabs(ratio - 1.0L) < 1e-25L) break;
  }
  return std::exp(-x * x) * kOracleInvSqrtPi / f;
}

inline long double OracleErfc(long double x) {
  if (x < 0.0L) return 2.0L - OracleErfc(-x);
  if (x <= 1.5L) return 1.0L - OracleErfSeries(x);
  return OracleErfcContinuedFraction(x);
}

inline long double OracleErf(long double x) {
  if (std::fabs(x) <= 1.5L) return OracleErfSeries(x);
  long double result = 1.0L - OracleErfcContinuedFraction(std::fabs(x));
  return x < 0.0L ? -result : result;
}

inline long double OracleNormCdf(long double x) {
  return 0.5L * OracleErfc(-x * kOracleInvSqrt2);
}

// log Phi(x) usable far below the double underflow point: the continued
// fraction is evaluated in log space.
inline long double OracleNormLogCdf(long double x) {
  if (x > -2.2L) return std::log(OracleNormCdf(x));
  long double y = -x * kOracleInvSqrt2;
  const long double tiny = 1e-300L;
  long double f = y;
  long double c = f;
  long double d = 0.0L;
  for (int n = 1; n < 300; ++n) {
    long double a = 0.5L * n;
    d = y + a * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = y + a / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0L / d;
    long double ratio = c * d;
    f *= ratio;
    if (std::fabs(ratio - 1.0L) < 1e-25L) break;
  }
  // Phi(x) = erfc(y)/2 = exp(-y^2)/(2 sqrt(pi) f)
  return -y * y + std::log(kOracleInvSqrtPi / (2.0L * f));
}

inline double RelDiff(double actual, double expected) {
  if (expected == 0.0) return std::fabs(actual);
  return std::fabs(actual - expected) / std::fabs(expected);
}

}  // namespace dpgauss_test

#endif  // DPGAUSS_TESTS_ORACLES_H_
