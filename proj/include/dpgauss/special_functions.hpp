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

#ifndef DPGAUSS_SPECIAL_FUNCTIONS_H_
#define DPGAUSS_SPECIAL_FUNCTIONS_H_

#include <cmath>
#include <limits>
#include <stdexcept>

// Standard-normal special functions: erf/erfc, pdf, cdf, log-cdf, quantile,
// and a closed-form upper bound on the quantile.  Everything is plain double
// arithmetic; accuracy targets are stated per function.

namespace dpgauss {

inline constexpr double kInvSqrt2 = 0.7071067811865475244;
inline constexpr double kSqrt2 = 1.4142135623730950488;
inline constexpr double kInvSqrt2Pi = 0.3989422804014326779;

namespace detail {

// Rational Chebyshev coefficients from W. J. Cody, "Rational Chebyshev
// approximation for the error function", Math. Comp. 23 (1969), 631-637,
// double-precision (IEEE) variant.  Absolute error below ~1.2e-16.
inline constexpr double kErfA[5] = {3.1611237438705656, 113.864154151050156,
                                    377.485237685302021, 3209.37758913846947,
                                    0.185777706184603153};
inline constexpr double kErfB[4] = {23.6012909523441209, 244.024637934444173,
                                    1282.61652607737228, 2844.23683343917062};
inline constexpr double kErfcC[9] = {
    0.564188496988670089, 8.88314979438837594, 66.1191906371416295,
    298.635138197400131,  881.95222124176909,  1712.04761263407058,
    2051.07837782607147,  1230.33935479799725, 2.15311535474403846e-8};
inline constexpr double kErfcD[8] = {
    15.7449261107098347, 117.693950891312499, 537.181101862009858,
    1621.38957456669019, 3290.79923573345963, 4362.61909014324716,
    3439.36767414372164, 1230.33935480374942};
inline constexpr double kErfcxP[6] = {
    0.305326634961232344, 0.360344899949804439,   0.125781726111229246,
    0.0160837851487422766, 6.58749161529837803e-4, 0.0163153871373020978};
inline constexpr double kErfcxQ[5] = {2.56852019228982242, 1.87295284992346047,
                                      0.527905102951428412,
                                      0.0605183413124413191,
                                      0.00233520497626869185};

inline constexpr double kErfThresh = 0.46875;
// Below this, erf(x) = 2x/sqrt(pi) to machine precision (leading series term).
inline constexpr double kErfXSmall = 1.11e-16;
// erfc underflows to zero at and beyond this argument.
inline constexpr double kErfcXBig = 26.543;
// Beyond this, 1 - 1/(2y^2) = 1 to machine precision; erfcx(y) = 1/(y sqrt(pi)).
inline constexpr double kErfcxXHuge = 6.71e7;
inline constexpr double kInvSqrtPi = 0.56418958354775628695;

// erf(x) for |x| <= 0.46875; odd in x by construction.
inline double ErfRationalSmall(double x) {
  double ysq = 0.0;
  if (std::fabs(x) > kErfXSmall) ysq = x * x;
  double xnum = kErfA[4] * ysq;
  double xden = ysq;
  for (int i = 0; i < 3; ++i) {
    xnum = (xnum + kErfA[i]) * ysq;
    xden = (xden + kErfB[i]) * ysq;
  }
  return x * (xnum + kErfA[3]) / (xden + kErfB[3]);
}

// Scaled complement erfcx(y) = exp(y^2) erfc(y) for y > 0.46875.
inline double ErfcxRational(double y) {
  if (y <= 4.0) {
    double xnum = kErfcC[8] * y;
    double xden = y;
    for (int i = 0; i < 7; ++i) {
      xnum = (xnum + kErfcC[i]) * y;
      xden = (xden + kErfcD[i]) * y;
    }
    return (xnum + kErfcC[7]) / (xden + kErfcD[7]);
  }
  if (y >= kErfcxXHuge) return kInvSqrtPi / y;
  double ysq = 1.0 / (y * y);
  double xnum = kErfcxP[5] * ysq;
  double xden = ysq;
  for (int i = 0; i < 4; ++i) {
    xnum = (xnum + kErfcxP[i]) * ysq;
    xden = (xden + kErfcxQ[i]) * ysq;
  }
  double result = ysq * (xnum + kErfcxP[4]) / (xden + kErfcxQ[4]);
  return (kInvSqrtPi - result) / y;
}

// exp(-y*y) with y split at a 1/16 grid so the squared high part is exact,
// which keeps the deep tail of erfc accurate.
inline double ExpNegSquare(double y) {
  double hi = std::trunc(y * 16.0) / 16.0;
  double del = (y - hi) * (y + hi);
  return std::exp(-hi * hi) * std::exp(-del);
}

// erfc(y) for y > 0.46875.
inline double ErfcPositive(double y) {
  if (y >= kErfcXBig) return 0.0;
  return ExpNegSquare(y) * ErfcxRational(y);
}

}  // namespace detail

// Error function.  Requires finite x; absolute error below 1e-14 on the
// real line (the Cody rationals are good to ~1.2e-16), odd in x exactly.
inline double erf(double x) {
  if (!std::isfinite(x)) {
    throw std::domain_error("erf: argument must be finite");
  }
  double y = std::fabs(x);
  if (y <= detail::kErfThresh) return detail::ErfRationalSmall(x);
  double result = 1.0 - detail::ErfcPositive(y);
  return x < 0.0 ? -result : result;
}

// Complementary error function erfc(x) = 1 - erf(x).  Requires finite x;
// keeps full relative accuracy in the upper tail down to the underflow
// cutoff erfc(26.543) ~ 1e-308.
inline double erfc(double x) {
  if (!std::isfinite(x)) {
    throw std::domain_error("erfc: argument must be finite");
  }
  double y = std::fabs(x);
  double result;
  if (y <= detail::kErfThresh) {
    result = 1.0 - detail::ErfRationalSmall(y);
  } else {
    result = detail::ErfcPositive(y);
  }
  return x < 0.0 ? 2.0 - result : result;
}

// Standard normal density phi(x) = exp(-x^2/2)/sqrt(2 pi).  Underflows to
// zero gracefully for |x| > ~38.6.
inline double std_normal_pdf(double x) {
  return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

// Standard normal CDF Phi(x) = erfc(-x/sqrt(2))/2.  Accepts +-infinity.
// Built from the lower tail on both sides, so Phi(x) + Phi(-x) = 1 to
// within 1e-15 and the result stays within half an ulp of the tail value
// near both 0 and 1.
inline double std_normal_cdf(double x) {
  if (std::isnan(x)) {
    throw std::domain_error("std_normal_cdf: argument must not be NaN");
  }
  if (std::isinf(x)) return x > 0.0 ? 1.0 : 0.0;
  double lower_tail = 0.5 * erfc(std::fabs(x) * kInvSqrt2);
  return x > 0.0 ? 1.0 - lower_tail : lower_tail;
}

// log Phi(x), usable far into the lower tail where Phi(x) itself would
// underflow.  For x below the central region this evaluates the scaled
// complement erfcx, so no intermediate quantity over- or underflows:
//   log Phi(x) = log(erfcx(y)/2) - y^2,  y = -x/sqrt(2).
inline double std_normal_log_cdf(double x) {
  if (std::isnan(x)) {
    throw std::domain_error("std_normal_log_cdf: argument must not be NaN");
  }
  if (std::isinf(x)) {
    return x > 0.0 ? 0.0 : -std::numeric_limits<double>::infinity();
  }
  if (x > 6.0) return std::log1p(-std_normal_cdf(-x));
  double y = -x * kInvSqrt2;
  if (y <= detail::kErfThresh) return std::log(std_normal_cdf(x));
  return std::log(0.5 * detail::ErfcxRational(y)) - y * y;
}

namespace detail {

// Acklam's rational initial guess for the lower-tail / central quantile,
// valid for p in (0, 0.5]; relative error ~1.15e-9 before refinement.
// Coefficients from P. J. Acklam, "An algorithm for computing the inverse
// normal cumulative distribution function" (2003).
inline double QuantileAcklamLower(double p) {
  static constexpr double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                  -2.759285104469687e+02, 1.383577518672690e+02,
                                  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                  -1.556989798598866e+02, 6.680131188771972e+01,
                                  -1.328068155288572e+01};
  static constexpr double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                  -2.400758277161838e+00, -2.549732539343734e+00,
                                  4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                  2.445134137142996e+00, 3.754408661907416e+00};
  static constexpr double p_low = 0.02425;
  if (p < p_low) {
    double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
            c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  double q = p - 0.5;
  double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r +
          a[5]) *
         q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace detail

// Standard normal quantile Phi^-1(p) for p in (0, 1): Acklam's rational
// approximation plus one Halley refinement step against std_normal_cdf.
// Relative error below 1e-10 over [1e-12, 1 - 1e-12]; round-trip
// |Phi(Phi^-1(p)) - p| <= 1e-12 * p on the same range.
inline double std_normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("std_normal_quantile: p must be in (0, 1)");
  }
  // Reflect into the lower half so the tail branch sees the exact tail mass.
  bool upper = p > 0.5;
  double pp = upper ? 1.0 - p : p;
  double x = detail::QuantileAcklamLower(pp);
  double density = std_normal_pdf(x);
  if (density > 0.0) {
    double u = (std_normal_cdf(x) - pp) / density;
    double step = u / (1.0 + 0.5 * x * u);
    if (std::isfinite(step)) x -= step;
  }
  return upper ? -x : x;
}

// Closed-form upper bound on the quantile for p in [1/2, 1):
//   Phi^-1(p) <= sqrt(2) * sqrt(-log(1 - (2p - 1)^2)),
// evaluated in the cancellation-free form -log(4 p (1 - p)).  Equality
// holds at p = 1/2.
inline double quantile_upper_bound(double p) {
  if (!(p >= 0.5 && p < 1.0)) {
    throw std::domain_error("quantile_upper_bound: p must be in [1/2, 1)");
  }
  double r = -std::log(4.0 * p * (1.0 - p));
  if (r < 0.0) r = 0.0;
  return kSqrt2 * std::sqrt(r);
}

}  // namespace dpgauss

#endif  // DPGAUSS_SPECIAL_FUNCTIONS_H_
