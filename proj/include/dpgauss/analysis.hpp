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

#ifndef DPGAUSS_ANALYSIS_H_
#define DPGAUSS_ANALYSIS_H_

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "dpgauss/calibration.hpp"
#include "dpgauss/exact.hpp"
#include "dpgauss/params.hpp"
#include "dpgauss/special_functions.hpp"

// Comparison surfaces between the standard calibration and the closed-form
// one: the safety margins g and d of the standard bound, the bound ratio r
// with its epsilon-derivative, the crossover epsilon where r = 1, and the
// epsilon -> 0 ratio limit rho.

namespace dpgauss {

enum class GridSpacing { kLinear, kLog };

enum class SurfaceKind { kG, kD, kR, kRho, kCrossover };

// Rectangular evaluation grid.  Axis counts of 1 are allowed only for a
// degenerate axis with lo == hi (a single-point slice); otherwise counts
// must be >= 2 with lo < hi.
struct GridSpec {
  double eps_lo = 0.0;
  double eps_hi = 0.0;
  double delta_lo = 0.0;
  double delta_hi = 0.0;
  int n_eps = 0;
  int n_delta = 0;
  GridSpacing spacing = GridSpacing::kLinear;

  void validate() const {
    if (!(eps_lo > 0.0) || !std::isfinite(eps_hi)) {
      throw std::domain_error("GridSpec: eps bounds must be positive finite");
    }
    if (!(delta_lo > 0.0 && delta_hi < 1.0)) {
      throw std::domain_error("GridSpec: delta bounds must be in (0, 1)");
    }
    auto check_axis = [](double lo, double hi, int n, const char* name) {
      if (n < 1 || (n == 1 && lo != hi) || (n >= 2 && !(lo < hi))) {
        throw std::domain_error(std::string("GridSpec: ") + name +
                                " axis needs n >= 2 with lo < hi, or n == 1 "
                                "with lo == hi");
      }
    };
    check_axis(eps_lo, eps_hi, n_eps, "epsilon");
    check_axis(delta_lo, delta_hi, n_delta, "delta");
    if (static_cast<std::int64_t>(n_eps) * n_delta > 100000000) {
      throw std::domain_error("GridSpec: n_eps * n_delta must be <= 1e8");
    }
  }
};

// One evaluated grid point.  For the 1-D surfaces (rho, crossover) epsilon
// is NaN.  violated applies the surface's rule: value < 0 for g and d,
// value < 1 for r, never for rho and crossover.
struct SurfacePoint {
  double epsilon = 0.0;
  double delta = 0.0;
  double value = 0.0;
  bool violated = false;
};

namespace detail {

// The standard-bound sigma formula at sensitivity 1, without the domain
// guard of standard_sigma: the surfaces evaluate it wherever L > 0.
inline double StandardSigmaUnitSens(double epsilon, double delta) {
  return kSqrt2 / epsilon * std::sqrt(LogFiveOverFourDelta(delta));
}

}  // namespace detail

// The n axis positions from lo to hi inclusive, evenly spaced directly or
// in log space.  n == 1 yields just lo.
inline std::vector<double> axis_values(double lo, double hi, int n,
                                       GridSpacing spacing) {
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(n));
  if (n == 1) {
    values.push_back(lo);
    return values;
  }
  if (spacing == GridSpacing::kLinear) {
    double step = (hi - lo) / (n - 1);
    for (int i = 0; i < n; ++i) values.push_back(lo + i * step);
  } else {
    double log_lo = std::log(lo);
    double step = (std::log(hi) - log_lo) / (n - 1);
    for (int i = 0; i < n; ++i) values.push_back(std::exp(log_lo + i * step));
  }
  values.front() = lo;
  values.back() = hi;
  return values;
}

// w(eps, delta) = sqrt(2) (4 L - eps) / (4 sqrt(L)) with L = log(5/(4 delta)):
// the tail threshold v evaluated at the standard-bound sigma, which is
// independent of the sensitivity.  The standard bound satisfies the
// sufficient DP condition iff Pr(|Z| > w) <= delta.
inline double w_value(const PrivacyParams& params) {
  double big_l = detail::LogFiveOverFourDelta(params.delta);
  return kSqrt2 * (4.0 * big_l - params.epsilon) / (4.0 * std::sqrt(big_l));
}

// Safety margin of the standard bound under the sufficient condition:
// g = delta - Pr(|Z| > w).  Negative values mean the standard bound fails
// the sufficient condition at these parameters.
inline double g_value(const PrivacyParams& params) {
  return params.delta - erfc(w_value(params) * kInvSqrt2);
}

// Safety margin of the standard bound under the exact DP condition:
// d = delta - balle_lhs(standard sigma).  Independent of the sensitivity.
// Negative values mean the standard bound is not even exactly
// (epsilon, delta)-DP there.
inline double d_value(const PrivacyParams& params) {
  double sigma = detail::StandardSigmaUnitSens(params.epsilon, params.delta);
  return params.delta - balle_lhs(sigma, params, Sensitivity(1.0));
}

// rho(delta) = sqrt(L / z): the epsilon -> 0 limit and supremum over epsilon
// of the bound ratio r at fixed delta.  Greater than 1 and increasing on
// (0, 1).
inline double rho_value(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::domain_error("rho_value: delta must be in (0, 1)");
  }
  return std::sqrt(detail::LogFiveOverFourDelta(delta) / z_term(delta));
}

// Ratio r = standard sigma / closed-form sigma in closed form:
//   r = 2 sqrt(L) / (sqrt(z) + sqrt(z + eps)).
// Defined for eps >= 0; at eps = 0 it equals rho(delta).
inline double ratio_r(double epsilon, double delta) {
  if (!std::isfinite(epsilon) || epsilon < 0.0) {
    throw std::domain_error("ratio_r: epsilon must be finite and >= 0");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::domain_error("ratio_r: delta must be in (0, 1)");
  }
  if (epsilon == 0.0) return rho_value(delta);
  double big_l = detail::LogFiveOverFourDelta(delta);
  double z = z_term(delta);
  return 2.0 * std::sqrt(big_l) / (std::sqrt(z) + std::sqrt(z + epsilon));
}

// Partial derivative of r in epsilon:
//   dr/deps = -sqrt(L) / ((sqrt(z) + sqrt(z + eps))^2 sqrt(z + eps)),
// negative for all eps > 0 and delta in (0, 1).
inline double ratio_r_deps(double epsilon, double delta) {
  if (!std::isfinite(epsilon) || epsilon <= 0.0) {
    throw std::domain_error("ratio_r_deps: epsilon must be finite and > 0");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::domain_error("ratio_r_deps: delta must be in (0, 1)");
  }
  double big_l = detail::LogFiveOverFourDelta(delta);
  double z = z_term(delta);
  double s = std::sqrt(z) + std::sqrt(z + epsilon);
  return -std::sqrt(big_l) / (s * s * std::sqrt(z + epsilon));
}

// The epsilon at which the standard and closed-form bounds coincide (r = 1):
//   eps(delta) = 4 L - 4 sqrt(L) sqrt(z).
// Positive on all of (0, 1); drops below 1 once delta exceeds ~0.946.
inline double crossover_epsilon(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::domain_error("crossover_epsilon: delta must be in (0, 1)");
  }
  double big_l = detail::LogFiveOverFourDelta(delta);
  double z = z_term(delta);
  return 4.0 * big_l - 4.0 * std::sqrt(big_l) * std::sqrt(z);
}

// Evaluates one surface over the grid in deterministic row-major order,
// delta outer and epsilon inner.  The 1-D surfaces (rho, crossover) iterate
// the delta axis only and leave epsilon as NaN.
inline std::vector<SurfacePoint> evaluate_surface(SurfaceKind kind,
                                                  const GridSpec& grid) {
  grid.validate();
  std::vector<double> deltas =
      axis_values(grid.delta_lo, grid.delta_hi, grid.n_delta, grid.spacing);
  std::vector<SurfacePoint> points;
  if (kind == SurfaceKind::kRho || kind == SurfaceKind::kCrossover) {
    points.reserve(deltas.size());
    for (double delta : deltas) {
      SurfacePoint point;
      point.epsilon = std::numeric_limits<double>::quiet_NaN();
      point.delta = delta;
      point.value = kind == SurfaceKind::kRho ? rho_value(delta)
                                              : crossover_epsilon(delta);
      points.push_back(point);
    }
    return points;
  }
  std::vector<double> epsilons =
      axis_values(grid.eps_lo, grid.eps_hi, grid.n_eps, grid.spacing);
  points.reserve(deltas.size() * epsilons.size());
  for (double delta : deltas) {
    for (double epsilon : epsilons) {
      PrivacyParams params(epsilon, delta);
      SurfacePoint point;
      point.epsilon = epsilon;
      point.delta = delta;
      switch (kind) {
        case SurfaceKind::kG:
          point.value = g_value(params);
          point.violated = point.value < 0.0;
          break;
        case SurfaceKind::kD:
          point.value = d_value(params);
          point.violated = point.value < 0.0;
          break;
        case SurfaceKind::kR:
          point.value = ratio_r(epsilon, delta);
          point.violated = point.value < 1.0;
          break;
        default:
          throw std::logic_error("evaluate_surface: unhandled kind");
      }
      points.push_back(point);
    }
  }
  return points;
}

}  // namespace dpgauss

#endif  // DPGAUSS_ANALYSIS_H_
