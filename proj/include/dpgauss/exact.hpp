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

#ifndef DPGAUSS_EXACT_H_
#define DPGAUSS_EXACT_H_

#include <cmath>
#include <optional>
#include <stdexcept>

#include "dpgauss/calibration.hpp"
#include "dpgauss/params.hpp"
#include "dpgauss/special_functions.hpp"

// Ground-truth solvers: the two-sided tail probability of the sufficient DP
// condition, the exact (epsilon, delta)-DP condition for the Gaussian
// mechanism, and bisection inversions of both.

namespace dpgauss {

// Bisection settings.  Brackets left unset start from
// [sigma_floor, 10 * closed_form_sigma] and auto-expand.
struct RootSolveConfig {
  double rel_tol = 1e-12;
  int max_iter = 200;
  std::optional<double> bracket_lo;
  std::optional<double> bracket_hi;
};

// Tail threshold v(sigma) = sigma eps/sens - sens/(2 sigma), strictly
// increasing in sigma with root at the floor sens/sqrt(2 eps).
inline double v_threshold(double sigma, const PrivacyParams& params,
                          const Sensitivity& sens) {
  if (!std::isfinite(sigma) || sigma <= 0.0) {
    throw std::domain_error("v_threshold: sigma must be finite and > 0");
  }
  if (sens.value == 0.0) {
    throw std::domain_error("v_threshold: sensitivity must be > 0");
  }
  return sigma * params.epsilon / sens.value - sens.value / (2.0 * sigma);
}

// l(sigma) = Pr(|Z| > v(sigma)) for standard Gaussian Z: the probability in
// the sufficient DP condition l(sigma) <= delta.  Equals 1 whenever
// v(sigma) <= 0 (the event |Z| > v is then almost sure).
inline double suffcrit_probability(double sigma, const PrivacyParams& params,
                                   const Sensitivity& sens) {
  double v = v_threshold(sigma, params, sens);
  if (v <= 0.0) return 1.0;
  // Pr(|Z| > v) = 2 (1 - Phi(v)) = erfc(v/sqrt(2)), with erfc keeping the
  // tail relatively accurate where 1 - Phi would cancel.
  return erfc(v * kInvSqrt2);
}

// Left side of the exact (epsilon, delta)-DP condition for the Gaussian
// mechanism, due to Balle and Wang (ICML 2018):
//   Phi(sens/(2 sigma) - eps sigma/sens) - e^eps Phi(-sens/(2 sigma) - eps sigma/sens).
// The mechanism is (eps, delta)-DP iff this value is <= delta.  The second
// term is evaluated as exp(eps + log Phi(.)) once the Phi argument is deep in
// the lower tail, so epsilon up to ~700 cannot overflow before cancellation.
inline double balle_lhs(double sigma, const PrivacyParams& params,
                        const Sensitivity& sens) {
  if (!std::isfinite(sigma) || sigma <= 0.0) {
    throw std::domain_error("balle_lhs: sigma must be finite and > 0");
  }
  if (sens.value == 0.0) {
    throw std::domain_error("balle_lhs: sensitivity must be > 0");
  }
  double a = sens.value / (2.0 * sigma);
  double b = params.epsilon * sigma / sens.value;
  double first = std_normal_cdf(a - b);
  double arg = -a - b;
  double second;
  if (arg < -8.0) {
    second = std::exp(params.epsilon + std_normal_log_cdf(arg));
  } else {
    second = std::exp(params.epsilon) * std_normal_cdf(arg);
  }
  return first - second;
}

namespace detail {

inline void ValidateRootSolveConfig(const RootSolveConfig& cfg) {
  if (!(cfg.rel_tol > 0.0 && cfg.rel_tol < 1.0)) {
    throw std::domain_error("RootSolveConfig: rel_tol must be in (0, 1)");
  }
  if (cfg.max_iter < 1) {
    throw std::domain_error("RootSolveConfig: max_iter must be >= 1");
  }
  if (cfg.bracket_lo && !(*cfg.bracket_lo > 0.0)) {
    throw std::domain_error("RootSolveConfig: bracket_lo must be > 0");
  }
  if (cfg.bracket_lo && cfg.bracket_hi &&
      !(*cfg.bracket_lo < *cfg.bracket_hi)) {
    throw std::domain_error(
        "RootSolveConfig: bracket_lo must be < bracket_hi");
  }
}

// Bisects a decreasing function f to the sigma where f crosses target,
// returning the upper (feasible, f <= target) end of the final bracket.
// Expands the initial bracket by doubling/halving up to 60 steps each way,
// then requires f(lo) > target >= f(hi).
template <typename F>
double BisectDecreasing(const F& f, double target, double lo, double hi,
                        const RootSolveConfig& cfg, const char* what) {
  double f_lo = f(lo);
  double f_hi = f(hi);
  for (int i = 0; f_hi > target && i < 60; ++i) {
    lo = hi;
    f_lo = f_hi;
    hi *= 2.0;
    f_hi = f(hi);
  }
  for (int i = 0; f_lo <= target && i < 60; ++i) {
    hi = lo;
    f_hi = f_lo;
    lo *= 0.5;
    f_lo = f(lo);
  }
  if (!(f_lo > target && f_hi <= target)) {
    throw std::runtime_error(std::string(what) +
                             ": bracket does not straddle the root after "
                             "expansion");
  }
  for (int i = 0; i < cfg.max_iter && (hi - lo) > cfg.rel_tol * hi; ++i) {
    double mid = 0.5 * (lo + hi);
    if (f(mid) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

}  // namespace detail

// Solves l(sigma) = delta by bisection.  Independent route to the same root
// that optimal_sufficient_sigma reaches through the quantile; the two agree
// to 1e-9 relative.  Requires delta < 1 (at delta = 1 every sigma works).
inline double solve_sufficient_sigma(const PrivacyParams& params,
                                     const Sensitivity& sens,
                                     const RootSolveConfig& cfg = {}) {
  detail::ValidateRootSolveConfig(cfg);
  if (params.delta >= 1.0) {
    throw std::domain_error("solve_sufficient_sigma: delta must be in (0, 1)");
  }
  if (sens.value == 0.0) return 0.0;
  double lo = cfg.bracket_lo.value_or(sigma_floor(params, sens));
  double hi =
      cfg.bracket_hi.value_or(10.0 * closed_form_sigma(params, sens).sigma);
  auto f = [&](double sigma) {
    return suffcrit_probability(sigma, params, sens);
  };
  return detail::BisectDecreasing(f, params.delta, lo, hi, cfg,
                                  "solve_sufficient_sigma");
}

// Smallest sigma satisfying the exact DP condition balle_lhs(sigma) <= delta,
// by bisection.  The solver verifies a sign change across the bracket rather
// than assuming monotonicity of the condition.  Never above
// optimal_sufficient_sigma, and can undercut the sigma floor for large delta.
inline CalibrationResult solve_analytic_sigma(const PrivacyParams& params,
                                              const Sensitivity& sens,
                                              const RootSolveConfig& cfg = {}) {
  detail::ValidateRootSolveConfig(cfg);
  if (params.delta >= 1.0) {
    throw std::domain_error("solve_analytic_sigma: delta must be in (0, 1)");
  }
  CalibrationResult result;
  result.method = CalibrationMethod::kAnalyticExact;
  if (sens.value == 0.0) {
    result.sigma = 0.0;
    return result;
  }
  double lo = cfg.bracket_lo.value_or(sigma_floor(params, sens));
  double hi =
      cfg.bracket_hi.value_or(10.0 * closed_form_sigma(params, sens).sigma);
  auto f = [&](double sigma) { return balle_lhs(sigma, params, sens); };
  result.sigma = detail::BisectDecreasing(f, params.delta, lo, hi, cfg,
                                          "solve_analytic_sigma");
  return result;
}

}  // namespace dpgauss

#endif  // DPGAUSS_EXACT_H_
