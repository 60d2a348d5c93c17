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

#ifndef DPGAUSS_CALIBRATION_H_
#define DPGAUSS_CALIBRATION_H_

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "dpgauss/params.hpp"
#include "dpgauss/special_functions.hpp"

// Closed-form noise scales for the Gaussian mechanism.  Every sigma is
// computed as sensitivity * f(epsilon, delta), so scaling the sensitivity
// scales sigma exactly linearly.

namespace dpgauss {

// z = -log(delta (2 - delta)), evaluated as -log(delta) - log(2 - delta) so
// the product cannot underflow for delta down to the smallest normal double.
// Nonnegative on (0, 1], zero exactly at delta = 1.
inline double z_term(double delta) {
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw std::domain_error("z_term: delta must be in (0, 1]");
  }
  return -std::log(delta) - std::log(2.0 - delta);
}

namespace detail {

inline double LogFiveOverFourDelta(double delta) {
  return std::log(5.0) - std::log(4.0 * delta);
}

inline std::optional<std::string> EpsilonRangeWarning(double epsilon) {
  if (epsilon >= 1.0) {
    return "epsilon outside (0,1): the standard bound is only stated for "
           "epsilon in (0,1)";
  }
  return std::nullopt;
}

}  // namespace detail

// Widely used calibration sigma = sensitivity * sqrt(2 log(5/(4 delta))) /
// epsilon.  Stated for epsilon in (0, 1) and delta in (0, 1); outside the
// epsilon range the result is still returned but carries a warning, since
// the guarantee does not follow from the usual proof there.
inline CalibrationResult standard_sigma(const PrivacyParams& params,
                                        const Sensitivity& sens) {
  if (params.delta >= 1.0) {
    throw std::domain_error("standard_sigma: delta must be in (0, 1)");
  }
  double big_l = detail::LogFiveOverFourDelta(params.delta);
  CalibrationResult result;
  result.sigma = sens.value * (kSqrt2 / params.epsilon * std::sqrt(big_l));
  result.method = CalibrationMethod::kStandard;
  result.domain_warning = detail::EpsilonRangeWarning(params.epsilon);
  return result;
}

// Closed-form sigma valid for every epsilon > 0 and delta in (0, 1]:
//   sigma = sensitivity * sqrt(2)/(2 epsilon) * (sqrt(z) + sqrt(z + epsilon))
// with z = z_term(delta).  At delta = 1 this reduces to the floor
// sensitivity / sqrt(2 epsilon).
inline CalibrationResult closed_form_sigma(const PrivacyParams& params,
                                           const Sensitivity& sens) {
  double z = z_term(params.delta);
  CalibrationResult result;
  result.sigma = sens.value * (kSqrt2 / (2.0 * params.epsilon) *
                               (std::sqrt(z) + std::sqrt(z + params.epsilon)));
  result.method = CalibrationMethod::kClosedForm;
  result.z_value = z;
  return result;
}

// Looser but simpler variant of the closed form, never below it:
//   sigma = sensitivity * (sqrt(2 z)/epsilon + 1/sqrt(2 epsilon)).
inline CalibrationResult simplified_sigma(const PrivacyParams& params,
                                          const Sensitivity& sens) {
  double z = z_term(params.delta);
  CalibrationResult result;
  result.sigma = sens.value * (kSqrt2 / params.epsilon * std::sqrt(z) +
                               1.0 / std::sqrt(2.0 * params.epsilon));
  result.method = CalibrationMethod::kSimplified;
  result.z_value = z;
  return result;
}

// Smallest sigma satisfying the two-sided tail condition
// Pr(|Z| > sigma eps/sens - sens/(2 sigma)) <= delta, in closed form via the
// normal quantile q = Phi^-1(1 - delta/2):
//   sigma = sensitivity/(2 epsilon) * (q + sqrt(q^2 + 2 epsilon)).
// Requires delta < 1 strictly.
inline CalibrationResult optimal_sufficient_sigma(const PrivacyParams& params,
                                                  const Sensitivity& sens) {
  if (params.delta >= 1.0) {
    throw std::domain_error(
        "optimal_sufficient_sigma: delta must be in (0, 1)");
  }
  // -quantile(delta/2) equals quantile(1 - delta/2) without losing the tail
  // mass of tiny delta to rounding in 1 - delta/2.
  double q = -std_normal_quantile(0.5 * params.delta);
  CalibrationResult result;
  result.sigma =
      sens.value *
      ((q + std::sqrt(q * q + 2.0 * params.epsilon)) / (2.0 * params.epsilon));
  result.method = CalibrationMethod::kOptimalSufficient;
  return result;
}

// Epsilon obtained by inverting the standard bound at a given sigma.
struct EpsilonFromSigma {
  double epsilon = 0.0;
  std::optional<std::string> domain_warning;
};

// Inverts the standard bound: epsilon = sensitivity * sqrt(2 L) / sigma with
// L = log(5/(4 delta)).  Results at or above 1 leave the bound's stated
// validity range and carry a warning.
inline EpsilonFromSigma epsilon_from_sigma_standard(double delta, double sigma,
                                                    const Sensitivity& sens) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::domain_error(
        "epsilon_from_sigma_standard: delta must be in (0, 1)");
  }
  if (!std::isfinite(sigma) || sigma <= 0.0) {
    throw std::domain_error(
        "epsilon_from_sigma_standard: sigma must be finite and > 0");
  }
  double big_l = detail::LogFiveOverFourDelta(delta);
  EpsilonFromSigma result;
  result.epsilon = sens.value * (kSqrt2 / sigma * std::sqrt(big_l));
  result.domain_warning = detail::EpsilonRangeWarning(result.epsilon);
  return result;
}

// Hard lower limit sensitivity / sqrt(2 epsilon) that every sufficient
// calibration stays above for delta < 1 and meets only as delta -> 1.
inline double sigma_floor(const PrivacyParams& params,
                          const Sensitivity& sens) {
  return sens.value * (1.0 / std::sqrt(2.0 * params.epsilon));
}

}  // namespace dpgauss

#endif  // DPGAUSS_CALIBRATION_H_
