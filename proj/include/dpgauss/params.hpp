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

#ifndef DPGAUSS_PARAMS_H_
#define DPGAUSS_PARAMS_H_

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

namespace dpgauss {

// Privacy budget (epsilon, delta) of an approximate-DP guarantee.
// epsilon must be finite and positive; delta must lie in (0, 1].
// Individual calibration routines may restrict delta further.
struct PrivacyParams {
  double epsilon;
  double delta;

  PrivacyParams(double epsilon_in, double delta_in)
      : epsilon(epsilon_in), delta(delta_in) {
    if (!std::isfinite(epsilon) || epsilon <= 0.0) {
      throw std::domain_error("PrivacyParams: epsilon must be finite and > 0");
    }
    if (!std::isfinite(delta) || delta <= 0.0 || delta > 1.0) {
      throw std::domain_error("PrivacyParams: delta must be in (0, 1]");
    }
  }
};

// Global L2 sensitivity of the query being privatized.  Zero is allowed
// (a constant query needs no noise).
struct Sensitivity {
  double value;

  explicit Sensitivity(double value_in = 1.0) : value(value_in) {
    if (!std::isfinite(value) || value < 0.0) {
      throw std::domain_error("Sensitivity: value must be finite and >= 0");
    }
  }
};

// Which formula produced a noise scale.
enum class CalibrationMethod {
  kStandard,
  kClosedForm,
  kSimplified,
  kOptimalSufficient,
  kAnalyticExact,
};

// Short stable names, also used by the CLI.
inline const char* to_string(CalibrationMethod method) {
  switch (method) {
    case CalibrationMethod::kStandard:
      return "standard";
    case CalibrationMethod::kClosedForm:
      return "closed-form";
    case CalibrationMethod::kSimplified:
      return "simplified";
    case CalibrationMethod::kOptimalSufficient:
      return "optimal";
    case CalibrationMethod::kAnalyticExact:
      return "analytic";
  }
  throw std::logic_error("to_string: unknown CalibrationMethod");
}

// Result of a calibration: the Gaussian noise scale sigma (>= 0, zero only
// for zero sensitivity), the method that produced it, the intermediate
// z = -log(delta (2 - delta)) where the method uses one, and a warning when
// the inputs left the method's stated validity range.
struct CalibrationResult {
  double sigma = 0.0;
  CalibrationMethod method = CalibrationMethod::kClosedForm;
  std::optional<double> z_value;
  std::optional<std::string> domain_warning;
};

}  // namespace dpgauss

#endif  // DPGAUSS_PARAMS_H_
