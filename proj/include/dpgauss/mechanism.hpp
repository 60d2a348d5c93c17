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

#ifndef DPGAUSS_MECHANISM_H_
#define DPGAUSS_MECHANISM_H_

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "dpgauss/calibration.hpp"
#include "dpgauss/exact.hpp"
#include "dpgauss/params.hpp"
#include "dpgauss/special_functions.hpp"

// The Gaussian mechanism itself: add sigma * Z to query outputs with a
// deterministic, seed-reproducible generator.

namespace dpgauss {

// A batch of query outputs to perturb with noise scale sigma.  Absent seed
// means: draw one from OS entropy and record it in the output.
struct NoiseRequest {
  std::vector<double> values;
  double sigma = 0.0;
  std::optional<std::uint64_t> seed;
};

// Perturbed values plus everything needed to reproduce them.  method and
// domain_warning are populated by calibrate_and_sample.
struct NoiseOutput {
  std::vector<double> noisy_values;
  double sigma_used = 0.0;
  std::optional<CalibrationMethod> method;
  std::uint64_t seed_used = 0;
  std::optional<std::string> domain_warning;
};

namespace detail {

// Uniform variate in the open interval (0, 1): the top 53 bits of the
// generator word, offset by half a step so 0 and 1 are unreachable.  Bit
// reproducible across platforms because mt19937_64 is fully specified.
inline double UniformOpen01(std::mt19937_64& gen) {
  return (static_cast<double>(gen() >> 11) + 0.5) * 0x1.0p-53;
}

inline std::uint64_t DrawEntropySeed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

}  // namespace detail

// Adds sigma * Z to every value, Z standard Gaussian via the inverse-CDF
// transform through std_normal_quantile.  Same seed, same output, bit for
// bit; sigma = 0 returns the input exactly.
inline NoiseOutput sample_gaussian_mechanism(const NoiseRequest& req) {
  if (req.values.empty()) {
    throw std::domain_error(
        "sample_gaussian_mechanism: values must be non-empty");
  }
  for (double value : req.values) {
    if (!std::isfinite(value)) {
      throw std::domain_error(
          "sample_gaussian_mechanism: values must be finite");
    }
  }
  if (!std::isfinite(req.sigma) || req.sigma < 0.0) {
    throw std::domain_error(
        "sample_gaussian_mechanism: sigma must be finite and >= 0");
  }
  NoiseOutput out;
  out.sigma_used = req.sigma;
  out.seed_used = req.seed ? *req.seed : detail::DrawEntropySeed();
  std::mt19937_64 gen(out.seed_used);
  out.noisy_values.reserve(req.values.size());
  for (double value : req.values) {
    double z = std_normal_quantile(detail::UniformOpen01(gen));
    out.noisy_values.push_back(value + req.sigma * z);
  }
  return out;
}

// Calibrates sigma with the chosen method, then samples.  Calibration
// domain errors propagate; the calibration's warning (standard bound outside
// its epsilon range) is passed through in the output metadata.
inline NoiseOutput calibrate_and_sample(const PrivacyParams& params,
                                        const Sensitivity& sens,
                                        CalibrationMethod method,
                                        const std::vector<double>& values,
                                        std::optional<std::uint64_t> seed) {
  CalibrationResult cal;
  switch (method) {
    case CalibrationMethod::kStandard:
      cal = standard_sigma(params, sens);
      break;
    case CalibrationMethod::kClosedForm:
      cal = closed_form_sigma(params, sens);
      break;
    case CalibrationMethod::kSimplified:
      cal = simplified_sigma(params, sens);
      break;
    case CalibrationMethod::kOptimalSufficient:
      cal = optimal_sufficient_sigma(params, sens);
      break;
    case CalibrationMethod::kAnalyticExact:
      cal = solve_analytic_sigma(params, sens);
      break;
  }
  NoiseRequest req;
  req.values = values;
  req.sigma = cal.sigma;
  req.seed = seed;
  NoiseOutput out = sample_gaussian_mechanism(req);
  out.method = cal.method;
  out.domain_warning = cal.domain_warning;
  return out;
}

}  // namespace dpgauss

#endif  // DPGAUSS_MECHANISM_H_
