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

#include "dpgauss/mechanism.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "gtest/gtest.h"
#include "dpgauss/calibration.hpp"
#include "dpgauss/params.hpp"
#include "dpgauss/special_functions.hpp"

namespace dpgauss {
namespace {

TEST(UniformOpen01, StaysStrictlyInsideUnitInterval) {
  std::mt19937_64 gen(12345);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    double u = detail::UniformOpen01(gen);
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000.0, 0.5, 0.005);
}

TEST(SampleGaussianMechanism, SeededRunsAreBitIdentical) {
  NoiseRequest req;
  req.values = {1.0, -2.5, 0.0, 1e6};
  req.sigma = 3.0;
  req.seed = 42;
  NoiseOutput a = sample_gaussian_mechanism(req);
  NoiseOutput b = sample_gaussian_mechanism(req);
  ASSERT_EQ(a.noisy_values.size(), req.values.size());
  for (std::size_t i = 0; i < a.noisy_values.size(); ++i) {
    EXPECT_EQ(a.noisy_values[i], b.noisy_values[i]);
  }
  EXPECT_EQ(a.seed_used, 42u);

  req.seed = 43;
  NoiseOutput c = sample_gaussian_mechanism(req);
  EXPECT_NE(a.noisy_values[0], c.noisy_values[0]);
}

TEST(SampleGaussianMechanism, MatchesInverseCdfPipeline) {
  NoiseRequest req;
  req.values = {10.0, 20.0, 30.0};
  req.sigma = 1.75;
  req.seed = 987654321;
  NoiseOutput out = sample_gaussian_mechanism(req);

  std::mt19937_64 gen(987654321);
  for (std::size_t i = 0; i < req.values.size(); ++i) {
    double u = (static_cast<double>(gen() >> 11) + 0.5) * 0x1.0p-53;
    double expected = req.values[i] + req.sigma * std_normal_quantile(u);
    EXPECT_EQ(out.noisy_values[i], expected) << "i=" << i;
  }
}

TEST(SampleGaussianMechanism, ZeroSigmaReturnsInputExactly) {
  NoiseRequest req;
  req.values = {3.25, -7.5, 0.0};
  req.sigma = 0.0;
  req.seed = 7;
  NoiseOutput out = sample_gaussian_mechanism(req);
  for (std::size_t i = 0; i < req.values.size(); ++i) {
    EXPECT_EQ(out.noisy_values[i], req.values[i]);
  }
}

TEST(SampleGaussianMechanism, DrawnSeedIsRecordedAndReproduces) {
  NoiseRequest req;
  req.values = {0.0, 0.0, 0.0};
  req.sigma = 1.0;
  NoiseOutput first = sample_gaussian_mechanism(req);

  req.seed = first.seed_used;
  NoiseOutput replay = sample_gaussian_mechanism(req);
  for (std::size_t i = 0; i < first.noisy_values.size(); ++i) {
    EXPECT_EQ(first.noisy_values[i], replay.noisy_values[i]);
  }
}

TEST(SampleGaussianMechanism, SampleMomentsMatchSigma) {
  NoiseRequest req;
  req.values.assign(200000, 0.0);
  req.sigma = 2.0;
  req.seed = 20260813;
  NoiseOutput out = sample_gaussian_mechanism(req);
  double mean = 0.0;
  for (double x : out.noisy_values) mean += x;
  mean /= static_cast<double>(out.noisy_values.size());
  double var = 0.0;
  for (double x : out.noisy_values) var += (x - mean) * (x - mean);
  var /= static_cast<double>(out.noisy_values.size() - 1);
  EXPECT_NEAR(mean, 0.0, 0.02);
  EXPECT_NEAR(var, 4.0, 0.12);
}

TEST(SampleGaussianMechanism, RejectsBadInput) {
  NoiseRequest req;
  req.sigma = 1.0;
  EXPECT_THROW(sample_gaussian_mechanism(req), std::domain_error);

  req.values = {1.0, std::nan("")};
  EXPECT_THROW(sample_gaussian_mechanism(req), std::domain_error);

  req.values = {1.0, std::numeric_limits<double>::infinity()};
  EXPECT_THROW(sample_gaussian_mechanism(req), std::domain_error);

  req.values = {1.0};
  req.sigma = -0.5;
  EXPECT_THROW(sample_gaussian_mechanism(req), std::domain_error);

  req.sigma = std::numeric_limits<double>::infinity();
  EXPECT_THROW(sample_gaussian_mechanism(req), std::domain_error);
}

TEST(CalibrateAndSample, UsesSigmaOfChosenMethod) {
  PrivacyParams params(1.0, 1e-5);
  Sensitivity sens(1.0);
  NoiseOutput out = calibrate_and_sample(
      params, sens, CalibrationMethod::kClosedForm, {5.0}, 11);
  EXPECT_EQ(out.sigma_used, closed_form_sigma(params, sens).sigma);
  ASSERT_TRUE(out.method.has_value());
  EXPECT_EQ(*out.method, CalibrationMethod::kClosedForm);
  EXPECT_FALSE(out.domain_warning.has_value());
}

TEST(CalibrateAndSample, PassesThroughStandardBoundWarning) {
  NoiseOutput out =
      calibrate_and_sample(PrivacyParams(2.0, 1e-5), Sensitivity(1.0),
                           CalibrationMethod::kStandard, {0.0}, 1);
  ASSERT_TRUE(out.domain_warning.has_value());
  EXPECT_NE(out.domain_warning->find("epsilon outside (0,1)"),
            std::string::npos);
}

TEST(CalibrateAndSample, CalibrationDomainErrorsPropagate) {
  EXPECT_THROW(
      calibrate_and_sample(PrivacyParams(1.0, 1.0), Sensitivity(1.0),
                           CalibrationMethod::kOptimalSufficient, {0.0}, 1),
      std::domain_error);
}

TEST(CalibrateAndSample, ZeroSensitivityLeavesValuesExact) {
  NoiseOutput out =
      calibrate_and_sample(PrivacyParams(1.0, 1e-5), Sensitivity(0.0),
                           CalibrationMethod::kClosedForm, {42.5, -1.25}, 3);
  EXPECT_EQ(out.sigma_used, 0.0);
  EXPECT_EQ(out.noisy_values[0], 42.5);
  EXPECT_EQ(out.noisy_values[1], -1.25);
}

TEST(CalibrateAndSample, MatchesDirectSamplingAtSameSigmaAndSeed) {
  PrivacyParams params(0.5, 1e-6);
  Sensitivity sens(2.0);
  std::vector<double> values = {1.0, 2.0, 3.0};
  NoiseOutput via_calibration = calibrate_and_sample(
      params, sens, CalibrationMethod::kOptimalSufficient, values, 99);

  NoiseRequest req;
  req.values = values;
  req.sigma = optimal_sufficient_sigma(params, sens).sigma;
  req.seed = 99;
  NoiseOutput direct = sample_gaussian_mechanism(req);
  for (std::size_t i = 0; i < values.size(); ++i) {
    EXPECT_EQ(via_calibration.noisy_values[i], direct.noisy_values[i]);
  }
}

}  // namespace
}  // namespace dpgauss
