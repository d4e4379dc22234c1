// Copyright 2026 The mfc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mfc/output_observer.hpp"
#include "mfc/plants.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using mfc::OutputObserverConfig;
using mfc::OutputObserverState;
using mfc::VectorXd;

namespace
{

OutputObserverConfig<double> default_gains()
{
  return {mfc::HolderGainParams<double>::scalar(2.1, 2.0, 7.0 / 5.0)};
}

VectorXd s1(double v) {return VectorXd::Constant(1, v);}

}  // namespace

TEST(OutputObserver, ZeroErrorTracksMeasurement)
{
  const auto state = OutputObserverState<double>::initialize(s1(0.3), s1(0.3));
  const auto next = mfc::fts_observer_step(state, s1(-1.25), default_gains());
  EXPECT_EQ(next.estimate(0), -1.25);
  EXPECT_EQ(next.last_error(0), 0.0);
}

TEST(OutputObserver, FirstStepFromDefaultInitialState)
{
  // 0.102 - (-0.14) = 0.242; one step evaluated with mpmath.
  const auto state = OutputObserverState<double>::initialize(s1(0.102), s1(-0.14));
  EXPECT_NEAR(state.last_error(0), 0.242, 1e-16);
  const auto next = mfc::fts_observer_step(state, s1(0.0), default_gains());
  EXPECT_NEAR(next.last_error(0), -0.1376842778600268561653468, 1e-15);
  EXPECT_LT(std::abs(next.last_error(0)), 0.242);
}

TEST(OutputObserver, ConstantSignalMonotoneAndAlternating)
{
  auto state = OutputObserverState<double>::initialize(s1(1.0), s1(0.0));
  double prev = 1.0;
  bool negative_gain_seen = false;
  for (int k = 0; k < 500; ++k) {
    const double gain = mfc::holder_gain(state.last_error, default_gains().gain);
    state = mfc::fts_observer_step(state, s1(0.0), default_gains());
    const double e = state.last_error(0);
    ASSERT_LT(std::abs(e), std::abs(prev));
    if (gain < 0) {
      negative_gain_seen = true;
      ASSERT_LT(e * prev, 0.0) << "sign must flip while the gain is negative, step " << k;
    }
    prev = e;
  }
  EXPECT_TRUE(negative_gain_seen);
}

TEST(OutputObserver, LyapunovDropMatchesClosedForm)
{
  const auto cfg = default_gains();
  const double p = cfg.gain.exponent();
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> init(-10.0, 10.0);
  for (int trial = 0; trial < 100; ++trial) {
    VectorXd e = s1(init(rng));
    for (int k = 0; k < 200; ++k) {
      const double v = mfc::observer_lyapunov(e, cfg);
      const VectorXd next = mfc::holder_contract(e, cfg.gain);
      const double v_next = mfc::observer_lyapunov(next, cfg);
      const double predicted = mfc::observer_lyapunov_rate(v, cfg) * std::pow(v, 1.0 / p);
      ASSERT_LT(v_next, v);
      ASSERT_NEAR((v - v_next) / predicted, 1.0, 1e-12);
      e = next;
    }
  }
}

TEST(OutputObserver, RateBelowSupremum)
{
  const auto cfg = default_gains();
  const double beta = 2.0, h = 1.0 - 1.0 / 1.4;
  for (double v = 1e-12; v < 1e12; v *= 3.7) {
    EXPECT_LT(mfc::observer_lyapunov_rate(v, cfg), 4.0 * beta / std::pow(2.0, h));
  }
}

TEST(AsymptoticObserver, Ratio)
{
  EXPECT_NEAR(mfc::asymptotic_observer_step<double>(s1(1.0), 2.0)(0), -1.0 / 3.0, 1e-16);
  EXPECT_EQ(mfc::asymptotic_observer_step<double>(s1(0.0), 2.0)(0), 0.0);
  EXPECT_EQ(mfc::asymptotic_observer_step<double>(s1(3.0), 1.0)(0), 0.0);
  EXPECT_THROW(mfc::asymptotic_observer_step<double>(s1(1.0), 0.0), std::invalid_argument);
}

TEST(StepsToTolerance, Regression)
{
  const auto cfg = default_gains();
  EXPECT_EQ(mfc::steps_to_tolerance<double>(s1(0.0), cfg, 1e-6, 10), 0u);
  // Step counts cross-checked against a 50-digit iteration.
  EXPECT_EQ(mfc::steps_to_tolerance<double>(s1(1.0), cfg, 1e-6, 100000), 3793u);
  EXPECT_EQ(mfc::steps_to_tolerance<double>(s1(10.0), cfg, 1e-6, 100000), 3794u);
  EXPECT_FALSE(mfc::steps_to_tolerance<double>(s1(1.0), cfg, 1e-6, 200));
}

TEST(StepsToTolerance, SlowerThanGeometricBaselineNearZero)
{
  // Close to zero the gain tends to -1, so the finite-time map contracts
  // sub-geometrically and loses to the fixed-ratio map at small tolerances.
  const auto cfg = default_gains();
  for (double e0 : {1.0, 2.5, 10.0}) {
    const auto fts = mfc::steps_to_tolerance<double>(s1(e0), cfg, 1e-6, 100000);
    const auto asym = mfc::asymptotic_steps_to_tolerance<double>(s1(e0), 2.0, 1e-6, 100000);
    ASSERT_TRUE(fts && asym);
    EXPECT_GT(*fts, *asym);
  }
  EXPECT_EQ(mfc::asymptotic_steps_to_tolerance<double>(s1(1.0), 2.0, 1e-6, 100), 13u);
}

TEST(OutputObserver, NoisyMeasurementErrorStaysBounded)
{
  // Reported bound only: after the transient the estimate stays within a few
  // noise amplitudes of the truth.
  const auto cfg = default_gains();
  mfc::BumpNoise<double> noise({0.018, 9});
  const double truth = 0.4;
  auto state = OutputObserverState<double>::initialize(s1(0.0), s1(truth + noise()));
  double worst = 0.0;
  for (int k = 1; k < 5000; ++k) {
    state = mfc::fts_observer_step(state, s1(truth + noise()), cfg);
    if (k > 100) {
      worst = std::max(worst, std::abs(state.estimate(0) - truth));
    }
  }
  RecordProperty("steady_state_max_abs_error", std::to_string(worst));
  EXPECT_LT(worst, 2.0 * 0.018);
}
