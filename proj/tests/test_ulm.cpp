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

#include "mfc/plants.hpp"
#include "mfc/ulm.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using mfc::HolderGainParams;
using mfc::Series;
using mfc::UlmConfig;
using mfc::UlmObserverOrder;
using mfc::UlmObserverState;
using mfc::VectorXd;

namespace
{

VectorXd s1(double v) {return VectorXd::Constant(1, v);}

HolderGainParams<double> default_gain() {return HolderGainParams<double>::identity(1.5, 9.0 / 7.0);}

UlmConfig<double> config(UlmObserverOrder order) {return {2, default_gain(), order};}

/// Feeds the sequence F_0, F_1, ... and returns the estimate error F̂_{k+1} - F_{k+1} after each sample.
std::vector<double> track(UlmObserverOrder order, const std::function<double(int)> & f, int steps)
{
  auto state = UlmObserverState<double>::zero(1);
  Series<double> history;
  std::vector<double> err;
  for (int k = 0; k < steps; ++k) {
    history.push_back(s1(f(k)));
    state = mfc::ulm_predict<double>(state, history, config(order));
    err.push_back(state.f_hat(0) - f(k + 1));
  }
  return err;
}

}  // namespace

TEST(ReconstructF, Examples)
{
  const VectorXd zeros[] = {s1(0), s1(0), s1(0)};
  EXPECT_EQ(mfc::reconstruct_f<double>(zeros, s1(0), 2)(0), 0.0);
  const VectorXd window[] = {s1(1), s1(2), s1(4)};
  EXPECT_EQ(mfc::reconstruct_f<double>(window, s1(0), 2)(0), 1.0);
  EXPECT_THROW(mfc::reconstruct_f<double>(window, s1(0), 3), std::invalid_argument);
}

TEST(ReconstructF, RoundTripsThroughSyntheticPlant)
{
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  for (bool constant : {true, false}) {
    VectorXd y0 = s1(uni(rng)), y1 = s1(uni(rng));
    double worst = 0.0;
    for (int k = 0; k < 500; ++k) {
      const double f = constant ? 0.7 : 0.3 * std::sin(0.05 * k) + 0.01 * k;
      const mfc::MatrixXd g = mfc::MatrixXd::Constant(1, 1, 1.0 + std::abs(uni(rng)));
      const VectorXd u = s1(uni(rng));
      const VectorXd y2 = mfc::synthetic_ulm_plant_step<double>(y0, y1, s1(f), g, u);
      const VectorXd window[] = {y0, y1, y2};
      const double rec = mfc::reconstruct_f<double>(window, g * u, 2)(0);
      worst = std::max(worst, std::abs(rec - f) / std::max(1.0, y2.norm()));
      y0 = y1;
      y1 = y2;
    }
    EXPECT_LT(worst, 1e-13);
  }
}

TEST(FirstOrder, FixedPoint)
{
  EXPECT_EQ(mfc::first_order_step<double>(s1(0.4), s1(0.4), default_gain())(0), 0.4);
}

TEST(FirstOrder, ConstantFContractsWithLyapunovClosedForm)
{
  // Against constant F the error obeys e_{k+1} = D(e_k)·e_k; the closed form
  // is checked on that map, the observer form against the map.
  const auto gain = default_gain();
  const double r = gain.exponent(), lambda = gain.margin();
  for (double f : {1.0, -3.0, 0.02}) {
    VectorXd f_hat = s1(0.0);
    VectorXd e = s1(-f);
    for (int k = 0; k < 300; ++k) {
      const double d = mfc::holder_gain(e, gain);
      const VectorXd e_next = mfc::holder_contract(e, gain);
      f_hat = mfc::first_order_step<double>(f_hat, s1(f), gain);
      ASSERT_NEAR(f_hat(0) - f, e_next(0), 1e-15 * std::max(1.0, std::abs(f)));
      ASSERT_LT(e_next.norm(), e.norm());
      const double v = e.squaredNorm(), v_next = e_next.squaredNorm();
      const double predicted = lambda * (1.0 + d) * (1.0 + d) * std::pow(v, 1.0 / r);
      ASSERT_NEAR((v - v_next) / predicted, 1.0, 1e-12);
      e = e_next;
    }
  }
}

TEST(FirstOrder, StepCountToTightTolerance)
{
  // From a zero estimate against F = 1; count cross-checked at 50 digits.
  VectorXd e = s1(-1.0);
  int k = 0;
  while (std::abs(e(0)) > 1e-9 && k < 100000) {
    e = mfc::holder_contract(e, default_gain());
    ++k;
  }
  EXPECT_EQ(k, 16869);
}

TEST(FirstOrder, ErrorPropagationIdentity)
{
  auto f = [](int k) {return std::sin(0.1 * k) + 0.02 * k;};
  VectorXd f_hat = s1(0.0);
  for (int k = 0; k < 400; ++k) {
    const VectorXd e = f_hat - s1(f(k));
    f_hat = mfc::first_order_step<double>(f_hat, s1(f(k)), default_gain());
    const double expected = mfc::holder_gain(e, default_gain()) * e(0) - (f(k + 1) - f(k));
    ASSERT_NEAR(f_hat(0) - f(k + 1), expected, 1e-12);
  }
}

TEST(SecondOrder, ErrorPropagationIdentity)
{
  auto f = [](int k) {return std::sin(0.1 * k) + 0.02 * k;};
  auto state = UlmObserverState<double>::zero(1);
  state.f_prev = s1(f(0));
  for (int k = 1; k < 400; ++k) {
    const VectorXd e = state.f_hat - s1(f(k));
    const VectorXd e_delta = state.delta_f_hat - s1(f(k) - f(k - 1));
    state = mfc::second_order_step<double>(state, s1(f(k)), default_gain());
    const double second_diff = f(k + 1) - 2.0 * f(k) + f(k - 1);
    const double expected = mfc::holder_gain(e, default_gain()) * e(0) +
      mfc::holder_gain(e_delta, default_gain()) * e_delta(0) - second_diff;
    ASSERT_NEAR(state.f_hat(0) - f(k + 1), expected, 1e-12);
  }
}

TEST(SecondOrder, RequiresWarmUp)
{
  EXPECT_THROW(
    mfc::second_order_step<double>(UlmObserverState<double>::zero(1), s1(1.0), default_gain()),
    std::invalid_argument);
}

TEST(SecondOrder, ZeroHistoryStaysZero)
{
  auto state = UlmObserverState<double>::zero(1);
  state.f_prev = s1(0.0);
  for (int k = 0; k < 5; ++k) {
    state = mfc::second_order_step<double>(state, s1(0.0), default_gain());
    EXPECT_EQ(state.f_hat(0), 0.0);
    EXPECT_EQ(state.delta_f_hat(0), 0.0);
  }
}

TEST(SecondOrder, ConstantFConverges)
{
  const auto err = track(UlmObserverOrder::Second, [](int) {return 1.0;}, 60000);
  EXPECT_LT(std::abs(err.back()), 1e-9);
}

TEST(Ramp, SecondOrderRemovesOffset)
{
  const auto err = track(UlmObserverOrder::Second, [](int k) {return 0.1 * k;}, 40000);
  EXPECT_LT(std::abs(err.back()), 1e-6);
}

TEST(Ramp, FirstOrderSettlesAtLagFixedPoint)
{
  // The ultimate error e solves e = D(e)·e - slope, i.e. e·(1 - D(e)) = -slope.
  const double slope = 0.1;
  const auto err = track(UlmObserverOrder::First, [slope](int k) {return slope * k;}, 5000);
  const double e = err.back();
  EXPECT_NEAR(e * mfc::holder_damping(s1(e), default_gain()), -slope, 1e-12);
  EXPECT_NEAR(e, -0.0595117, 1e-6);
  EXPECT_NEAR(err[err.size() - 2], e, 1e-12);
}

TEST(UlmPredict, EmptyHistoryKeepsZero)
{
  const auto state = UlmObserverState<double>::zero(2);
  const auto next = mfc::ulm_predict<double>(state, {}, config(UlmObserverOrder::First));
  EXPECT_TRUE(next.f_hat.isZero());
}

TEST(UlmPredict, SecondOrderSpendsFirstSampleOnWarmUp)
{
  const Series<double> history{s1(2.0)};
  const auto next = mfc::ulm_predict<double>(UlmObserverState<double>::zero(1), history,
      config(UlmObserverOrder::Second));
  EXPECT_EQ(next.f_hat(0), 0.0);
  ASSERT_TRUE(next.f_prev);
  EXPECT_EQ((*next.f_prev)(0), 2.0);
}

TEST(UlmPredict, SinusoidUltimateErrorShrinksWithVariation)
{
  double previous = std::numeric_limits<double>::infinity();
  for (double amplitude : {1.0, 0.3, 0.1, 0.03}) {
    auto f = [amplitude](int k) {return amplitude * std::sin(2.0 * std::numbers::pi * k / 200.0);};
    const auto err = track(UlmObserverOrder::First, f, 4000);
    double worst = 0.0;
    for (std::size_t i = 2000; i < err.size(); ++i) {
      worst = std::max(worst, std::abs(err[i]));
    }
    EXPECT_TRUE(std::isfinite(worst));
    EXPECT_LT(worst, previous) << "amplitude " << amplitude;
    previous = worst;
  }
}
