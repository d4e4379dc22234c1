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

#include "mfc/controller.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using mfc::ControllerConfig;
using mfc::HolderGainParams;
using mfc::InfluencePolicy;
using mfc::MatrixXd;
using mfc::Series;
using mfc::VectorXd;

namespace
{

VectorXd s1(double v) {return VectorXd::Constant(1, v);}

ControllerConfig<double> default_controller()
{
  return {HolderGainParams<double>::identity(1.0, 11.0 / 9.0), {0.35}, InfluencePolicy<double>::adaptive(1.5)};
}

}  // namespace

TEST(SlidingVariable, Examples)
{
  const std::vector<double> mu{0.35};
  const Series<double> zeros{s1(0), s1(0)};
  EXPECT_EQ(mfc::sliding_variable<double>(zeros, mu)(0), 0.0);
  const Series<double> flat{s1(1), s1(1)};
  EXPECT_DOUBLE_EQ(mfc::sliding_variable<double>(flat, mu)(0), 0.35);
  const std::vector<double> c3{0.5, 0.25};
  const Series<double> hist{s1(1), s1(2), s1(4)};
  EXPECT_DOUBLE_EQ(mfc::sliding_variable<double>(hist, c3)(0), 1.75);
  EXPECT_THROW(mfc::sliding_variable<double>(hist, mu), std::invalid_argument);
}

TEST(SlidingVariable, ConstantNonzeroErrorCannotSitOnManifold)
{
  for (double delta : {-2.0, 1e-6, 3.0}) {
    EXPECT_NEAR(mfc::sliding_variable_second_order<double>(s1(delta), s1(delta), 0.35)(0), 0.35 * delta, 1e-18);
  }
}

TEST(Schur, LiteralPolynomial)
{
  EXPECT_TRUE(mfc::schur_check<double>(std::vector<double>{0.35}));
  EXPECT_FALSE(mfc::schur_check<double>(std::vector<double>{1.5}));
  EXPECT_TRUE(mfc::schur_check<double>(std::vector<double>{}));
}

TEST(Schur, ManifoldPolynomialHasRootOneMinusMu)
{
  const auto poly = mfc::manifold_shift_polynomial<double>(std::vector<double>{0.35});
  ASSERT_EQ(poly.size(), 1u);
  EXPECT_NEAR(poly[0], -0.65, 1e-15);
  EXPECT_TRUE(mfc::manifold_is_schur<double>(std::vector<double>{0.35}));
  EXPECT_FALSE(mfc::manifold_is_schur<double>(std::vector<double>{2.5}));
  // (z-1)^2 + 0.5(z-1) + 0.25 = z^2 - 1.5z + 0.75
  const auto p3 = mfc::manifold_shift_polynomial<double>(std::vector<double>{0.5, 0.25});
  EXPECT_NEAR(p3[0], -1.5, 1e-15);
  EXPECT_NEAR(p3[1], 0.75, 1e-15);
}

TEST(Manifold, ErrorDecaysGeometrically)
{
  const double mu = 0.35;
  double e = 2.0;
  for (int k = 0; k < 50; ++k) {
    const double next = (1.0 - mu) * e;
    EXPECT_EQ(mfc::sliding_variable_second_order<double>(s1(e), s1(next), mu)(0),
      next - e + mu * e);
    EXPECT_NEAR(mfc::sliding_variable_second_order<double>(s1(e), s1(next), mu)(0), 0.0, 1e-15);
    e = next;
  }
}

TEST(ControlRhs, PureFeedforward)
{
  const auto cfg = default_controller();
  const Series<double> zeros{s1(0), s1(0)};
  EXPECT_EQ(mfc::control_rhs_general<double>(zeros, s1(0.7), s1(0), cfg)(0), 0.7);
  const mfc::SecondOrderTerms<double> terms{s1(0), s1(0), s1(1.0), s1(1.5), s1(2.5), s1(0)};
  EXPECT_DOUBLE_EQ(mfc::control_rhs_second_order(terms, cfg)(0), 0.5);
}

TEST(ControlRhs, UnitSlidingVariable)
{
  // e_k = e_{k+1} = 1/mu gives s = 1 with zero first difference.
  const auto cfg = default_controller();
  const Series<double> errs{s1(1.0 / 0.35), s1(1.0 / 0.35)};
  EXPECT_NEAR(mfc::control_rhs_general<double>(errs, s1(0), s1(0), cfg)(0), -1.0, 1e-15);
}

TEST(ControlRhs, SecondOrderFormMatchesGeneral)
{
  const auto cfg = default_controller();
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> uni(-5.0, 5.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const mfc::SecondOrderTerms<double> t{
      s1(uni(rng)), s1(uni(rng)), s1(uni(rng)), s1(uni(rng)), s1(uni(rng)), s1(uni(rng))};
    const Series<double> errs{t.e_k, t.e_kp1};
    const VectorXd dd = t.yd_kp2 - 2.0 * t.yd_kp1 + t.yd_k;
    const double a = mfc::control_rhs_second_order(t, cfg)(0);
    const double b = mfc::control_rhs_general<double>(errs, dd, t.f_hat, cfg)(0);
    ASSERT_NEAR(a, b, 1e-12 * std::max(1.0, std::abs(a)));
  }
}

TEST(IdealSlidingDynamics, ContractsWithLyapunovClosedForm)
{
  const auto gain = default_controller().gain;
  const double q = gain.exponent(), eta = gain.margin();
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> uni(-20.0, 20.0);
  for (int trial = 0; trial < 50; ++trial) {
    VectorXd s = s1(uni(rng));
    for (int k = 0; k < 200; ++k) {
      const double c = mfc::holder_gain(s, gain);
      const VectorXd next = mfc::holder_contract(s, gain);
      ASSERT_LT(next.norm(), s.norm());
      const double v = s.squaredNorm(), v_next = next.squaredNorm();
      ASSERT_NEAR((v - v_next) / (eta * (1.0 + c) * (1.0 + c) * std::pow(v, 1.0 / q)), 1.0, 1e-12);
      s = next;
    }
  }
  EXPECT_TRUE(mfc::holder_contract(s1(0.0), gain).isZero());
}

TEST(InfluenceGain, AdaptiveScalar)
{
  const auto policy = InfluencePolicy<double>::adaptive(1.5);
  EXPECT_EQ(mfc::influence_gain<double>(policy, s1(0.0))(0, 0), 1.5);
  EXPECT_NEAR(mfc::influence_gain<double>(policy, s1(1e6))(0, 0), 3.0, 1e-15);
  EXPECT_THROW(mfc::influence_gain<double>(policy, VectorXd::Zero(2)), std::invalid_argument);
  const MatrixXd g = MatrixXd::Constant(1, 1, 4.0);
  EXPECT_EQ(mfc::influence_gain<double>(InfluencePolicy<double>::fixed(g), s1(9.0)), g);
}

TEST(InfluenceSignal, SumOfFeedbackTerms)
{
  const auto cfg = default_controller();
  const mfc::SecondOrderTerms<double> t{s1(0.2), s1(-0.1), s1(0), s1(0), s1(0), s1(0.05)};
  const VectorXd s = mfc::sliding_variable_second_order(t.e_k, t.e_kp1, 0.35);
  const double expected = -mfc::holder_damping(s, cfg.gain) * s(0) - 0.35 * (-0.3) - 0.05;
  EXPECT_NEAR(mfc::influence_signal(t, cfg)(0), expected, 1e-15);
}

TEST(SolveInput, Examples)
{
  EXPECT_EQ(mfc::solve_input<double>(MatrixXd::Constant(1, 1, 2.0), s1(3.0))(0), 1.5);
  MatrixXd wide(1, 2);
  wide << 1, 0;
  const VectorXd u = mfc::solve_input<double>(wide, s1(5.0));
  EXPECT_NEAR(u(0), 5.0, 1e-15);
  EXPECT_NEAR(u(1), 0.0, 1e-15);
}

TEST(SolveInput, MinimumNormResidual)
{
  std::mt19937_64 rng(99);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 200; ++trial) {
    const MatrixXd g = MatrixXd::NullaryExpr(2, 3, [&] {return normal(rng);});
    const VectorXd rhs = VectorXd::NullaryExpr(2, [&] {return normal(rng);});
    const VectorXd u = mfc::solve_input<double>(g, rhs);
    ASSERT_LT((g * u - rhs).norm(), 1e-10 * std::max(1.0, rhs.norm()));
    // Minimum norm: u lies in the row space of g.
    const VectorXd null = g.fullPivLu().kernel().col(0);
    ASSERT_NEAR(u.dot(null), 0.0, 1e-10);
  }
}

TEST(SolveInput, RankDeficientThrows)
{
  MatrixXd g(2, 2);
  g << 1, 2, 2, 4;
  EXPECT_THROW(mfc::solve_input<double>(g, VectorXd::Ones(2)), std::invalid_argument);
}

TEST(ControllerConfig, Validation)
{
  EXPECT_NO_THROW(default_controller().validate());
  auto bad = default_controller();
  bad.coefficients = {0.2, 0.5};
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad.coefficients = {1.0};
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  auto tall = default_controller();
  tall.influence = InfluencePolicy<double>::fixed(MatrixXd::Ones(2, 1));
  EXPECT_THROW(tall.validate(), std::invalid_argument);
  EXPECT_TRUE(mfc::gains_separated<double>({HolderGainParams<double>::scalar(2.1, 2.0, 1.4)}, default_controller()));
  EXPECT_FALSE(mfc::gains_separated<double>({HolderGainParams<double>::scalar(2.1, 0.5, 1.4)}, default_controller()));
}
