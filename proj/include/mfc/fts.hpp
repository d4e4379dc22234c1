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

#ifndef MFC__FTS_HPP_
#define MFC__FTS_HPP_

/// \file
/// Hölder-continuous gain shared by the observers and the tracking law, and
/// an executable form of the discrete finite-time Lyapunov recursion.

#include "mfc/types.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace mfc
{

/// x^(1 - 1/exponent) for x >= 0, with an exact zero at x == 0.
template <typename Scalar>
Scalar holder_power(const Scalar & x, const Scalar & exponent)
{
  using std::exp;
  using std::log;
  if (!(x > Scalar(0))) {
    return Scalar(0);
  }
  return exp((Scalar(1) - Scalar(1) / exponent) * log(x));
}

/**
 * Parameters (W, m, p) of the gain
 *
 *     g(e) = ((eᵀWe)^(1-1/p) - m) / ((eᵀWe)^(1-1/p) + m)
 *
 * W is symmetric positive definite. A 1×1 weight acts as a multiple of the
 * identity on vectors of any dimension. The margin m is positive and the
 * exponent p lies in the open interval (1, 2). All checks happen here, so a
 * constructed object is always valid.
 */
template <typename Scalar>
class HolderGainParams
{
public:
  HolderGainParams(Matrix<Scalar> weight, Scalar margin, Scalar exponent)
  : weight_(std::move(weight)), margin_(margin), exponent_(exponent)
  {
    using std::abs;
    if (weight_.rows() == 0 || weight_.rows() != weight_.cols()) {
      throw std::invalid_argument("HolderGainParams: weight must be a non-empty square matrix");
    }
    const Scalar asym = (weight_ - weight_.transpose()).cwiseAbs().maxCoeff();
    if (asym > Eigen::NumTraits<Scalar>::dummy_precision() * weight_.cwiseAbs().maxCoeff()) {
      throw std::invalid_argument("HolderGainParams: weight must be symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> eig(weight_, Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success || !(eig.eigenvalues().minCoeff() > Scalar(0))) {
      throw std::invalid_argument("HolderGainParams: weight must be positive definite");
    }
    if (!(margin_ > Scalar(0))) {
      throw std::invalid_argument("HolderGainParams: margin must be positive");
    }
    if (!(exponent_ > Scalar(1) && exponent_ < Scalar(2))) {
      throw std::invalid_argument("HolderGainParams: exponent must lie in (1, 2)");
    }
  }

  static HolderGainParams scalar(Scalar weight, Scalar margin, Scalar exponent)
  {
    return HolderGainParams(Matrix<Scalar>::Constant(1, 1, weight), margin, exponent);
  }

  /// Identity weight, the form used by the ULM observers and the tracking law.
  static HolderGainParams identity(Scalar margin, Scalar exponent)
  {
    return scalar(Scalar(1), margin, exponent);
  }

  const Matrix<Scalar> & weight() const {return weight_;}
  Scalar margin() const {return margin_;}
  Scalar exponent() const {return exponent_;}

  bool is_scalar_weight() const {return weight_.rows() == 1;}
  bool is_identity_weight() const {return is_scalar_weight() && weight_(0, 0) == Scalar(1);}

  /// eᵀWe. Throws DimensionError unless W is 1×1 or matches e.
  template <typename Derived>
  Scalar quadratic(const Eigen::MatrixBase<Derived> & err) const
  {
    if (is_scalar_weight()) {
      return weight_(0, 0) * err.squaredNorm();
    }
    detail::require_same_size(weight_.rows(), err.size(), "HolderGainParams::quadratic");
    return err.dot(weight_ * err);
  }

  bool operator==(const HolderGainParams & other) const
  {
    return weight_ == other.weight_ && margin_ == other.margin_ && exponent_ == other.exponent_;
  }

private:
  Matrix<Scalar> weight_;
  Scalar margin_;
  Scalar exponent_;
};

/// The Hölder gain g(e) in [-1, 1). Equals -1 exactly at e = 0.
template <typename Derived, typename Scalar = typename Derived::Scalar>
Scalar holder_gain(const Eigen::MatrixBase<Derived> & err, const HolderGainParams<Scalar> & params)
{
  const Scalar xp = holder_power(params.quadratic(err), params.exponent());
  return (xp - params.margin()) / (xp + params.margin());
}

/// 2m / ((eᵀWe)^(1-1/p) + m), i.e. 1 - g(e); the feedback factor of the tracking law.
template <typename Derived, typename Scalar = typename Derived::Scalar>
Scalar holder_damping(const Eigen::MatrixBase<Derived> & err, const HolderGainParams<Scalar> & params)
{
  const Scalar xp = holder_power(params.quadratic(err), params.exponent());
  return Scalar(2) * params.margin() / (xp + params.margin());
}

/// The contraction e -> g(e)·e shared by every finite-time observer here.
template <typename Derived, typename Scalar = typename Derived::Scalar>
Vector<Scalar> holder_contract(const Eigen::MatrixBase<Derived> & err, const HolderGainParams<Scalar> & params)
{
  return holder_gain(err, params) * err;
}

// ---------------------------------------------------------------------------
// Finite-time Lyapunov recursion

/**
 * Inputs of the scalar recursion c_{k+1} = c_k - a_k·c_k^alpha.
 *
 * ratio_sequence holds a_0, a_1, ...; a_0 must be 1 (it is the ratio of the
 * rate to itself). When the recursion runs past the end of the sequence the
 * last entry is held.
 */
template <typename Scalar>
struct LyapunovRecursionSpec
{
  Scalar alpha;
  Scalar c0;
  std::vector<Scalar> ratio_sequence{Scalar(1)};
  std::size_t max_steps = 10000;

  void validate() const
  {
    if (!(alpha > Scalar(0) && alpha < Scalar(1))) {
      throw std::invalid_argument("LyapunovRecursionSpec: alpha must lie in (0, 1)");
    }
    if (c0 < Scalar(0)) {
      throw std::invalid_argument("LyapunovRecursionSpec: c0 must be non-negative");
    }
    if (ratio_sequence.empty() || ratio_sequence.front() != Scalar(1)) {
      throw std::invalid_argument("LyapunovRecursionSpec: ratio sequence must start with a_0 = 1");
    }
    for (const auto & a : ratio_sequence) {
      if (!(a > Scalar(0))) {
        throw std::invalid_argument("LyapunovRecursionSpec: every a_k must be positive");
      }
    }
    if (max_steps == 0) {
      throw std::invalid_argument("LyapunovRecursionSpec: max_steps must be positive");
    }
  }

  Scalar ratio(std::size_t k) const
  {
    return k < ratio_sequence.size() ? ratio_sequence[k] : ratio_sequence.back();
  }
};

template <typename Scalar>
struct LyapunovTrajectory
{
  std::vector<Scalar> c;
  /// First index with c_N == 0; empty if not reached within max_steps.
  std::optional<std::size_t> steps_to_zero;
};

/// Iterates the recursion, clamping the first non-positive update to exactly 0.
template <typename Scalar>
LyapunovTrajectory<Scalar> lyapunov_recursion(const LyapunovRecursionSpec<Scalar> & spec)
{
  using std::pow;
  spec.validate();
  LyapunovTrajectory<Scalar> out;
  out.c.push_back(spec.c0);
  if (spec.c0 == Scalar(0)) {
    out.steps_to_zero = 0;
    return out;
  }
  Scalar c = spec.c0;
  for (std::size_t k = 0; k < spec.max_steps; ++k) {
    const Scalar next = c - spec.ratio(k) * pow(c, spec.alpha);
    if (!(next > Scalar(0))) {
      out.c.push_back(Scalar(0));
      out.steps_to_zero = k + 1;
      return out;
    }
    out.c.push_back(next);
    c = next;
  }
  return out;
}

template <typename Scalar>
struct GammaRatioBound
{
  Scalar delta;
  /// Lower bound on a_k = gamma_k / gamma_0 while V_k/V_0 stays in (chi, 1).
  Scalar a_lower;
  /// epsilon = 2·delta - delta², so that a_lower = 1 - epsilon.
  Scalar epsilon;
};

/**
 * Lower bound on the rate ratio of the output observer for Lyapunov values
 * above chi·V_0, where mu = beta / (2 V_0)^(1-1/p).
 */
template <typename Scalar>
GammaRatioBound<Scalar> gamma_ratio_bound(Scalar chi, Scalar mu, Scalar exponent)
{
  if (!(chi > Scalar(0) && chi < Scalar(1))) {
    throw std::invalid_argument("gamma_ratio_bound: chi must lie in (0, 1)");
  }
  if (!(mu > Scalar(0))) {
    throw std::invalid_argument("gamma_ratio_bound: mu must be positive");
  }
  if (!(exponent > Scalar(1) && exponent < Scalar(2))) {
    throw std::invalid_argument("gamma_ratio_bound: exponent must lie in (1, 2)");
  }
  const Scalar t = holder_power(chi, exponent);
  const Scalar delta = mu * (Scalar(1) - t) / (t + mu);
  const Scalar one_minus = Scalar(1) - delta;
  return {delta, one_minus * one_minus, Scalar(2) * delta - delta * delta};
}

}  // namespace mfc

#endif  // MFC__FTS_HPP_
