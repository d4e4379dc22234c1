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

#ifndef MFC__CONTROLLER_HPP_
#define MFC__CONTROLLER_HPP_

/// \file
/// Sliding variable, the order-nu model-free tracking law and its second
/// order form, and the influence matrix used to turn the law's right-hand
/// side into an input.

#include "mfc/finite_difference.hpp"
#include "mfc/fts.hpp"
#include "mfc/output_observer.hpp"
#include "mfc/types.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

namespace mfc
{

template <typename Scalar>
struct InfluencePolicy
{
  enum class Kind { FixedMatrix, AdaptiveScalar };

  Kind kind = Kind::AdaptiveScalar;
  Matrix<Scalar> matrix;  ///< FixedMatrix only.
  Scalar base = Scalar(1.5);  ///< AdaptiveScalar only.

  static InfluencePolicy fixed(Matrix<Scalar> g) {return {Kind::FixedMatrix, std::move(g), Scalar(0)};}
  static InfluencePolicy adaptive(Scalar base) {return {Kind::AdaptiveScalar, Matrix<Scalar>(), base};}
};

template <typename Scalar>
struct ControllerConfig
{
  /// (eta, q) with identity weight.
  HolderGainParams<Scalar> gain;
  /// c_1 .. c_{nu-1}; a single mu for nu = 2.
  std::vector<Scalar> coefficients;
  InfluencePolicy<Scalar> influence;

  int order_nu() const {return static_cast<int>(coefficients.size()) + 1;}

  void validate() const
  {
    if (!gain.is_identity_weight()) {
      throw std::invalid_argument("ControllerConfig: controller gain uses the identity weight");
    }
    Scalar prev(1);
    for (const auto & c : coefficients) {
      if (!(c < prev && c > Scalar(0))) {
        throw std::invalid_argument("ControllerConfig: coefficients must satisfy 1 > c_1 > ... > c_{nu-1} > 0");
      }
      prev = c;
    }
    if (influence.kind == InfluencePolicy<Scalar>::Kind::FixedMatrix) {
      if (influence.matrix.size() == 0 || influence.matrix.cols() < influence.matrix.rows()) {
        throw std::invalid_argument("ControllerConfig: fixed influence matrix must be l×m with m >= l");
      }
    } else if (!(influence.base > Scalar(0))) {
      throw std::invalid_argument("ControllerConfig: adaptive influence base must be positive");
    }
  }
};

/// True when eta < beta and q < p, so the output observer settles before the tracking law.
template <typename Scalar>
bool gains_separated(const OutputObserverConfig<Scalar> & observer, const ControllerConfig<Scalar> & controller)
{
  return controller.gain.margin() < observer.gain.margin() &&
         controller.gain.exponent() < observer.gain.exponent();
}

/// s = e^(nu-1) + c_1·e^(nu-2) + ... + c_{nu-1}·e, from e_k..e_{k+nu-1} (oldest first).
template <typename Scalar>
Vector<Scalar> sliding_variable(std::span<const Vector<Scalar>> errors, std::span<const Scalar> coefficients)
{
  const std::size_t nu = coefficients.size() + 1;
  if (errors.size() != nu) {
    throw std::invalid_argument("sliding_variable: error history length must equal nu");
  }
  Series<Scalar> diff(errors.begin(), errors.end());
  // diffs[j] holds e_k^(j).
  Series<Scalar> diffs;
  diffs.push_back(diff.front());
  for (std::size_t j = 1; j < nu; ++j) {
    diff = forward_difference(std::move(diff), 1);
    diffs.push_back(diff.front());
  }
  Vector<Scalar> s = diffs[nu - 1];
  for (std::size_t i = 1; i < nu; ++i) {
    s += coefficients[i - 1] * diffs[nu - 1 - i];
  }
  return s;
}

/// Roots of z^n + c_1 z^(n-1) + ... + c_n via companion-matrix eigenvalues.
template <typename Scalar>
std::vector<std::complex<Scalar>> polynomial_roots(std::span<const Scalar> coefficients)
{
  const auto n = static_cast<Eigen::Index>(coefficients.size());
  if (n == 0) {
    return {};
  }
  Matrix<Scalar> companion = Matrix<Scalar>::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    companion(0, j) = -coefficients[static_cast<std::size_t>(j)];
  }
  for (Eigen::Index i = 1; i < n; ++i) {
    companion(i, i - 1) = Scalar(1);
  }
  Eigen::EigenSolver<Matrix<Scalar>> eig(companion, false);
  std::vector<std::complex<Scalar>> roots;
  for (Eigen::Index i = 0; i < n; ++i) {
    roots.push_back(eig.eigenvalues()(i));
  }
  return roots;
}

/// Whether z^(nu-1) + c_1 z^(nu-2) + ... + c_{nu-1} has every root strictly inside the unit circle.
template <typename Scalar>
bool schur_check(std::span<const Scalar> coefficients)
{
  using std::abs;
  for (const auto & root : polynomial_roots(coefficients)) {
    if (!(abs(root) < Scalar(1))) {
      return false;
    }
  }
  return true;
}

/**
 * Schur test of the recurrence that s ≡ 0 actually imposes on e, i.e. the
 * polynomial in the shift z obtained by writing each difference as (z - 1).
 * For nu = 2 its root is 1 - mu, the per-step decay ratio on the manifold.
 */
template <typename Scalar>
std::vector<Scalar> manifold_shift_polynomial(std::span<const Scalar> coefficients)
{
  // Expand (z-1)^(n) + c_1 (z-1)^(n-1) + ... + c_n into monic coefficients.
  const std::size_t n = coefficients.size();
  std::vector<Scalar> poly(n + 1, Scalar(0));  // poly[i] multiplies z^(n-i)
  auto add_power = [&](std::size_t deg, Scalar weight) {
      // (z-1)^deg = sum_j binom(deg, j) z^(deg-j) (-1)^j
      Scalar binom(1);
      for (std::size_t j = 0; j <= deg; ++j) {
        const Scalar sign = (j % 2 == 0) ? Scalar(1) : Scalar(-1);
        poly[n - deg + j] += weight * sign * binom;
        binom = binom * Scalar(deg - j) / Scalar(j + 1);
      }
    };
  add_power(n, Scalar(1));
  for (std::size_t i = 1; i <= n; ++i) {
    add_power(n - i, coefficients[i - 1]);
  }
  return std::vector<Scalar>(poly.begin() + 1, poly.end());
}

template <typename Scalar>
bool manifold_is_schur(std::span<const Scalar> coefficients)
{
  const auto shifted = manifold_shift_polynomial(coefficients);
  return schur_check(std::span<const Scalar>(shifted));
}

/**
 * Right-hand side G_k·u_k of the order-nu tracking law:
 *
 *     (y^d)^(nu) - K(s)·s - F̂ - c_1·e^(nu-1) - ... - c_{nu-1}·e^(1)
 *
 * with K(s) = 2 eta / ((sᵀs)^(1-1/q) + eta). `errors` holds e_k..e_{k+nu-1}.
 */
template <typename Scalar>
Vector<Scalar> control_rhs_general(
  std::span<const Vector<Scalar>> errors, const Vector<Scalar> & desired_diff, const Vector<Scalar> & f_hat,
  const ControllerConfig<Scalar> & config)
{
  const std::span<const Scalar> coeffs(config.coefficients);
  const Vector<Scalar> s = sliding_variable(errors, coeffs);
  detail::require_same_size(s.size(), desired_diff.size(), "control_rhs_general");
  detail::require_same_size(s.size(), f_hat.size(), "control_rhs_general");
  const std::size_t nu = coeffs.size() + 1;

  Vector<Scalar> rhs = desired_diff - holder_damping(s, config.gain) * s - f_hat;
  Series<Scalar> diff(errors.begin(), errors.end());
  for (std::size_t j = 1; j < nu; ++j) {
    diff = forward_difference(std::move(diff), 1);
    // diff.front() is e^(j), weighted by c_{nu-j}.
    rhs -= coeffs[nu - 1 - j] * diff.front();
  }
  return rhs;
}

/// Inputs of the second order law at one decision instant.
template <typename Scalar>
struct SecondOrderTerms
{
  Vector<Scalar> e_k;
  Vector<Scalar> e_kp1;
  Vector<Scalar> yd_k;
  Vector<Scalar> yd_kp1;
  Vector<Scalar> yd_kp2;
  Vector<Scalar> f_hat;
};

/// s_k = e_{k+1} - e_k + mu·e_k.
template <typename Scalar>
Vector<Scalar> sliding_variable_second_order(const Vector<Scalar> & e_k, const Vector<Scalar> & e_kp1, Scalar mu)
{
  detail::require_same_size(e_k.size(), e_kp1.size(), "sliding_variable_second_order");
  return e_kp1 - e_k + mu * e_k;
}

template <typename Scalar>
Scalar second_order_mu(const ControllerConfig<Scalar> & config)
{
  if (config.coefficients.size() != 1) {
    throw std::invalid_argument("second order law requires exactly one coefficient (mu)");
  }
  return config.coefficients.front();
}

/**
 * Right-hand side of the second order law:
 *
 *     y^d_{k+2} - 2y^d_{k+1} + y^d_k - K(s)·(e_{k+1} - e_k) + C(s)·mu·e_k - mu·e_{k+1} - F̂
 */
template <typename Scalar>
Vector<Scalar> control_rhs_second_order(const SecondOrderTerms<Scalar> & in, const ControllerConfig<Scalar> & config)
{
  const Scalar mu = second_order_mu(config);
  const auto l = in.e_k.size();
  for (const auto * v : {&in.e_kp1, &in.yd_k, &in.yd_kp1, &in.yd_kp2, &in.f_hat}) {
    detail::require_same_size(l, v->size(), "control_rhs_second_order");
  }
  const Vector<Scalar> s = sliding_variable_second_order(in.e_k, in.e_kp1, mu);
  const Scalar damping = holder_damping(s, config.gain);
  const Scalar contraction = holder_gain(s, config.gain);
  return in.yd_kp2 - Scalar(2) * in.yd_kp1 + in.yd_k - damping * (in.e_kp1 - in.e_k) +
         contraction * mu * in.e_k - mu * in.e_kp1 - in.f_hat;
}

/// E = -K(s)·s - mu·e^(1) - F̂, the signal driving the adaptive influence gain.
template <typename Scalar>
Vector<Scalar> influence_signal(const SecondOrderTerms<Scalar> & in, const ControllerConfig<Scalar> & config)
{
  const Scalar mu = second_order_mu(config);
  const Vector<Scalar> s = sliding_variable_second_order(in.e_k, in.e_kp1, mu);
  return -holder_damping(s, config.gain) * s - mu * (in.e_kp1 - in.e_k) - in.f_hat;
}

/// FixedMatrix: G. AdaptiveScalar (SISO only): base·(1 + tanh‖E‖).
template <typename Scalar>
Matrix<Scalar> influence_gain(const InfluencePolicy<Scalar> & policy, const Vector<Scalar> & signal)
{
  using std::tanh;
  if (policy.kind == InfluencePolicy<Scalar>::Kind::FixedMatrix) {
    return policy.matrix;
  }
  if (signal.size() != 1) {
    throw std::invalid_argument("influence_gain: adaptive scalar policy requires a single output");
  }
  return Matrix<Scalar>::Constant(1, 1, policy.base * (Scalar(1) + tanh(signal.norm())));
}

/// Exact solve for square G, minimum-norm u = Gᵀ(GGᵀ)⁻¹·rhs for wide G.
template <typename Scalar>
Vector<Scalar> solve_input(const Matrix<Scalar> & g, const Vector<Scalar> & rhs)
{
  detail::require_same_size(g.rows(), rhs.size(), "solve_input");
  Eigen::FullPivLU<Matrix<Scalar>> lu(g);
  if (lu.rank() < g.rows()) {
    throw std::invalid_argument("solve_input: influence matrix must have full row rank");
  }
  if (g.rows() == g.cols()) {
    return lu.solve(rhs);
  }
  const Matrix<Scalar> gram = g * g.transpose();
  return g.transpose() * gram.ldlt().solve(rhs);
}

}  // namespace mfc

#endif  // MFC__CONTROLLER_HPP_
