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

#ifndef MFC__OUTPUT_OBSERVER_HPP_
#define MFC__OUTPUT_OBSERVER_HPP_

/// \file
/// Finite-time stable output observer that filters measured outputs before
/// they are used for feedback, and the linear asymptotic observer it is
/// compared against.

#include "mfc/fts.hpp"
#include "mfc/types.hpp"

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>

namespace mfc
{

template <typename Scalar>
struct OutputObserverConfig
{
  /// (L, beta, p): weight, margin and exponent of the observer gain.
  HolderGainParams<Scalar> gain;
};

template <typename Scalar>
struct OutputObserverState
{
  Vector<Scalar> estimate;
  /// estimate - measurement at the same sample.
  Vector<Scalar> last_error;

  /// Seeds the observer with an initial estimate and the first measurement.
  static OutputObserverState initialize(Vector<Scalar> initial_estimate, const Vector<Scalar> & measurement)
  {
    detail::require_same_size(initial_estimate.size(), measurement.size(), "OutputObserverState");
    Vector<Scalar> err = initial_estimate - measurement;
    return {std::move(initial_estimate), std::move(err)};
  }
};

/// ŷ_{k+1} = y_{k+1} + B(e_k)·e_k, with e_k the previous estimate error.
template <typename Scalar>
OutputObserverState<Scalar> fts_observer_step(
  const OutputObserverState<Scalar> & state, const Vector<Scalar> & measurement,
  const OutputObserverConfig<Scalar> & config)
{
  detail::require_same_size(state.estimate.size(), measurement.size(), "fts_observer_step");
  detail::require_same_size(state.last_error.size(), measurement.size(), "fts_observer_step");
  Vector<Scalar> correction = holder_contract(state.last_error, config.gain);
  OutputObserverState<Scalar> next;
  next.estimate = measurement + correction;
  next.last_error = std::move(correction);
  return next;
}

/// e_{k+1} = ((1 - beta)/(1 + beta))·e_k.
template <typename Scalar>
Vector<Scalar> asymptotic_observer_step(const Vector<Scalar> & error, Scalar beta)
{
  if (!(beta > Scalar(0))) {
    throw std::invalid_argument("asymptotic_observer_step: beta must be positive");
  }
  return ((Scalar(1) - beta) / (Scalar(1) + beta)) * error;
}

/// V = ½·eᵀLe, the observer's Lyapunov value.
template <typename Scalar>
Scalar observer_lyapunov(const Vector<Scalar> & error, const OutputObserverConfig<Scalar> & config)
{
  return config.gain.quadratic(error) / Scalar(2);
}

/// Closed-form rate gamma(V) in V_{k+1} - V_k = -gamma·V^(1/p) for the noiseless error map.
template <typename Scalar>
Scalar observer_lyapunov_rate(Scalar lyapunov, const OutputObserverConfig<Scalar> & config)
{
  using std::pow;
  const Scalar p = config.gain.exponent();
  const Scalar beta = config.gain.margin();
  const Scalar h = Scalar(1) - Scalar(1) / p;
  const Scalar denom = holder_power(Scalar(2) * lyapunov, p) + beta;
  return Scalar(4) * beta * pow(Scalar(2), h) * pow(lyapunov, Scalar(2) * h) / (denom * denom);
}

/// Number of noiseless error-map iterations until ‖e‖ <= tol; empty past `cap`.
template <typename Scalar>
std::optional<std::size_t> steps_to_tolerance(
  Vector<Scalar> error, const OutputObserverConfig<Scalar> & config, Scalar tol, std::size_t cap)
{
  if (!(tol > Scalar(0))) {
    throw std::invalid_argument("steps_to_tolerance: tol must be positive");
  }
  for (std::size_t k = 0; k <= cap; ++k) {
    if (error.norm() <= tol) {
      return k;
    }
    error = holder_contract(error, config.gain);
  }
  return std::nullopt;
}

/// Same count for the asymptotic observer with margin beta (comparison baseline).
template <typename Scalar>
std::optional<std::size_t> asymptotic_steps_to_tolerance(
  Vector<Scalar> error, Scalar beta, Scalar tol, std::size_t cap)
{
  for (std::size_t k = 0; k <= cap; ++k) {
    if (error.norm() <= tol) {
      return k;
    }
    error = asymptotic_observer_step(error, beta);
  }
  return std::nullopt;
}

}  // namespace mfc

#endif  // MFC__OUTPUT_OBSERVER_HPP_
