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

#ifndef MFC__ULM_HPP_
#define MFC__ULM_HPP_

/// \file
/// Ultra-local model y^(nu)_k = F_k + G_k·u_k: reconstruction of F from
/// input-output history and the first/second order finite-time observers
/// that predict it.

#include "mfc/finite_difference.hpp"
#include "mfc/fts.hpp"
#include "mfc/types.hpp"

#include <optional>
#include <span>
#include <stdexcept>

namespace mfc
{

enum class UlmObserverOrder { First, Second };

template <typename Scalar>
struct UlmConfig
{
  int order_nu = 2;
  /// (lambda, r) with identity weight.
  HolderGainParams<Scalar> gain;
  UlmObserverOrder observer_order = UlmObserverOrder::First;

  void validate() const
  {
    if (order_nu < 1) {
      throw std::invalid_argument("UlmConfig: order_nu must be at least 1");
    }
    if (!gain.is_identity_weight()) {
      throw std::invalid_argument("UlmConfig: ULM observer gain uses the identity weight");
    }
  }
};

template <typename Scalar>
struct UlmObserverState
{
  Vector<Scalar> f_hat;
  /// Last reconstructed F.
  std::optional<Vector<Scalar>> f_prev;
  /// Second order only: estimate of the first difference of F.
  Vector<Scalar> delta_f_hat;
  /// Second order only: last known first difference of F.
  std::optional<Vector<Scalar>> delta_f_prev;

  static UlmObserverState zero(Eigen::Index dim)
  {
    return {Vector<Scalar>::Zero(dim), std::nullopt, Vector<Scalar>::Zero(dim), std::nullopt};
  }
};

/// F_k = y_k^(nu) - G_k·u_k from the window y_k..y_{k+nu}.
template <typename Scalar>
Vector<Scalar> reconstruct_f(std::span<const Vector<Scalar>> outputs, const Vector<Scalar> & input_effect, int order_nu)
{
  if (order_nu < 1 || outputs.size() != static_cast<std::size_t>(order_nu) + 1) {
    throw std::invalid_argument("reconstruct_f: window must hold exactly nu + 1 outputs");
  }
  Vector<Scalar> diff = window_difference(outputs);
  detail::require_same_size(diff.size(), input_effect.size(), "reconstruct_f");
  return diff - input_effect;
}

/// F̂_{k+1} = D(e)·e + F_k with e = F̂_k - F_k.
template <typename Scalar>
Vector<Scalar> first_order_step(
  const Vector<Scalar> & f_hat, const Vector<Scalar> & f_known, const HolderGainParams<Scalar> & gain)
{
  detail::require_same_size(f_hat.size(), f_known.size(), "first_order_step");
  const Vector<Scalar> err = f_hat - f_known;
  return holder_contract(err, gain) + f_known;
}

/**
 * One update of the second order observer given the newly known F_k.
 *
 *     ΔF_{k-1} = F_k - F_{k-1}
 *     ΔF̂_k     = D(e^Δ_{k-1})·e^Δ_{k-1} + ΔF_{k-1},  e^Δ_{k-1} = ΔF̂_{k-1} - ΔF_{k-1}
 *     F̂_{k+1}  = D(e^F_k)·e^F_k + F_k + ΔF̂_k,        e^F_k = F̂_k - F_k
 *
 * Requires state.f_prev; the caller owns the warm-up.
 */
template <typename Scalar>
UlmObserverState<Scalar> second_order_step(
  const UlmObserverState<Scalar> & state, const Vector<Scalar> & f_known, const HolderGainParams<Scalar> & gain)
{
  if (!state.f_prev) {
    throw std::invalid_argument("second_order_step: missing warm-up history (previous F)");
  }
  detail::require_same_size(state.f_hat.size(), f_known.size(), "second_order_step");
  detail::require_same_size(state.f_prev->size(), f_known.size(), "second_order_step");
  detail::require_same_size(state.delta_f_hat.size(), f_known.size(), "second_order_step");

  const Vector<Scalar> delta_f = f_known - *state.f_prev;
  const Vector<Scalar> delta_err = state.delta_f_hat - delta_f;
  UlmObserverState<Scalar> next;
  next.delta_f_hat = holder_contract(delta_err, gain) + delta_f;
  const Vector<Scalar> f_err = state.f_hat - f_known;
  next.f_hat = holder_contract(f_err, gain) + f_known + next.delta_f_hat;
  next.f_prev = f_known;
  next.delta_f_prev = delta_f;
  return next;
}

/**
 * Advances the configured observer with the newest reconstructed F (the last
 * element of `history`) and returns the updated state; its f_hat is the
 * estimate handed to the controller. With no history the zero estimate is
 * returned unchanged. The second order observer spends its first sample
 * recording F, keeping the estimate at zero.
 *
 * Call once per newly reconstructed value.
 */
template <typename Scalar>
UlmObserverState<Scalar> ulm_predict(
  const UlmObserverState<Scalar> & state, std::span<const Vector<Scalar>> history, const UlmConfig<Scalar> & config)
{
  if (history.empty()) {
    return state;
  }
  const Vector<Scalar> & newest = history.back();
  if (config.observer_order == UlmObserverOrder::First) {
    UlmObserverState<Scalar> next = state;
    next.f_hat = first_order_step(state.f_hat, newest, config.gain);
    if (state.f_prev) {
      next.delta_f_prev = newest - *state.f_prev;
    }
    next.f_prev = newest;
    return next;
  }
  if (!state.f_prev) {
    UlmObserverState<Scalar> next = state;
    next.f_prev = newest;
    return next;
  }
  return second_order_step(state, newest, config.gain);
}

}  // namespace mfc

#endif  // MFC__ULM_HPP_
