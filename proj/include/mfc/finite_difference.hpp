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

#ifndef MFC__FINITE_DIFFERENCE_HPP_
#define MFC__FINITE_DIFFERENCE_HPP_

#include "mfc/types.hpp"

#include <cstddef>
#include <span>
#include <stdexcept>

namespace mfc
{

/// Forward difference of the given order: y^(mu)_k = y^(mu-1)_{k+1} - y^(mu-1)_k.
/// The result is `order` elements shorter than the input.
template <typename Scalar>
Series<Scalar> forward_difference(Series<Scalar> series, std::size_t order)
{
  if (series.size() <= order) {
    throw std::invalid_argument("forward_difference: series must be longer than the order");
  }
  for (std::size_t pass = 0; pass < order; ++pass) {
    for (std::size_t k = 0; k + 1 < series.size(); ++k) {
      detail::require_same_size(series[k].size(), series[k + 1].size(), "forward_difference");
      series[k] = series[k + 1] - series[k];
    }
    series.pop_back();
  }
  return series;
}

/// Highest-order difference of a window y_k..y_{k+n}, i.e. y_k^(n).
template <typename Scalar>
Vector<Scalar> window_difference(std::span<const Vector<Scalar>> window)
{
  if (window.empty()) {
    throw std::invalid_argument("window_difference: empty window");
  }
  Series<Scalar> series(window.begin(), window.end());
  return forward_difference(std::move(series), window.size() - 1).front();
}

}  // namespace mfc

#endif  // MFC__FINITE_DIFFERENCE_HPP_
