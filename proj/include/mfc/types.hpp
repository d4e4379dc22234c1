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

#ifndef MFC__TYPES_HPP_
#define MFC__TYPES_HPP_

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace mfc
{

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Time-ordered sequence of equally sized vectors (oldest first).
template <typename Scalar>
using Series = std::vector<Vector<Scalar>>;

using VectorXd = Vector<double>;
using MatrixXd = Matrix<double>;

/// Raised when two operands disagree on output dimension.
class DimensionError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

namespace detail
{
inline void require_same_size(Eigen::Index a, Eigen::Index b, const char * what)
{
  if (a != b) {
    throw DimensionError(
      std::string(what) + ": dimension mismatch (" + std::to_string(a) + " vs " +
      std::to_string(b) + ")");
  }
}
}  // namespace detail

}  // namespace mfc

#endif  // MFC__TYPES_HPP_
