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

#ifndef MFC__HARNESS__CLOSED_LOOP_HPP_
#define MFC__HARNESS__CLOSED_LOOP_HPP_

#include "mfc/harness/config.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace mfc::harness
{

/// One sample of a closed-loop run. Column order matches the CSV header.
struct StepRecord
{
  double t = 0;
  double y_d = 0;
  double y_true = 0;
  double y_meas = 0;
  double y_hat = 0;
  double e = 0;       ///< y_true - y_d
  double e_o = 0;     ///< y_hat - y_true
  double f_true = 0;  ///< F_k from true outputs (evaluation only, see run_closed_loop)
  double f_hat = 0;   ///< estimate used with u_k
  double e_f = 0;     ///< f_hat - f_true
  double s = 0;       ///< sliding variable evaluated by the law at this step
  double u = 0;
  double g = 0;       ///< influence gain G_k

  bool operator==(const StepRecord &) const = default;
};

struct RunLog
{
  std::vector<StepRecord> records;
  ExperimentConfig config;
  double wall_time_s = 0;
  /// Step at which the plant state became non-finite; records stop there.
  std::optional<std::size_t> diverged_at;
  std::vector<std::string> warnings;

  bool diverged() const {return diverged_at.has_value();}
};

/**
 * Runs observer → ULM estimator → tracking law → plant for one configuration.
 *
 * At step k the plant is advanced with the held input u_{k-1}, the new
 * output is measured (plus noise), filtered by the output observer, the
 * newest reconstructable F is pushed through the ULM observer and the
 * second order tracking law produces u_k. The pendulum exposes y_k at step k,
 * so the law runs one step in arrears on (ê_{k-1}, ê_k). The synthetic plant
 * already determines y_{k+1} at step k and the law runs on (ê_k, ê_{k+1}).
 *
 * F_true and e_F are evaluation columns: F_k needs y_{k+2}, so they are filled
 * after the loop from the true outputs (the plant is advanced two extra
 * samples with the last input held). Nothing in the control path reads them.
 *
 * Deterministic for a given configuration.
 */
RunLog run_closed_loop(const ExperimentConfig & config);

}  // namespace mfc::harness

#endif  // MFC__HARNESS__CLOSED_LOOP_HPP_
