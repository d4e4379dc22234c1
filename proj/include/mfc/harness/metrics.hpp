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

#ifndef MFC__HARNESS__METRICS_HPP_
#define MFC__HARNESS__METRICS_HPP_

#include "mfc/harness/closed_loop.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>

namespace mfc::harness
{

struct MetricTolerances
{
  double output_observer = 1e-6;
  double ulm = 1e-6;
};

struct RunMetrics
{
  double cutoff = 0;
  std::size_t samples_after_cutoff = 0;
  double max_abs_e = 0;          ///< after cutoff
  double rms_e = 0;              ///< after cutoff
  double max_abs_e_o = 0;        ///< whole run
  double max_abs_e_f = 0;        ///< after cutoff
  std::optional<std::size_t> e_o_below_tol_step;
  std::optional<std::size_t> e_f_below_tol_step;
  double u_rms = 0;              ///< whole run
};

RunMetrics compute_metrics(std::span<const StepRecord> records, double cutoff, MetricTolerances tol = {});

std::string metrics_to_json(const RunMetrics & m, int indent = 2);

}  // namespace mfc::harness

#endif  // MFC__HARNESS__METRICS_HPP_
