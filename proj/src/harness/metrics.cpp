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

#include "mfc/harness/metrics.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mfc::harness
{

RunMetrics compute_metrics(std::span<const StepRecord> records, double cutoff, MetricTolerances tol)
{
  if (records.empty()) {
    throw std::invalid_argument("compute_metrics: empty log");
  }
  if (!(cutoff >= 0.0) || cutoff > records.back().t) {
    throw std::invalid_argument("compute_metrics: cutoff lies beyond the logged horizon");
  }

  RunMetrics m;
  m.cutoff = cutoff;
  double sum_e2 = 0.0;
  double sum_u2 = 0.0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const StepRecord & r = records[i];
    m.max_abs_e_o = std::max(m.max_abs_e_o, std::abs(r.e_o));
    sum_u2 += r.u * r.u;
    if (!m.e_o_below_tol_step && std::abs(r.e_o) <= tol.output_observer) {
      m.e_o_below_tol_step = i;
    }
    // e_F is undefined (NaN) on the last pendulum rows.
    if (!m.e_f_below_tol_step && std::isfinite(r.e_f) && std::abs(r.e_f) <= tol.ulm) {
      m.e_f_below_tol_step = i;
    }
    if (r.t < cutoff) {
      continue;
    }
    ++m.samples_after_cutoff;
    m.max_abs_e = std::max(m.max_abs_e, std::abs(r.e));
    sum_e2 += r.e * r.e;
    if (std::isfinite(r.e_f)) {
      m.max_abs_e_f = std::max(m.max_abs_e_f, std::abs(r.e_f));
    }
  }
  m.rms_e = std::sqrt(sum_e2 / static_cast<double>(m.samples_after_cutoff));
  m.u_rms = std::sqrt(sum_u2 / static_cast<double>(records.size()));
  return m;
}

std::string metrics_to_json(const RunMetrics & m, int indent)
{
  auto opt = [](const std::optional<std::size_t> & v) {
      return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
    };
  const nlohmann::json doc = {
    {"cutoff", m.cutoff},
    {"samples_after_cutoff", m.samples_after_cutoff},
    {"max_abs_e", m.max_abs_e},
    {"rms_e", m.rms_e},
    {"max_abs_e_o", m.max_abs_e_o},
    {"max_abs_e_f", m.max_abs_e_f},
    {"e_o_below_tol_step", opt(m.e_o_below_tol_step)},
    {"e_f_below_tol_step", opt(m.e_f_below_tol_step)},
    {"u_rms", m.u_rms}};
  return doc.dump(indent) + "\n";
}

}  // namespace mfc::harness
