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

#ifndef MFC__HARNESS__CONFIG_HPP_
#define MFC__HARNESS__CONFIG_HPP_

#include "mfc/controller.hpp"
#include "mfc/output_observer.hpp"
#include "mfc/plants.hpp"
#include "mfc/ulm.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace mfc::harness
{

/// Schema or semantic violation in an experiment configuration.
class ConfigError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct PendulumPlant
{
  PendulumParams<double> params;
  /// Initial state of the reference generator.
  PendulumState<double> desired_initial{0.45, -0.14, -0.3, 0.05};
  /// RK4 substeps per sample period.
  int substeps = 10;

  bool operator==(const PendulumPlant &) const = default;
};

/**
 * Scalar discrete double integrator y_{k+2} = 2y_{k+1} - y_k + F_k + G·u_k
 * with F_k = f_offset + f_slope·k + f_amplitude·sin(2πk/f_period) and a
 * sinusoidal reference y^d = desired_amplitude·sin(2πt/desired_period).
 */
struct SyntheticUlmPlant
{
  double f_offset = 0.0;
  double f_slope = 0.0;
  double f_amplitude = 0.0;
  double f_period = 100.0;
  double desired_amplitude = 1.0;
  double desired_period = 10.0;

  double f_at(std::size_t k) const;
  double desired_at(double t) const;

  bool operator==(const SyntheticUlmPlant &) const = default;
};

using PlantDescriptor = std::variant<PendulumPlant, SyntheticUlmPlant>;

/// Initial truth for the synthetic plant: its first two outputs.
struct SyntheticInitial
{
  double y0 = 0.0;
  double y1 = 0.0;

  bool operator==(const SyntheticInitial &) const = default;
};

struct SyntheticEstimate
{
  double y = 0.0;

  bool operator==(const SyntheticEstimate &) const = default;
};

struct ExperimentConfig
{
  PlantDescriptor plant = PendulumPlant{};
  double horizon = 70.0;      ///< [s]
  double sample_rate = 50.0;  ///< [Hz]
  OutputObserverConfig<double> observer{HolderGainParams<double>::scalar(2.1, 2.0, 7.0 / 5.0)};
  UlmConfig<double> ulm{2, HolderGainParams<double>::identity(1.5, 9.0 / 7.0), UlmObserverOrder::First};
  ControllerConfig<double> controller{
    HolderGainParams<double>::identity(1.0, 11.0 / 9.0), {0.35}, InfluencePolicy<double>::adaptive(1.5)};
  std::optional<NoiseModel<double>> noise = NoiseModel<double>{0.018, 0};
  /// PendulumState for the pendulum, SyntheticInitial for the synthetic plant.
  std::variant<PendulumState<double>, SyntheticInitial> initial_truth = PendulumState<double>{0.45, -0.14, -0.3, 0.05};
  /// Estimated initial state; only its output component (ŷ_0) feeds the observer.
  std::variant<PendulumState<double>, SyntheticEstimate> initial_estimates = PendulumState<double>{0.0, 0.102, 0.0, 0.0};
  std::uint64_t seed = 0;
  /// Synthetic plant only: feed the controller the exact F instead of the ULM estimate.
  bool oracle_f = false;
  /// Permit eta >= beta or q >= p (a warning is still reported).
  bool allow_gain_ordering_violation = false;

  double sample_period() const {return 1.0 / sample_rate;}
  double initial_output_estimate() const;
  bool is_pendulum() const {return std::holds_alternative<PendulumPlant>(plant);}

  /// Throws ConfigError on any violated invariant. Returns warnings.
  std::vector<std::string> validate() const;

  bool operator==(const ExperimentConfig & other) const;
};

/// The built-in inverted-pendulum experiment (50 Hz, 70 s, bump noise 0.018 rad).
ExperimentConfig paper_config();

/// Parses a JSON document; unknown keys and type errors raise ConfigError naming the field.
ExperimentConfig parse_config(const std::string & json_text);
ExperimentConfig read_config(const std::filesystem::path & path);
std::string config_to_json(const ExperimentConfig & config, int indent = 2);
void write_config(const ExperimentConfig & config, const std::filesystem::path & path);

}  // namespace mfc::harness

#endif  // MFC__HARNESS__CONFIG_HPP_
