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

#include "mfc/harness/closed_loop.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <memory>
#include <span>

namespace mfc::harness
{

namespace
{

using Vec = VectorXd;

Vec scalar_vec(double v) {return Vec::Constant(1, v);}

/// Plant-specific truth stepping behind a common interface for the loop below.
class Truth
{
public:
  virtual ~Truth() = default;
  /// Samples of the true output known before the loop starts.
  virtual std::vector<double> initial_outputs() = 0;
  /// Applies u_k with gain G_k; returns the newly determined true output.
  virtual double advance(double u, double g) = 0;
};

class PendulumTruth : public Truth
{
public:
  PendulumTruth(const PendulumPlant & plant, PendulumState<double> initial, double dt)
  : plant_(plant), state_(initial), dt_(dt) {}

  std::vector<double> initial_outputs() override {return {state_.theta};}

  double advance(double u, double) override
  {
    const double h = dt_ / plant_.substeps;
    for (int j = 0; j < plant_.substeps; ++j) {
      state_ = rk4_step(state_, u, h, plant_.params);
    }
    return state_.theta;
  }

private:
  const PendulumPlant & plant_;
  PendulumState<double> state_;
  double dt_;
};

class SyntheticTruth : public Truth
{
public:
  SyntheticTruth(const SyntheticUlmPlant & plant, SyntheticInitial initial)
  : plant_(plant), y_prev_(initial.y0), y_(initial.y1) {}

  std::vector<double> initial_outputs() override {return {y_prev_, y_};}

  double advance(double u, double g) override
  {
    const double next = 2.0 * y_ - y_prev_ + plant_.f_at(k_) + g * u;
    if (!std::isfinite(next)) {
      throw DivergenceError("synthetic plant: non-finite output");
    }
    y_prev_ = y_;
    y_ = next;
    ++k_;
    return next;
  }

private:
  const SyntheticUlmPlant & plant_;
  double y_prev_;
  double y_;
  std::size_t k_ = 0;
};

}  // namespace

RunLog run_closed_loop(const ExperimentConfig & config)
{
  const auto started = std::chrono::steady_clock::now();
  RunLog log;
  log.config = config;
  log.warnings = config.validate();

  const double dt = config.sample_period();
  const std::size_t n = config.horizon > 0.0 ? sample_count(config.horizon, dt) : 0;
  if (n == 0) {
    return log;
  }

  // lead = how many samples past k the plant output is already determined at step k.
  const bool pendulum = config.is_pendulum();
  const std::size_t lead = pendulum ? 0 : 1;
  constexpr std::size_t nu = 2;

  // Desired samples up to index n + lead + 1 are read by the law.
  std::vector<double> yd;
  std::unique_ptr<Truth> truth;
  if (pendulum) {
    const auto & plant = std::get<PendulumPlant>(config.plant);
    yd = generate_desired_trajectory(
      plant.params, plant.desired_initial, static_cast<double>(n + 1) * dt, dt, plant.substeps).theta;
    truth = std::make_unique<PendulumTruth>(plant, std::get<PendulumState<double>>(config.initial_truth), dt);
  } else {
    const auto & plant = std::get<SyntheticUlmPlant>(config.plant);
    for (std::size_t i = 0; i < n + 2; ++i) {
      yd.push_back(plant.desired_at(static_cast<double>(i) * dt));
    }
    truth = std::make_unique<SyntheticTruth>(plant, std::get<SyntheticInitial>(config.initial_truth));
  }

  std::optional<BumpNoise<double>> noise;
  if (config.noise) {
    NoiseModel<double> model = *config.noise;
    model.seed = config.seed;
    noise.emplace(model);
  }

  std::vector<double> y_true = truth->initial_outputs();
  std::vector<double> y_meas;
  std::vector<double> y_hat;
  std::vector<double> u(n, 0.0), g(n, 0.0), s_log(n, 0.0), f_hat_log(n, 0.0);
  OutputObserverState<double> observer;
  UlmObserverState<double> ulm = UlmObserverState<double>::zero(1);
  Series<double> f_history;
  const double mu = second_order_mu(config.controller);
  const double g_idle = influence_gain<double>(config.controller.influence, Vec::Zero(1))(0, 0);

  // Measures and filters every sample whose true output is known.
  auto observe = [&]() {
      while (y_meas.size() < y_true.size()) {
        const std::size_t i = y_meas.size();
        const double ym = y_true[i] + (noise ? noise->sample() : 0.0);
        y_meas.push_back(ym);
        if (i == 0) {
          observer = OutputObserverState<double>::initialize(
            scalar_vec(config.initial_output_estimate()), scalar_vec(ym));
        } else {
          observer = fts_observer_step(observer, scalar_vec(ym), config.observer);
        }
        y_hat.push_back(observer.estimate(0));
      }
    };

  std::size_t k = 0;
  try {
    for (; k < n; ++k) {
      if (k > 0) {
        y_true.push_back(truth->advance(u[k - 1], g[k - 1]));
      }
      observe();

      // Newest reconstructable F index is k + lead - nu.
      const std::size_t newest = k + lead;
      if (newest >= nu) {
        const std::size_t j = newest - nu;
        const Vec window[] = {scalar_vec(y_hat[j]), scalar_vec(y_hat[j + 1]), scalar_vec(y_hat[j + 2])};
        f_history.push_back(reconstruct_f<double>(window, scalar_vec(g[j] * u[j]), static_cast<int>(nu)));
        ulm = ulm_predict<double>(ulm, f_history, config.ulm);
      }

      const bool oracle = config.oracle_f && !pendulum;
      const bool active = oracle || !f_history.empty();
      const double f_hat = oracle ? std::get<SyntheticUlmPlant>(config.plant).f_at(k) : ulm.f_hat(0);
      f_hat_log[k] = f_hat;
      if (!active) {
        g[k] = g_idle;
        continue;
      }

      // Pendulum: (ê_{k-1}, ê_k) in arrears. Synthetic: (ê_k, ê_{k+1}).
      const std::size_t i0 = pendulum ? k - 1 : k;
      SecondOrderTerms<double> terms{
        scalar_vec(y_hat[i0] - yd[i0]), scalar_vec(y_hat[i0 + 1] - yd[i0 + 1]),
        scalar_vec(yd[i0]), scalar_vec(yd[i0 + 1]), scalar_vec(yd[i0 + 2]), scalar_vec(f_hat)};
      const Vec rhs = control_rhs_second_order(terms, config.controller);
      const MatrixXd gain = influence_gain(config.controller.influence, influence_signal(terms, config.controller));
      const Vec input = solve_input<double>(gain, rhs);
      s_log[k] = sliding_variable_second_order(terms.e_k, terms.e_kp1, mu)(0);
      g[k] = gain(0, 0);
      u[k] = input(0);
      if (!std::isfinite(u[k])) {
        throw DivergenceError("non-finite control input");
      }
    }
  } catch (const DivergenceError &) {
    log.diverged_at = k;
  }

  const std::size_t rows = k;
  // Evaluation only: true outputs two samples past the last row, input held.
  if (!log.diverged()) {
    try {
      while (y_true.size() < rows + 2) {
        y_true.push_back(truth->advance(u[rows - 1], g[rows - 1]));
      }
    } catch (const DivergenceError &) {
    }
  }

  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  log.records.reserve(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    StepRecord r;
    r.t = static_cast<double>(i) * dt;
    r.y_d = yd[i];
    r.y_true = y_true[i];
    r.y_meas = y_meas[i];
    r.y_hat = y_hat[i];
    r.e = r.y_true - r.y_d;
    r.e_o = r.y_hat - r.y_true;
    if (!pendulum) {
      r.f_true = std::get<SyntheticUlmPlant>(config.plant).f_at(i);
    } else if (i + 2 < y_true.size()) {
      const Vec window[] = {scalar_vec(y_true[i]), scalar_vec(y_true[i + 1]), scalar_vec(y_true[i + 2])};
      r.f_true = reconstruct_f<double>(window, scalar_vec(g[i] * u[i]), static_cast<int>(nu))(0);
    } else {
      r.f_true = nan;
    }
    r.f_hat = f_hat_log[i];
    r.e_f = r.f_hat - r.f_true;
    r.s = s_log[i];
    r.u = u[i];
    r.g = g[i];
    log.records.push_back(r);
  }

  log.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return log;
}

}  // namespace mfc::harness
