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

#ifndef MFC__PLANTS_HPP_
#define MFC__PLANTS_HPP_

/// \file
/// Ground-truth plants: inverted pendulum on a cart with tanh friction,
/// fixed-step RK4, the open-loop reference generator, a bump-density noise
/// source and an exact discrete ULM plant.

#include "mfc/types.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mfc
{

/// Raised when integration produces a non-finite state.
class DivergenceError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

template <typename Scalar>
struct PendulumParams
{
  Scalar cart_mass = Scalar(1.5);       // M [kg]
  Scalar pend_mass = Scalar(0.5);       // m [kg]
  Scalar half_length = Scalar(1.4);     // l [m]
  Scalar inertia = Scalar(0.84);        // I [kg m^2]
  Scalar gravity = Scalar(9.8);         // g [m/s^2]
  Scalar cart_friction = Scalar(0.028); // c_x [N]
  Scalar pend_friction = Scalar(0.0032);  // c_theta [N m]

  void validate() const
  {
    const Scalar fields[] = {cart_mass, pend_mass, half_length, inertia, gravity, cart_friction, pend_friction};
    for (const auto & f : fields) {
      if (!(f > Scalar(0))) {
        throw std::invalid_argument("PendulumParams: all parameters must be positive");
      }
    }
    // det M(q) >= (M+m)(I+ml²) - m²l² must stay positive for every angle.
    const Scalar ml = pend_mass * half_length;
    if (!((cart_mass + pend_mass) * (inertia + ml * half_length) - ml * ml > Scalar(0))) {
      throw std::invalid_argument("PendulumParams: mass matrix is not positive definite");
    }
  }

  bool operator==(const PendulumParams &) const = default;
};

template <typename Scalar>
struct PendulumState
{
  Scalar x{0};
  Scalar theta{0};
  Scalar x_dot{0};
  Scalar theta_dot{0};

  bool finite() const
  {
    using std::isfinite;
    return isfinite(x) && isfinite(theta) && isfinite(x_dot) && isfinite(theta_dot);
  }

  bool operator==(const PendulumState &) const = default;
};

template <typename Scalar>
Eigen::Matrix<Scalar, 2, 2> mass_matrix(Scalar theta, const PendulumParams<Scalar> & p)
{
  using std::cos;
  const Scalar coupling = -p.pend_mass * p.half_length * cos(theta);
  Eigen::Matrix<Scalar, 2, 2> m;
  m << p.cart_mass + p.pend_mass, coupling,
    coupling, p.inertia + p.pend_mass * p.half_length * p.half_length;
  return m;
}

/// (c_x tanh ẋ, c_θ tanh θ̇).
template <typename Scalar>
std::pair<Scalar, Scalar> friction_forces(Scalar x_dot, Scalar theta_dot, const PendulumParams<Scalar> & p)
{
  using std::tanh;
  return {p.cart_friction * tanh(x_dot), p.pend_friction * tanh(theta_dot)};
}

/// Solves M(q)·q̈ = b·F - D(q, q̇) for (ẍ, θ̈).
template <typename Scalar>
Eigen::Matrix<Scalar, 2, 1> pendulum_accel(
  const PendulumState<Scalar> & s, Scalar force, const PendulumParams<Scalar> & p)
{
  using std::isfinite;
  using std::sin;
  if (!s.finite() || !isfinite(force)) {
    throw DivergenceError("pendulum_accel: non-finite state or force");
  }
  const auto m = mass_matrix(s.theta, p);
  const auto [fx, ftheta] = friction_forces(s.x_dot, s.theta_dot, p);
  const Scalar ml = p.pend_mass * p.half_length;
  const Scalar rhs_x = force - (ml * s.theta_dot * s.theta_dot * sin(s.theta) + fx);
  const Scalar rhs_theta = -(ftheta - ml * p.gravity * sin(s.theta));
  const Scalar det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  if (!(det > Scalar(0))) {
    throw std::logic_error("pendulum_accel: singular mass matrix");
  }
  Eigen::Matrix<Scalar, 2, 1> acc;
  acc << (m(1, 1) * rhs_x - m(0, 1) * rhs_theta) / det,
    (-m(1, 0) * rhs_x + m(0, 0) * rhs_theta) / det;
  return acc;
}

/// Kinetic plus potential energy; the potential m·g·l·cosθ peaks upright.
template <typename Scalar>
Scalar mechanical_energy(const PendulumState<Scalar> & s, const PendulumParams<Scalar> & p)
{
  using std::cos;
  Eigen::Matrix<Scalar, 2, 1> qd(s.x_dot, s.theta_dot);
  return qd.dot(mass_matrix(s.theta, p) * qd) / Scalar(2) +
         p.pend_mass * p.gravity * p.half_length * cos(s.theta);
}

namespace detail
{
template <typename Scalar>
PendulumState<Scalar> axpy(const PendulumState<Scalar> & s, Scalar h, const PendulumState<Scalar> & d)
{
  return {s.x + h * d.x, s.theta + h * d.theta, s.x_dot + h * d.x_dot, s.theta_dot + h * d.theta_dot};
}

template <typename Scalar, typename ForceFn>
PendulumState<Scalar> pendulum_derivative(
  const PendulumState<Scalar> & s, ForceFn && force, const PendulumParams<Scalar> & p)
{
  const auto acc = pendulum_accel(s, static_cast<Scalar>(force(s)), p);
  return {s.x_dot, s.theta_dot, acc(0), acc(1)};
}
}  // namespace detail

/// Classical RK4 step with a state-dependent force law.
template <typename Scalar, typename ForceFn>
PendulumState<Scalar> rk4_step(
  const PendulumState<Scalar> & s, ForceFn && force, Scalar dt, const PendulumParams<Scalar> & p)
{
  if (!(dt > Scalar(0))) {
    throw std::invalid_argument("rk4_step: dt must be positive");
  }
  const auto k1 = detail::pendulum_derivative(s, force, p);
  const auto k2 = detail::pendulum_derivative(detail::axpy(s, dt / 2, k1), force, p);
  const auto k3 = detail::pendulum_derivative(detail::axpy(s, dt / 2, k2), force, p);
  const auto k4 = detail::pendulum_derivative(detail::axpy(s, dt, k3), force, p);
  PendulumState<Scalar> next{
    s.x + dt / 6 * (k1.x + 2 * k2.x + 2 * k3.x + k4.x),
    s.theta + dt / 6 * (k1.theta + 2 * k2.theta + 2 * k3.theta + k4.theta),
    s.x_dot + dt / 6 * (k1.x_dot + 2 * k2.x_dot + 2 * k3.x_dot + k4.x_dot),
    s.theta_dot + dt / 6 * (k1.theta_dot + 2 * k2.theta_dot + 2 * k3.theta_dot + k4.theta_dot)};
  if (!next.finite()) {
    throw DivergenceError("rk4_step: non-finite pendulum state");
  }
  return next;
}

/// RK4 step with the force held constant over the step (zero-order hold).
template <typename Scalar>
PendulumState<Scalar> rk4_step(const PendulumState<Scalar> & s, Scalar force, Scalar dt, const PendulumParams<Scalar> & p)
{
  return rk4_step(s, [force](const PendulumState<Scalar> &) {return force;}, dt, p);
}

/// Number of samples t = 0, dt, ..., covering [0, horizon].
template <typename Scalar>
std::size_t sample_count(Scalar horizon, Scalar dt)
{
  using std::floor;
  if (horizon < Scalar(0) || !(dt > Scalar(0))) {
    throw std::invalid_argument("sample_count: horizon must be >= 0 and dt > 0");
  }
  // The relative slack absorbs representation error in horizon/dt (70/0.02 is 3499.99...).
  const Scalar ratio = horizon / dt;
  return static_cast<std::size_t>(floor(ratio * (Scalar(1) + Scalar(1e-12)) + Scalar(1e-9))) + 1;
}

template <typename Scalar>
struct DesiredTrajectory
{
  std::vector<Scalar> time;
  std::vector<Scalar> theta;
  std::vector<PendulumState<Scalar>> states;
};

/// The open-loop law F = -c_x ẋ - 0.5 c_θ θ̇ - 0.1 c_x x used to generate references.
template <typename Scalar>
Scalar reference_force(const PendulumState<Scalar> & s, const PendulumParams<Scalar> & p)
{
  return -p.cart_friction * s.x_dot - Scalar(0.5) * p.pend_friction * s.theta_dot -
         Scalar(0.1) * p.cart_friction * s.x;
}

/// Integrates the pendulum under the reference law and samples θ every dt.
template <typename Scalar>
DesiredTrajectory<Scalar> generate_desired_trajectory(
  const PendulumParams<Scalar> & params, const PendulumState<Scalar> & initial, Scalar horizon, Scalar dt,
  int substeps = 10)
{
  params.validate();
  if (!(horizon > Scalar(0)) || !(dt > Scalar(0)) || substeps < 1) {
    throw std::invalid_argument("generate_desired_trajectory: horizon, dt and substeps must be positive");
  }
  const std::size_t n = sample_count(horizon, dt);
  const Scalar h = dt / Scalar(substeps);
  auto law = [&params](const PendulumState<Scalar> & s) {return reference_force(s, params);};

  DesiredTrajectory<Scalar> out;
  out.time.reserve(n);
  out.theta.reserve(n);
  out.states.reserve(n);
  PendulumState<Scalar> s = initial;
  for (std::size_t k = 0; k < n; ++k) {
    if (k > 0) {
      for (int j = 0; j < substeps; ++j) {
        s = rk4_step(s, law, h, params);
      }
    }
    out.time.push_back(Scalar(k) * dt);
    out.theta.push_back(s.theta);
    out.states.push_back(s);
  }
  return out;
}

template <typename Scalar>
struct NoiseModel
{
  Scalar width = Scalar(0.018);  ///< Total support length.
  std::uint64_t seed = 0;

  void validate() const
  {
    if (!(width > Scalar(0))) {
      throw std::invalid_argument("NoiseModel: width must be positive");
    }
  }

  bool operator==(const NoiseModel &) const = default;
};

/**
 * Draws from the density ∝ exp(-1/(1 - (2s/w)²)) on (-w/2, w/2) by rejection
 * against a uniform envelope. The stream is fully determined by the seed.
 */
template <typename Scalar>
class BumpNoise
{
public:
  explicit BumpNoise(NoiseModel<Scalar> model)
  : model_(model), engine_(model.seed)
  {
    model_.validate();
  }

  Scalar sample()
  {
    using std::abs;
    using std::exp;
    const Scalar half = model_.width / Scalar(2);
    for (;;) {
      const Scalar z = Scalar(2) * uniform() - Scalar(1);
      if (!(abs(z) < Scalar(1))) {
        continue;
      }
      // Acceptance ratio against the envelope max e^{-1}.
      const Scalar accept = exp(Scalar(1) - Scalar(1) / (Scalar(1) - z * z));
      if (uniform() < accept) {
        return z * half;
      }
    }
  }

  Scalar operator()() {return sample();}

  const NoiseModel<Scalar> & model() const {return model_;}

private:
  // 53 random bits in [0, 1); independent of the standard library's distributions.
  Scalar uniform()
  {
    return Scalar(static_cast<double>(engine_() >> 11) * 0x1.0p-53);
  }

  NoiseModel<Scalar> model_;
  std::mt19937_64 engine_;
};

/// y_{k+2} = 2y_{k+1} - y_k + F_k + G_k·u_k.
template <typename Scalar>
Vector<Scalar> synthetic_ulm_plant_step(
  const Vector<Scalar> & y_k, const Vector<Scalar> & y_kp1, const Vector<Scalar> & f_k, const Matrix<Scalar> & g_k,
  const Vector<Scalar> & u_k)
{
  detail::require_same_size(y_k.size(), y_kp1.size(), "synthetic_ulm_plant_step");
  detail::require_same_size(y_k.size(), f_k.size(), "synthetic_ulm_plant_step");
  detail::require_same_size(g_k.rows(), y_k.size(), "synthetic_ulm_plant_step");
  detail::require_same_size(g_k.cols(), u_k.size(), "synthetic_ulm_plant_step");
  return Scalar(2) * y_kp1 - y_k + f_k + g_k * u_k;
}

}  // namespace mfc

#endif  // MFC__PLANTS_HPP_
