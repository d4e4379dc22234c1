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

#include "mfc/harness/config.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace mfc::harness
{

using nlohmann::json;

double SyntheticUlmPlant::f_at(std::size_t k) const
{
  const double kd = static_cast<double>(k);
  return f_offset + f_slope * kd + f_amplitude * std::sin(2.0 * std::numbers::pi * kd / f_period);
}

double SyntheticUlmPlant::desired_at(double t) const
{
  return desired_amplitude * std::sin(2.0 * std::numbers::pi * t / desired_period);
}

double ExperimentConfig::initial_output_estimate() const
{
  if (const auto * s = std::get_if<PendulumState<double>>(&initial_estimates)) {
    return s->theta;
  }
  return std::get<SyntheticEstimate>(initial_estimates).y;
}

std::vector<std::string> ExperimentConfig::validate() const
{
  std::vector<std::string> warnings;
  auto fail = [](const std::string & msg) {throw ConfigError(msg);};

  if (!(sample_rate > 0.0) || !std::isfinite(sample_rate)) {
    fail("sample_rate: must be positive");
  }
  if (!(horizon >= 0.0) || !std::isfinite(horizon)) {
    fail("horizon: must be non-negative");
  }
  try {
    ulm.validate();
    controller.validate();
  } catch (const std::invalid_argument & ex) {
    fail(ex.what());
  }
  if (ulm.order_nu != 2 || controller.order_nu() != 2) {
    fail("ulm.order_nu / controller.coefficients: the closed loop runs the second order law (nu = 2, one coefficient)");
  }
  if (observer.gain.weight().rows() != 1) {
    fail("observer.weight: the closed loop is single-output; weight must be scalar");
  }
  if (controller.influence.kind == InfluencePolicy<double>::Kind::FixedMatrix &&
    controller.influence.matrix.size() != 1)
  {
    fail("controller.influence_policy.matrix: the closed loop is single-input single-output; use a 1x1 matrix");
  }
  if (noise) {
    try {
      noise->validate();
    } catch (const std::invalid_argument & ex) {
      fail(std::string("noise.") + ex.what());
    }
  }
  if (!gains_separated(observer, controller)) {
    const std::string msg = "gain ordering violated: expected eta < beta and q < p";
    if (!allow_gain_ordering_violation) {
      fail(msg + " (set allow_gain_ordering_violation to override)");
    }
    warnings.push_back(msg);
  }
  if (const auto * pend = std::get_if<PendulumPlant>(&plant)) {
    try {
      pend->params.validate();
    } catch (const std::invalid_argument & ex) {
      fail(std::string("plant.params: ") + ex.what());
    }
    if (pend->substeps < 1) {
      fail("plant.substeps: must be at least 1");
    }
    if (!std::holds_alternative<PendulumState<double>>(initial_truth) ||
      !std::holds_alternative<PendulumState<double>>(initial_estimates))
    {
      fail("initial_truth / initial_estimates: pendulum plant expects pendulum states");
    }
    if (oracle_f) {
      fail("oracle_f: only available with the synthetic ULM plant (the pendulum has no closed-form F)");
    }
  } else {
    const auto & syn = std::get<SyntheticUlmPlant>(plant);
    if (!(syn.f_period > 0.0) || !(syn.desired_period > 0.0)) {
      fail("plant: periods must be positive");
    }
    if (!std::holds_alternative<SyntheticInitial>(initial_truth) ||
      !std::holds_alternative<SyntheticEstimate>(initial_estimates))
    {
      fail("initial_truth / initial_estimates: synthetic plant expects {y0, y1} and {y}");
    }
  }
  return warnings;
}

bool ExperimentConfig::operator==(const ExperimentConfig & o) const
{
  return plant == o.plant && horizon == o.horizon && sample_rate == o.sample_rate &&
         observer.gain == o.observer.gain && ulm.order_nu == o.ulm.order_nu && ulm.gain == o.ulm.gain &&
         ulm.observer_order == o.ulm.observer_order && controller.gain == o.controller.gain &&
         controller.coefficients == o.controller.coefficients &&
         controller.influence.kind == o.controller.influence.kind &&
         controller.influence.matrix == o.controller.influence.matrix &&
         controller.influence.base == o.controller.influence.base && noise == o.noise &&
         initial_truth == o.initial_truth && initial_estimates == o.initial_estimates && seed == o.seed &&
         oracle_f == o.oracle_f && allow_gain_ordering_violation == o.allow_gain_ordering_violation;
}

ExperimentConfig paper_config()
{
  return ExperimentConfig{};
}

// ---------------------------------------------------------------------------
// JSON

namespace
{

/// Reads an object's fields by name and rejects whatever was not read.
class ObjectReader
{
public:
  ObjectReader(const json & node, std::string path)
  : node_(node), path_(std::move(path))
  {
    if (!node_.is_object()) {
      throw ConfigError(path_ + ": expected an object");
    }
  }

  bool has(const std::string & key) const {return node_.contains(key);}

  const json & at(const std::string & key)
  {
    if (!node_.contains(key)) {
      throw ConfigError(field(key) + ": missing required field");
    }
    seen_.insert(key);
    return node_.at(key);
  }

  double number(const std::string & key)
  {
    const json & v = at(key);
    if (!v.is_number()) {
      throw ConfigError(field(key) + ": expected a number");
    }
    return v.get<double>();
  }

  double number_or(const std::string & key, double fallback)
  {
    return has(key) ? number(key) : fallback;
  }

  bool boolean_or(const std::string & key, bool fallback)
  {
    if (!has(key)) {
      return fallback;
    }
    const json & v = at(key);
    if (!v.is_boolean()) {
      throw ConfigError(field(key) + ": expected true or false");
    }
    return v.get<bool>();
  }

  std::string string(const std::string & key)
  {
    const json & v = at(key);
    if (!v.is_string()) {
      throw ConfigError(field(key) + ": expected a string");
    }
    return v.get<std::string>();
  }

  ObjectReader object(const std::string & key) {return ObjectReader(at(key), field(key));}

  std::string field(const std::string & key) const {return path_ + "." + key;}

  void finish() const
  {
    for (const auto & item : node_.items()) {
      if (!seen_.count(item.key())) {
        throw ConfigError(field(item.key()) + ": unknown key");
      }
    }
  }

private:
  const json & node_;
  std::string path_;
  std::set<std::string> seen_;
};

PendulumState<double> read_pendulum_state(ObjectReader r)
{
  PendulumState<double> s{r.number("x"), r.number("theta"), r.number("x_dot"), r.number("theta_dot")};
  r.finish();
  return s;
}

json pendulum_state_json(const PendulumState<double> & s)
{
  return {{"x", s.x}, {"theta", s.theta}, {"x_dot", s.x_dot}, {"theta_dot", s.theta_dot}};
}

MatrixXd read_matrix(const json & v, const std::string & path)
{
  if (v.is_number()) {
    return MatrixXd::Constant(1, 1, v.get<double>());
  }
  if (!v.is_array() || v.empty() || !v.front().is_array()) {
    throw ConfigError(path + ": expected a number or a non-empty array of rows");
  }
  const auto rows = static_cast<Eigen::Index>(v.size());
  const auto cols = static_cast<Eigen::Index>(v.front().size());
  MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json & row = v[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw ConfigError(path + ": rows must be arrays of equal length");
    }
    for (Eigen::Index j = 0; j < cols; ++j) {
      const json & x = row[static_cast<std::size_t>(j)];
      if (!x.is_number()) {
        throw ConfigError(path + ": matrix entries must be numbers");
      }
      m(i, j) = x.get<double>();
    }
  }
  return m;
}

json matrix_json(const MatrixXd & m)
{
  if (m.rows() == 1 && m.cols() == 1) {
    return m(0, 0);
  }
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(m(i, j));
    }
    rows.push_back(row);
  }
  return rows;
}

template <typename Fn>
auto wrap(const std::string & path, Fn && fn)
{
  try {
    return fn();
  } catch (const ConfigError &) {
    throw;
  } catch (const std::invalid_argument & ex) {
    throw ConfigError(path + ": " + ex.what());
  }
}

}  // namespace

ExperimentConfig parse_config(const std::string & json_text)
{
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error & ex) {
    throw ConfigError(std::string("config: malformed JSON: ") + ex.what());
  }
  ObjectReader root(doc, "config");
  ExperimentConfig cfg;

  {
    ObjectReader plant = root.object("plant");
    const std::string type = plant.string("type");
    if (type == "pendulum") {
      PendulumPlant p;
      ObjectReader params = plant.object("params");
      p.params.cart_mass = params.number("cart_mass");
      p.params.pend_mass = params.number("pend_mass");
      p.params.half_length = params.number("half_length");
      p.params.inertia = params.number("inertia");
      p.params.gravity = params.number("gravity");
      p.params.cart_friction = params.number("cart_friction");
      p.params.pend_friction = params.number("pend_friction");
      params.finish();
      p.desired_initial = read_pendulum_state(plant.object("desired_initial"));
      const double substeps = plant.number_or("substeps", 10);
      if (substeps != std::floor(substeps) || substeps < 1) {
        throw ConfigError(plant.field("substeps") + ": expected a positive integer");
      }
      p.substeps = static_cast<int>(substeps);
      cfg.plant = p;
    } else if (type == "synthetic_ulm") {
      SyntheticUlmPlant p;
      p.f_offset = plant.number_or("f_offset", 0.0);
      p.f_slope = plant.number_or("f_slope", 0.0);
      p.f_amplitude = plant.number_or("f_amplitude", 0.0);
      p.f_period = plant.number_or("f_period", p.f_period);
      p.desired_amplitude = plant.number_or("desired_amplitude", p.desired_amplitude);
      p.desired_period = plant.number_or("desired_period", p.desired_period);
      cfg.plant = p;
    } else {
      throw ConfigError(plant.field("type") + ": expected \"pendulum\" or \"synthetic_ulm\"");
    }
    plant.finish();
  }

  cfg.horizon = root.number("horizon");
  cfg.sample_rate = root.number("sample_rate");

  {
    ObjectReader obs = root.object("observer");
    const MatrixXd w = read_matrix(obs.at("weight"), obs.field("weight"));
    const double margin = obs.number("margin");
    const double exponent = obs.number("exponent");
    obs.finish();
    cfg.observer.gain = wrap("config.observer", [&] {return HolderGainParams<double>(w, margin, exponent);});
  }
  {
    ObjectReader ulm = root.object("ulm");
    const double nu = ulm.number("order_nu");
    if (nu != std::floor(nu)) {
      throw ConfigError(ulm.field("order_nu") + ": expected an integer");
    }
    cfg.ulm.order_nu = static_cast<int>(nu);
    const double margin = ulm.number("margin");
    const double exponent = ulm.number("exponent");
    cfg.ulm.gain = wrap("config.ulm", [&] {return HolderGainParams<double>::identity(margin, exponent);});
    const std::string order = ulm.string("observer_order");
    if (order == "first") {
      cfg.ulm.observer_order = UlmObserverOrder::First;
    } else if (order == "second") {
      cfg.ulm.observer_order = UlmObserverOrder::Second;
    } else {
      throw ConfigError(ulm.field("observer_order") + ": expected \"first\" or \"second\"");
    }
    ulm.finish();
  }
  {
    ObjectReader ctl = root.object("controller");
    const double margin = ctl.number("margin");
    const double exponent = ctl.number("exponent");
    cfg.controller.gain = wrap("config.controller", [&] {return HolderGainParams<double>::identity(margin, exponent);});
    const json & coeffs = ctl.at("coefficients");
    if (!coeffs.is_array()) {
      throw ConfigError(ctl.field("coefficients") + ": expected an array of numbers");
    }
    cfg.controller.coefficients.clear();
    for (const auto & c : coeffs) {
      if (!c.is_number()) {
        throw ConfigError(ctl.field("coefficients") + ": expected an array of numbers");
      }
      cfg.controller.coefficients.push_back(c.get<double>());
    }
    ObjectReader pol = ctl.object("influence_policy");
    const std::string kind = pol.string("type");
    if (kind == "adaptive_scalar") {
      cfg.controller.influence = InfluencePolicy<double>::adaptive(pol.number("base"));
    } else if (kind == "fixed_matrix") {
      cfg.controller.influence =
        InfluencePolicy<double>::fixed(read_matrix(pol.at("matrix"), pol.field("matrix")));
    } else {
      throw ConfigError(pol.field("type") + ": expected \"adaptive_scalar\" or \"fixed_matrix\"");
    }
    pol.finish();
    ctl.finish();
  }

  cfg.noise.reset();
  if (root.has("noise") && !root.at("noise").is_null()) {
    ObjectReader noise = root.object("noise");
    cfg.noise = NoiseModel<double>{noise.number("width"), 0};
    noise.finish();
  }

  const bool pendulum = cfg.is_pendulum();
  if (pendulum) {
    cfg.initial_truth = read_pendulum_state(root.object("initial_truth"));
    cfg.initial_estimates = read_pendulum_state(root.object("initial_estimates"));
  } else {
    ObjectReader truth = root.object("initial_truth");
    cfg.initial_truth = SyntheticInitial{truth.number("y0"), truth.number("y1")};
    truth.finish();
    ObjectReader est = root.object("initial_estimates");
    cfg.initial_estimates = SyntheticEstimate{est.number("y")};
    est.finish();
  }

  if (root.has("seed")) {
    const json & seed = root.at("seed");
    if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<std::int64_t>() >= 0)) {
      throw ConfigError("config.seed: expected a non-negative integer");
    }
    cfg.seed = seed.get<std::uint64_t>();
  }
  cfg.oracle_f = root.boolean_or("oracle_f", false);
  cfg.allow_gain_ordering_violation = root.boolean_or("allow_gain_ordering_violation", false);
  root.finish();

  cfg.validate();
  return cfg;
}

ExperimentConfig read_config(const std::filesystem::path & path)
{
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file: " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string config_to_json(const ExperimentConfig & cfg, int indent)
{
  json doc;
  if (const auto * p = std::get_if<PendulumPlant>(&cfg.plant)) {
    doc["plant"] = {
      {"type", "pendulum"},
      {"params", {
          {"cart_mass", p->params.cart_mass}, {"pend_mass", p->params.pend_mass},
          {"half_length", p->params.half_length}, {"inertia", p->params.inertia},
          {"gravity", p->params.gravity}, {"cart_friction", p->params.cart_friction},
          {"pend_friction", p->params.pend_friction}}},
      {"desired_initial", pendulum_state_json(p->desired_initial)},
      {"substeps", p->substeps}};
  } else {
    const auto & s = std::get<SyntheticUlmPlant>(cfg.plant);
    doc["plant"] = {
      {"type", "synthetic_ulm"}, {"f_offset", s.f_offset}, {"f_slope", s.f_slope},
      {"f_amplitude", s.f_amplitude}, {"f_period", s.f_period},
      {"desired_amplitude", s.desired_amplitude}, {"desired_period", s.desired_period}};
  }
  doc["horizon"] = cfg.horizon;
  doc["sample_rate"] = cfg.sample_rate;
  doc["observer"] = {
    {"weight", matrix_json(cfg.observer.gain.weight())},
    {"margin", cfg.observer.gain.margin()},
    {"exponent", cfg.observer.gain.exponent()}};
  doc["ulm"] = {
    {"order_nu", cfg.ulm.order_nu},
    {"margin", cfg.ulm.gain.margin()},
    {"exponent", cfg.ulm.gain.exponent()},
    {"observer_order", cfg.ulm.observer_order == UlmObserverOrder::First ? "first" : "second"}};
  json policy;
  if (cfg.controller.influence.kind == InfluencePolicy<double>::Kind::AdaptiveScalar) {
    policy = {{"type", "adaptive_scalar"}, {"base", cfg.controller.influence.base}};
  } else {
    policy = {{"type", "fixed_matrix"}, {"matrix", matrix_json(cfg.controller.influence.matrix)}};
  }
  doc["controller"] = {
    {"margin", cfg.controller.gain.margin()},
    {"exponent", cfg.controller.gain.exponent()},
    {"coefficients", cfg.controller.coefficients},
    {"influence_policy", policy}};
  doc["noise"] = cfg.noise ? json{{"width", cfg.noise->width}} : json(nullptr);
  if (const auto * t = std::get_if<PendulumState<double>>(&cfg.initial_truth)) {
    doc["initial_truth"] = pendulum_state_json(*t);
  } else {
    const auto & t2 = std::get<SyntheticInitial>(cfg.initial_truth);
    doc["initial_truth"] = {{"y0", t2.y0}, {"y1", t2.y1}};
  }
  if (const auto * e = std::get_if<PendulumState<double>>(&cfg.initial_estimates)) {
    doc["initial_estimates"] = pendulum_state_json(*e);
  } else {
    doc["initial_estimates"] = {{"y", std::get<SyntheticEstimate>(cfg.initial_estimates).y}};
  }
  doc["seed"] = cfg.seed;
  doc["oracle_f"] = cfg.oracle_f;
  doc["allow_gain_ordering_violation"] = cfg.allow_gain_ordering_violation;
  return doc.dump(indent) + "\n";
}

void write_config(const ExperimentConfig & config, const std::filesystem::path & path)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open for writing: " + path.string());
  }
  out << config_to_json(config);
  if (!out) {
    throw std::runtime_error("write failed: " + path.string());
  }
}

}  // namespace mfc::harness
