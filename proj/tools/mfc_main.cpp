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
#include "mfc/harness/config.hpp"
#include "mfc/harness/log_io.hpp"
#include "mfc/harness/metrics.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

namespace
{

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitDiverged = 2;

int run_and_write(const mfc::harness::ExperimentConfig & config, const std::string & out_path)
{
  const auto log = mfc::harness::run_closed_loop(config);
  for (const auto & w : log.warnings) {
    std::cerr << "warning: " << w << '\n';
  }
  if (out_path.empty() || out_path == "-") {
    mfc::harness::write_log_csv(log, std::cout);
  } else {
    mfc::harness::write_log_csv(log, std::filesystem::path(out_path));
  }
  if (log.diverged()) {
    std::cerr << "diverged at step " << *log.diverged_at << '\n';
    return kExitDiverged;
  }
  std::cerr << log.records.size() << " samples in " << log.wall_time_s << " s\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"Model-free finite-time tracking control: closed-loop runner"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  bool oracle_f = false;
  bool no_noise = false;
  auto * run = app.add_subcommand("run", "Run a closed-loop experiment from a JSON config");
  run->add_option("config", config_path, "Experiment config (JSON)")->required();
  run->add_option("--out", out_path, "CSV log destination (default: stdout)");
  run->add_option("--seed", seed, "Override the noise seed");
  run->add_flag("--oracle-f", oracle_f, "Feed the controller the exact F (synthetic plant only)");
  run->add_flag("--no-noise", no_noise, "Disable measurement noise");

  bool demo_run = false;
  std::string demo_out;
  auto * demo = app.add_subcommand("demo-paper", "Print the built-in pendulum configuration as JSON");
  demo->add_flag("--run", demo_run, "Run it instead and write the CSV log");
  demo->add_option("--out", demo_out, "CSV log destination with --run (default: stdout)");

  std::string log_path;
  double cutoff = 20.0;
  mfc::harness::MetricTolerances tol;
  auto * metrics = app.add_subcommand("metrics", "Summarize a CSV log");
  metrics->add_option("log", log_path, "CSV log")->required();
  metrics->add_option("--cutoff", cutoff, "Transient cutoff [s]")->capture_default_str();
  metrics->add_option("--tol-observer", tol.output_observer, "Output observer tolerance")->capture_default_str();
  metrics->add_option("--tol-ulm", tol.ulm, "ULM observer tolerance")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError & e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) {
      auto config = mfc::harness::read_config(config_path);
      if (seed) {
        config.seed = *seed;
      }
      if (oracle_f) {
        config.oracle_f = true;
      }
      if (no_noise) {
        config.noise.reset();
      }
      return run_and_write(config, out_path);
    }
    if (*demo) {
      const auto config = mfc::harness::paper_config();
      if (demo_run) {
        return run_and_write(config, demo_out);
      }
      std::cout << mfc::harness::config_to_json(config);
      return kExitOk;
    }
    if (*metrics) {
      const auto records = mfc::harness::read_log_csv(std::filesystem::path(log_path));
      std::cout << mfc::harness::metrics_to_json(mfc::harness::compute_metrics(records, cutoff, tol));
      return kExitOk;
    }
  } catch (const mfc::harness::ConfigError & e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception & e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitOk;
}
