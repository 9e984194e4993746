/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 hris contributors
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Command-line front end: sweep, point, hybrid and validate.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hris/config.hpp"
#include "hris/sim.hpp"
#include "hris/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitIo = 2;
constexpr int kExitValidation = 3;

struct CommonArgs {
  std::string config_path;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  std::string out;
  bool defaults = false;
  bool serial = false;
};

void add_common(CLI::App* cmd, CommonArgs& args)
{
  cmd->add_option("--config", args.config_path, "JSON configuration file");
  cmd->add_option("--set", args.overrides, "Override a configuration key (key=value), repeatable");
  cmd->add_option("--seed", args.seed, "Master seed");
  cmd->add_option("--out", args.out, "Output CSV path");
  cmd->add_flag("--defaults", args.defaults, "Use built-in defaults when no config file is readable");
  cmd->add_flag("--serial", args.serial, "Run drops on the calling thread only");
}

hris::SweepConfig resolve(const CommonArgs& args)
{
  hris::SweepConfig cfg = args.config_path.empty()
                              ? (args.defaults ? hris::default_config(args.overrides)
                                               : throw hris::ConfigError("no --config given (use --defaults)"))
                              : hris::load_config(args.config_path, args.overrides, args.defaults);
  if (args.seed)
    cfg.master_seed = *args.seed;
  if (!args.out.empty())
    cfg.output_path = args.out;
  return cfg;
}

std::string decision_log_path(const hris::SweepConfig& cfg, const CommonArgs& args)
{
  if (args.out.empty())
    return cfg.decision_log_path;
  const auto dot = args.out.rfind('.');
  return (dot == std::string::npos ? args.out : args.out.substr(0, dot)) + ".decisions.csv";
}

int run_sweep_like(const CommonArgs& args, const std::string& command)
{
  hris::SweepConfig cfg;
  try {
    cfg = resolve(args);
    if (command == "point")
      cfg.power_grid = {cfg.point_power_dbm};
    if (command == "hybrid") {
      if (std::find(cfg.modes.begin(), cfg.modes.end(), hris::SimMode::Hybrid) == cfg.modes.end())
        cfg.modes.push_back(hris::SimMode::Hybrid);
    }
    cfg.validate();
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  const auto exec = args.serial ? hris::Execution::Serial : hris::Execution::Parallel;
  const auto start = std::chrono::steady_clock::now();
  hris::SweepResult result;
  try {
    result = command == "hybrid" ? hris::run_hybrid_sweep(cfg, exec) : hris::run_sweep(cfg, exec);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  try {
    hris::write_csv(result, cfg.output_path);
    if (!result.decisions.empty())
      hris::write_decision_log(result.decisions, decision_log_path(cfg, args));
  } catch (const std::exception& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  }

  std::cout << "wrote " << result.rows.size() << " rows to " << cfg.output_path;
  if (!result.decisions.empty())
    std::cout << " and " << result.decisions.size() << " decisions to " << decision_log_path(cfg, args);
  std::cout << " in " << seconds << " s\n";
  if (command == "sweep")
    std::cout << hris::summary(result);
  return kExitOk;
}

int run_validate(const CommonArgs& args)
{
  std::uint64_t seed = 1;
  try {
    if (!args.config_path.empty() || args.defaults)
      seed = resolve(args).master_seed;
    if (args.seed)
      seed = *args.seed;
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  bool all = true;
  for (const auto& c : hris::verify::run_validation_suite(seed)) {
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << " (" << c.detail << ")\n";
    all = all && c.passed;
  }
  return all ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Link-level simulator for hybrid passive/active/dormant RIS-assisted MISO downlink"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string command;
  for (const char* name : {"sweep", "point", "hybrid", "validate"}) {
    const char* help = std::string(name) == "sweep"    ? "Sweep every scenario, mode and power point"
                       : std::string(name) == "point"  ? "Evaluate one power point (point_power_dbm)"
                       : std::string(name) == "hybrid" ? "Run the mode-selection controller and log its decisions"
                                                       : "Run the invariant and oracle checks";
    auto* sub = app.add_subcommand(name, help);
    add_common(sub, args);
    sub->callback([&command, name] { command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  if (command == "validate")
    return run_validate(args);
  return run_sweep_like(args, command);
}
