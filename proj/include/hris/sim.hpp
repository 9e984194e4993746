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

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hris/channel.hpp"
#include "hris/controller.hpp"
#include "hris/optimize.hpp"
#include "hris/signal.hpp"

namespace hris {

/// Modes a sweep can report. Hybrid is the controller-selected envelope.
enum class SimMode { NoRis, Dormant, Passive, Active, Hybrid };

inline constexpr int kSimModeCount = 5;

std::string_view to_string(SimMode m);
SimMode sim_mode_from_string(std::string_view name);

enum class Execution { Serial, Parallel };

struct SweepConfig {
  SceneConfig scene;
  std::vector<Scenario> scenarios{Scenario::StrongDirect, Scenario::WeakDirect};
  std::vector<double> power_grid{30, 35, 40, 45, 50, 55, 60, 65, 70, 75, 80};
  std::vector<SimMode> modes{SimMode::NoRis, SimMode::Dormant, SimMode::Passive, SimMode::Active, SimMode::Hybrid};
  int drops = 100;
  std::uint64_t master_seed = 1;
  OptimizerOptions optimizer;
  ControllerThresholds thresholds;
  StaticPower statics;
  /// Total power used by the `point` subcommand.
  double point_power_dbm = 40.0;
  std::string output_path = "sweep.csv";
  std::string decision_log_path = "decisions.csv";

  void validate() const;
};

struct SweepRow {
  Scenario scenario = Scenario::StrongDirect;
  SimMode mode = SimMode::NoRis;
  double total_power_dbm = 0.0;
  double mean_se = 0.0;
  double stderr_se = 0.0;
  int drops = 0;
  std::uint64_t seed = 0;
};

/// One controller decision of a hybrid run.
struct DecisionRecord {
  std::size_t index = 0;
  double tx_power_dbm = 0.0;
  ReportClass report_class = ReportClass::Strong;
  double tau_db = 0.0;
  double rho_db = 0.0;
  RisMode mode = RisMode::Passive;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<DecisionRecord> decisions;
};

struct PointStats {
  double mean_se = 0.0;
  double stderr_se = 0.0;
};

/// Per-drop SE of every requested mode at one operating point.
struct DropOutcome {
  std::array<double, kSimModeCount> se{};
  std::array<bool, kSimModeCount> evaluated{};
  std::optional<MeasurementReport> report;
  RisMode chosen = RisMode::Passive;

  double at(SimMode m) const { return se[static_cast<std::size_t>(m)]; }
};

/// Seed of drop `index`; independent of scenario, mode and power so that
/// every operating point sees the same channel draws.
std::uint64_t drop_seed(std::uint64_t master_seed, int index);

/// Evaluates the requested modes on a single channel draw.
DropOutcome evaluate_drop(const ChannelSet& ch, const SceneConfig& scene, double total_power_dbm,
                          std::span<const SimMode> modes, const OptimizerOptions& opts,
                          const ControllerThresholds& th, StaticPower statics = {});

PointStats summarize(std::span<const double> samples);

PointStats run_point(const SceneConfig& scene, SimMode mode, double total_power_dbm, int drops, std::uint64_t seed,
                     const OptimizerOptions& opts, const ControllerThresholds& th = {}, StaticPower statics = {},
                     Execution exec = Execution::Parallel);

/// Rows ordered by (scenario, mode as configured, ascending power). Hybrid
/// rows also append controller decisions in (scenario, power, drop) order.
SweepResult run_sweep(const SweepConfig& cfg, Execution exec = Execution::Parallel);

/// Hybrid rows only, plus the decision log. Requires Hybrid in cfg.modes.
SweepResult run_hybrid_sweep(const SweepConfig& cfg, Execution exec = Execution::Parallel);

/// Lowest grid power from which passive mean SE is at least active mean SE
/// at every higher grid power, provided active leads somewhere below it.
std::optional<double> crossover_power(const SweepResult& result, Scenario scenario);

/// Plain-text per-scenario summary.
std::string summary(const SweepResult& result);

void write_csv(const SweepResult& result, const std::filesystem::path& path);
void write_decision_log(std::span<const DecisionRecord> decisions, const std::filesystem::path& path);
std::string format_csv(const SweepResult& result);
std::string format_decision_log(std::span<const DecisionRecord> decisions);

/// Parses text produced by format_csv.
std::vector<SweepRow> parse_csv(std::string_view text);

}  // namespace hris
