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

#include <span>
#include <string_view>
#include <vector>

#include "hris/channel.hpp"
#include "hris/optimize.hpp"
#include "hris/signal.hpp"

namespace hris {

/// Transmit-power class of a measurement report.
enum class ReportClass { Weak, Strong, High };

std::string_view to_string(ReportClass c);

struct MeasurementReport {
  double tx_power_dbm = 0.0;
  ReportClass report_class = ReportClass::Strong;
  /// Active-over-passive SE gain, dB.
  double active_gain_db = 0.0;
  /// Passive-over-NoRis SE gain, dB.
  double passive_gain_db = 0.0;
};

/// Class boundaries are strict: a report exactly on a boundary is Strong.
/// rho_db is the minimum SE gain (dB) that justifies switching the RIS up a tier.
struct ControllerThresholds {
  double weak_below_dbm = 40.0;
  double high_above_dbm = 60.0;
  double rho_db = 0.0;

  void validate() const;
};

ReportClass classify_report(double tx_power_dbm, const ControllerThresholds& th);

/// Weak:   Active if tau > rho, else Passive.
/// Strong: Active if tau > passive gain, else Passive.
/// High:   Passive if passive gain > rho, else Dormant. Never Active.
RisMode select_mode(const MeasurementReport& report, const ControllerThresholds& th);

std::vector<RisMode> controller_trace(std::span<const MeasurementReport> reports, const ControllerThresholds& th);

/// Static (non-radiated) power drawn by the surface in each unamplified mode, W.
struct StaticPower {
  double passive = 0.0;
  double dormant = 0.0;
};

struct GainEstimate {
  double tau_db = 0.0;
  double passive_gain_db = 0.0;
  double se_active = 0.0;
  double se_passive = 0.0;
  double se_noris = 0.0;
};

/// 10 log10(numerator / denominator) with 0/0 mapped to 0 dB.
double se_ratio_db(double numerator, double denominator);

GainEstimate gains_from_se(double se_active, double se_passive, double se_noris);

/// Optimizes Active and Passive and evaluates NoRis at the same total power.
/// Active uses split_search when opts.search_split is set.
GainEstimate estimate_tau(const ChannelSet& ch, double total_power, NoisePowers noise, const OptimizerOptions& opts,
                          StaticPower statics = {});

}  // namespace hris
