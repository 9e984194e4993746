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

#include "hris/controller.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hris {

std::string_view to_string(ReportClass c)
{
  switch (c) {
    case ReportClass::Weak: return "weak";
    case ReportClass::Strong: return "strong";
    case ReportClass::High: return "high";
  }
  return "unknown";
}

void ControllerThresholds::validate() const
{
  if (!(weak_below_dbm < high_above_dbm))
    throw std::invalid_argument("controller thresholds need weak_below < high_above");
  if (std::isnan(rho_db))
    throw std::invalid_argument("rho must not be NaN");
}

ReportClass classify_report(double tx_power_dbm, const ControllerThresholds& th)
{
  if (tx_power_dbm < th.weak_below_dbm)
    return ReportClass::Weak;
  if (tx_power_dbm > th.high_above_dbm)
    return ReportClass::High;
  return ReportClass::Strong;
}

RisMode select_mode(const MeasurementReport& report, const ControllerThresholds& th)
{
  switch (report.report_class) {
    case ReportClass::Weak:
      return report.active_gain_db > th.rho_db ? RisMode::Active : RisMode::Passive;
    case ReportClass::Strong:
      return report.active_gain_db > report.passive_gain_db ? RisMode::Active : RisMode::Passive;
    case ReportClass::High:
      return report.passive_gain_db > th.rho_db ? RisMode::Passive : RisMode::Dormant;
  }
  throw std::logic_error("select_mode: unhandled report class");
}

std::vector<RisMode> controller_trace(std::span<const MeasurementReport> reports, const ControllerThresholds& th)
{
  std::vector<RisMode> out;
  out.reserve(reports.size());
  for (const auto& r : reports)
    out.push_back(select_mode(r, th));
  return out;
}

double se_ratio_db(double numerator, double denominator)
{
  if (numerator == denominator)
    return 0.0;
  if (denominator <= 0.0)
    return std::numeric_limits<double>::infinity();
  if (numerator <= 0.0)
    return -std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(numerator / denominator);
}

GainEstimate gains_from_se(double se_active, double se_passive, double se_noris)
{
  return {se_ratio_db(se_active, se_passive), se_ratio_db(se_passive, se_noris), se_active, se_passive, se_noris};
}

GainEstimate estimate_tau(const ChannelSet& ch, double total_power, NoisePowers noise, const OptimizerOptions& opts,
                          StaticPower statics)
{
  const double se_active = opts.search_split ? split_search(ch, total_power, noise, opts).sum_se
                                             : optimize_active(ch, total_power, noise, opts).sum_se;
  const double se_passive = optimize_passive(ch, total_power - statics.passive, noise, opts).sum_se;
  const double se_noris =
      fixed_ris_sum_se(ch, RisState::no_ris(ch.num_ris_elements()), total_power, noise, opts.precoder_kind);
  return gains_from_se(se_active, se_passive, se_noris);
}

}  // namespace hris
