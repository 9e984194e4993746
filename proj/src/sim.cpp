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

#include "hris/sim.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <omp.h>

#include "hris/units.hpp"

namespace hris {

std::string_view to_string(SimMode m)
{
  switch (m) {
    case SimMode::NoRis: return "noris";
    case SimMode::Dormant: return "dormant";
    case SimMode::Passive: return "passive";
    case SimMode::Active: return "active";
    case SimMode::Hybrid: return "hybrid";
  }
  return "unknown";
}

SimMode sim_mode_from_string(std::string_view name)
{
  if (name == "hybrid") return SimMode::Hybrid;
  switch (ris_mode_from_string(name)) {
    case RisMode::NoRis: return SimMode::NoRis;
    case RisMode::Dormant: return SimMode::Dormant;
    case RisMode::Passive: return SimMode::Passive;
    case RisMode::Active: return SimMode::Active;
  }
  throw std::invalid_argument("unknown mode");
}

void SweepConfig::validate() const
{
  scene.validate();
  optimizer.validate();
  thresholds.validate();
  if (drops < 1)
    throw std::invalid_argument("drops must be >= 1");
  if (power_grid.empty())
    throw std::invalid_argument("power_grid must not be empty");
  for (std::size_t i = 1; i < power_grid.size(); ++i)
    if (!(power_grid[i] > power_grid[i - 1]))
      throw std::invalid_argument("power_grid must be strictly increasing");
  for (double p : power_grid)
    if (!std::isfinite(p))
      throw std::invalid_argument("power_grid entries must be finite");
  if (scenarios.empty())
    throw std::invalid_argument("scenarios must not be empty");
  if (modes.empty())
    throw std::invalid_argument("modes must not be empty");
  if (statics.passive < 0.0 || statics.dormant < 0.0)
    throw std::invalid_argument("static powers must be >= 0");
}

std::uint64_t drop_seed(std::uint64_t master_seed, int index)
{
  return derive_seed(master_seed, static_cast<std::uint64_t>(index));
}

namespace {

std::size_t slot(SimMode m) { return static_cast<std::size_t>(m); }

bool wants(std::span<const SimMode> modes, SimMode m) { return std::find(modes.begin(), modes.end(), m) != modes.end(); }

double unamplified_bs_power(double total, double static_power)
{
  const double bs = total - static_power;
  if (!(bs > 0.0))
    throw std::invalid_argument("static power exceeds the total power budget");
  return bs;
}

}  // namespace

DropOutcome evaluate_drop(const ChannelSet& ch, const SceneConfig& scene, double total_power_dbm,
                          std::span<const SimMode> modes, const OptimizerOptions& opts,
                          const ControllerThresholds& th, StaticPower statics)
{
  const NoisePowers noise = NoisePowers::from_scene(scene);
  const double total = dbm_to_watts(total_power_dbm);
  const int N = ch.num_ris_elements();
  const bool hybrid = wants(modes, SimMode::Hybrid);

  DropOutcome out;
  auto record = [&](SimMode m, double value) {
    out.se[slot(m)] = value;
    out.evaluated[slot(m)] = true;
  };

  if (wants(modes, SimMode::NoRis) || hybrid)
    record(SimMode::NoRis, fixed_ris_sum_se(ch, RisState::no_ris(N), total, noise, opts.precoder_kind));
  if (wants(modes, SimMode::Passive) || hybrid)
    record(SimMode::Passive,
           optimize_passive(ch, unamplified_bs_power(total, statics.passive), noise, opts).sum_se);
  if (wants(modes, SimMode::Active) || hybrid) {
    const double se = opts.search_split ? split_search(ch, total, noise, opts).sum_se
                                        : optimize_active(ch, total, noise, opts).sum_se;
    record(SimMode::Active, se);
  }

  auto dormant_se = [&]() {
    return fixed_ris_sum_se(ch, RisState::dormant(N), unamplified_bs_power(total, statics.dormant), noise,
                            opts.precoder_kind);
  };
  if (wants(modes, SimMode::Dormant))
    record(SimMode::Dormant, dormant_se());

  if (hybrid) {
    const GainEstimate g = gains_from_se(out.at(SimMode::Active), out.at(SimMode::Passive), out.at(SimMode::NoRis));
    MeasurementReport report{total_power_dbm, classify_report(total_power_dbm, th), g.tau_db, g.passive_gain_db};
    out.chosen = select_mode(report, th);
    out.report = report;
    double chosen_se = 0.0;
    switch (out.chosen) {
      case RisMode::Active: chosen_se = out.at(SimMode::Active); break;
      case RisMode::Passive: chosen_se = out.at(SimMode::Passive); break;
      case RisMode::Dormant: chosen_se = out.evaluated[slot(SimMode::Dormant)] ? out.at(SimMode::Dormant) : dormant_se(); break;
      case RisMode::NoRis: chosen_se = out.at(SimMode::NoRis); break;
    }
    record(SimMode::Hybrid, chosen_se);
  }
  return out;
}

PointStats summarize(std::span<const double> samples)
{
  PointStats s;
  if (samples.empty())
    return s;
  const auto n = static_cast<double>(samples.size());
  double sum = 0.0;
  for (double x : samples)
    sum += x;
  s.mean_se = sum / n;
  if (samples.size() > 1) {
    double ss = 0.0;
    for (double x : samples)
      ss += (x - s.mean_se) * (x - s.mean_se);
    s.stderr_se = std::sqrt(ss / (n - 1.0) / n);
  }
  return s;
}

namespace {

// Runs task(i) for i in [0, count). Exceptions are captured per task and the
// first one (by index) is rethrown after the loop.
template <typename Task>
void for_each_task(int count, Execution exec, Task&& task)
{
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (int i = 0; i < count; ++i) {
      try {
        task(i);
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  } else {
    for (int i = 0; i < count; ++i) {
      try {
        task(i);
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  }
  for (auto& e : errors)
    if (e)
      std::rethrow_exception(e);
}

// outcomes[p * drops + d] for every grid power p and drop d of one scenario.
std::vector<DropOutcome> evaluate_scenario(const SceneConfig& scene, std::span<const double> powers, int drops,
                                           std::uint64_t seed, std::span<const SimMode> modes,
                                           const OptimizerOptions& opts, const ControllerThresholds& th,
                                           StaticPower statics, Execution exec)
{
  const int points = static_cast<int>(powers.size());
  std::vector<DropOutcome> outcomes(static_cast<std::size_t>(points) * drops);
  for_each_task(points * drops, exec, [&](int task) {
    const int p = task / drops;
    const int d = task % drops;
    const ChannelSet ch = realize_channels(scene, drop_seed(seed, d));
    outcomes[static_cast<std::size_t>(task)] = evaluate_drop(ch, scene, powers[p], modes, opts, th, statics);
  });
  return outcomes;
}

SweepResult sweep_impl(const SweepConfig& cfg, std::span<const SimMode> report_modes, Execution exec)
{
  cfg.validate();
  SweepResult result;
  const int drops = cfg.drops;
  for (Scenario scenario : cfg.scenarios) {
    SceneConfig scene = cfg.scene;
    scene.scenario = scenario;
    const auto outcomes = evaluate_scenario(scene, cfg.power_grid, drops, cfg.master_seed, report_modes,
                                            cfg.optimizer, cfg.thresholds, cfg.statics, exec);

    for (SimMode mode : report_modes) {
      for (std::size_t p = 0; p < cfg.power_grid.size(); ++p) {
        std::vector<double> samples(static_cast<std::size_t>(drops));
        for (int d = 0; d < drops; ++d)
          samples[static_cast<std::size_t>(d)] = outcomes[p * drops + d].at(mode);
        const PointStats s = summarize(samples);
        result.rows.push_back({scenario, mode, cfg.power_grid[p], s.mean_se, s.stderr_se, drops, cfg.master_seed});
      }
    }

    if (wants(report_modes, SimMode::Hybrid)) {
      for (std::size_t p = 0; p < cfg.power_grid.size(); ++p)
        for (int d = 0; d < drops; ++d) {
          const DropOutcome& o = outcomes[p * drops + d];
          result.decisions.push_back({result.decisions.size(), o.report->tx_power_dbm, o.report->report_class,
                                      o.report->active_gain_db, cfg.thresholds.rho_db, o.chosen});
        }
    }
  }
  return result;
}

}  // namespace

PointStats run_point(const SceneConfig& scene, SimMode mode, double total_power_dbm, int drops, std::uint64_t seed,
                     const OptimizerOptions& opts, const ControllerThresholds& th, StaticPower statics, Execution exec)
{
  if (drops < 1)
    throw std::invalid_argument("run_point: drops must be >= 1");
  const std::array<double, 1> power{total_power_dbm};
  const std::array<SimMode, 1> modes{mode};
  const auto outcomes = evaluate_scenario(scene, power, drops, seed, modes, opts, th, statics, exec);
  std::vector<double> samples;
  samples.reserve(outcomes.size());
  for (const auto& o : outcomes)
    samples.push_back(o.at(mode));
  return summarize(samples);
}

SweepResult run_sweep(const SweepConfig& cfg, Execution exec) { return sweep_impl(cfg, cfg.modes, exec); }

SweepResult run_hybrid_sweep(const SweepConfig& cfg, Execution exec)
{
  if (!wants(cfg.modes, SimMode::Hybrid))
    throw std::invalid_argument("run_hybrid_sweep: Hybrid is not among the configured modes");
  const std::array<SimMode, 1> modes{SimMode::Hybrid};
  return sweep_impl(cfg, modes, exec);
}

std::optional<double> crossover_power(const SweepResult& result, Scenario scenario)
{
  std::map<double, double> passive;
  std::map<double, double> active;
  for (const auto& r : result.rows) {
    if (r.scenario != scenario)
      continue;
    if (r.mode == SimMode::Passive)
      passive[r.total_power_dbm] = r.mean_se;
    else if (r.mode == SimMode::Active)
      active[r.total_power_dbm] = r.mean_se;
  }
  std::vector<double> powers;
  for (const auto& [p, se] : passive)
    if (active.contains(p))
      powers.push_back(p);
  if (powers.empty())
    return std::nullopt;

  // Walk down from the top of the grid while passive keeps its lead.
  std::size_t first = powers.size();
  while (first > 0 && passive[powers[first - 1]] >= active[powers[first - 1]])
    --first;
  if (first == powers.size() || first == 0)
    return std::nullopt;
  return powers[first];
}

std::string summary(const SweepResult& result)
{
  std::ostringstream out;
  std::vector<Scenario> seen;
  for (const auto& r : result.rows)
    if (std::find(seen.begin(), seen.end(), r.scenario) == seen.end())
      seen.push_back(r.scenario);
  for (Scenario s : seen) {
    out << to_string(s) << ": ";
    if (const auto p = crossover_power(result, s))
      out << "passive overtakes active from " << *p << " dBm";
    else
      out << "no passive/active crossover on the grid";
    out << '\n';
  }
  return out.str();
}

namespace {

void append_number(std::string& line, double value)
{
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  line.append(buf, res.ptr);
}

template <typename Int>
void append_integer(std::string& line, Int value)
{
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  line.append(buf, res.ptr);
}

void write_text(const std::filesystem::path& path, const std::string& text)
{
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file)
    throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  file.write(text.data(), static_cast<std::streamsize>(text.size()));
  file.flush();
  if (!file)
    throw std::runtime_error("failed writing '" + path.string() + "'");
}

double parse_double(std::string_view field)
{
  double value = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc{} || res.ptr != field.data() + field.size())
    throw std::invalid_argument("malformed number '" + std::string(field) + "'");
  return value;
}

template <typename Int>
Int parse_integer(std::string_view field)
{
  Int value{};
  const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc{} || res.ptr != field.data() + field.size())
    throw std::invalid_argument("malformed integer '" + std::string(field) + "'");
  return value;
}

}  // namespace

std::string format_csv(const SweepResult& result)
{
  std::string out = "scenario,mode,total_power_dbm,mean_se,stderr,drops,seed\n";
  for (const auto& r : result.rows) {
    std::string line;
    line += to_string(r.scenario);
    line += ',';
    line += to_string(r.mode);
    line += ',';
    append_number(line, r.total_power_dbm);
    line += ',';
    append_number(line, r.mean_se);
    line += ',';
    append_number(line, r.stderr_se);
    line += ',';
    append_integer(line, r.drops);
    line += ',';
    append_integer(line, r.seed);
    line += '\n';
    out += line;
  }
  return out;
}

std::string format_decision_log(std::span<const DecisionRecord> decisions)
{
  std::string out = "index,tx_power_dbm,class,tau_db,rho_db,mode\n";
  for (const auto& d : decisions) {
    std::string line;
    append_integer(line, d.index);
    line += ',';
    append_number(line, d.tx_power_dbm);
    line += ',';
    line += to_string(d.report_class);
    line += ',';
    append_number(line, d.tau_db);
    line += ',';
    append_number(line, d.rho_db);
    line += ',';
    line += to_string(d.mode);
    line += '\n';
    out += line;
  }
  return out;
}

void write_csv(const SweepResult& result, const std::filesystem::path& path) { write_text(path, format_csv(result)); }

void write_decision_log(std::span<const DecisionRecord> decisions, const std::filesystem::path& path)
{
  write_text(path, format_decision_log(decisions));
}

std::vector<SweepRow> parse_csv(std::string_view text)
{
  std::vector<SweepRow> rows;
  std::size_t pos = text.find('\n');
  if (pos == std::string_view::npos)
    return rows;
  ++pos;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos)
      end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (line.empty())
      continue;

    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      fields.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
      if (comma == std::string_view::npos)
        break;
      start = comma + 1;
    }
    if (fields.size() != 7)
      throw std::invalid_argument("expected 7 CSV fields, got " + std::to_string(fields.size()));

    SweepRow r;
    r.scenario = scenario_from_string(fields[0]);
    r.mode = sim_mode_from_string(fields[1]);
    r.total_power_dbm = parse_double(fields[2]);
    r.mean_se = parse_double(fields[3]);
    r.stderr_se = parse_double(fields[4]);
    r.drops = parse_integer<int>(fields[5]);
    r.seed = parse_integer<std::uint64_t>(fields[6]);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace hris
