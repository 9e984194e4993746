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

#include "hris/config.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <json.hpp>

#include "hris/units.hpp"

namespace hris {

namespace {

using json = nlohmann::json;
using Setter = std::function<void(SweepConfig&, const json&)>;

template <typename T>
T as(const json& v, const std::string& key)
{
  try {
    if constexpr (std::is_same_v<T, int>) {
      if (!v.is_number_integer())
        throw ConfigError("");
    } else if constexpr (std::is_same_v<T, double>) {
      if (!v.is_number())
        throw ConfigError("");
    } else if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean())
        throw ConfigError("");
    } else if constexpr (std::is_same_v<T, std::uint64_t>) {
      if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
        throw ConfigError("");
    }
    return v.get<T>();
  } catch (const std::exception&) {
    throw ConfigError("malformed value for '" + key + "': " + v.dump());
  }
}

std::vector<double> as_numbers(const json& v, const std::string& key)
{
  if (!v.is_array())
    throw ConfigError("'" + key + "' must be an array of numbers");
  std::vector<double> out;
  for (const auto& e : v)
    out.push_back(as<double>(e, key));
  return out;
}

std::vector<std::string> as_strings(const json& v, const std::string& key)
{
  if (!v.is_array())
    throw ConfigError("'" + key + "' must be an array of strings");
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string())
      throw ConfigError("'" + key + "' must be an array of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

template <typename Enum, typename Parse>
Enum parse_enum(const json& v, const std::string& key, Parse parse)
{
  if (!v.is_string())
    throw ConfigError("'" + key + "' must be a string");
  try {
    return parse(v.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ConfigError("malformed value for '" + key + "': " + e.what());
  }
}

const std::map<std::string, Setter>& setters()
{
  static const std::map<std::string, Setter> table = {
      {"bs_x", [](SweepConfig& c, const json& v) { c.scene.bs_position.x = as<double>(v, "bs_x"); }},
      {"bs_y", [](SweepConfig& c, const json& v) { c.scene.bs_position.y = as<double>(v, "bs_y"); }},
      {"ris_x", [](SweepConfig& c, const json& v) { c.scene.ris_position.x = as<double>(v, "ris_x"); }},
      {"ris_y", [](SweepConfig& c, const json& v) { c.scene.ris_position.y = as<double>(v, "ris_y"); }},
      {"user_center_x", [](SweepConfig& c, const json& v) { c.scene.user_center.x = as<double>(v, "user_center_x"); }},
      {"user_center_y", [](SweepConfig& c, const json& v) { c.scene.user_center.y = as<double>(v, "user_center_y"); }},
      {"user_radius", [](SweepConfig& c, const json& v) { c.scene.user_radius = as<double>(v, "user_radius"); }},
      {"num_users", [](SweepConfig& c, const json& v) { c.scene.num_users = as<int>(v, "num_users"); }},
      {"num_bs_antennas", [](SweepConfig& c, const json& v) { c.scene.num_bs_antennas = as<int>(v, "num_bs_antennas"); }},
      {"num_ris_elements",
       [](SweepConfig& c, const json& v) { c.scene.num_ris_elements = as<int>(v, "num_ris_elements"); }},
      {"noise_power_dbm",
       [](SweepConfig& c, const json& v) { c.scene.noise_power_receiver_dbm = as<double>(v, "noise_power_dbm"); }},
      {"ris_noise_power_dbm",
       [](SweepConfig& c, const json& v) { c.scene.noise_power_ris_element_dbm = as<double>(v, "ris_noise_power_dbm"); }},
      {"rician_k_direct_db",
       [](SweepConfig& c, const json& v) { c.scene.rician_k_direct_db = as<double>(v, "rician_k_direct_db"); }},
      {"rician_k_ris_db", [](SweepConfig& c, const json& v) { c.scene.rician_k_ris_db = as<double>(v, "rician_k_ris_db"); }},
      {"scenarios",
       [](SweepConfig& c, const json& v) {
         c.scenarios.clear();
         for (const auto& s : as_strings(v, "scenarios"))
           c.scenarios.push_back(parse_enum<Scenario>(json(s), "scenarios", scenario_from_string));
       }},
      {"power_grid", [](SweepConfig& c, const json& v) { c.power_grid = as_numbers(v, "power_grid"); }},
      {"modes",
       [](SweepConfig& c, const json& v) {
         c.modes.clear();
         for (const auto& s : as_strings(v, "modes"))
           c.modes.push_back(parse_enum<SimMode>(json(s), "modes", sim_mode_from_string));
       }},
      {"drops", [](SweepConfig& c, const json& v) { c.drops = as<int>(v, "drops"); }},
      {"seed", [](SweepConfig& c, const json& v) { c.master_seed = as<std::uint64_t>(v, "seed"); }},
      {"max_outer_iters", [](SweepConfig& c, const json& v) { c.optimizer.max_outer_iters = as<int>(v, "max_outer_iters"); }},
      {"phase_grid_size", [](SweepConfig& c, const json& v) { c.optimizer.phase_grid_size = as<int>(v, "phase_grid_size"); }},
      {"tolerance", [](SweepConfig& c, const json& v) { c.optimizer.tolerance = as<double>(v, "tolerance"); }},
      {"precoder",
       [](SweepConfig& c, const json& v) {
         c.optimizer.precoder_kind = parse_enum<PrecoderKind>(v, "precoder", precoder_kind_from_string);
       }},
      {"power_split", [](SweepConfig& c, const json& v) { c.optimizer.power_split = as<double>(v, "power_split"); }},
      {"split_grid", [](SweepConfig& c, const json& v) { c.optimizer.split_grid = as_numbers(v, "split_grid"); }},
      {"search_split", [](SweepConfig& c, const json& v) { c.optimizer.search_split = as<bool>(v, "search_split"); }},
      {"phase_range_deg",
       [](SweepConfig& c, const json& v) {
         if (v.is_null())
           c.optimizer.phase_range.reset();
         else
           c.optimizer.phase_range = deg_to_rad(as<double>(v, "phase_range_deg"));
       }},
      {"weak_below_dbm", [](SweepConfig& c, const json& v) { c.thresholds.weak_below_dbm = as<double>(v, "weak_below_dbm"); }},
      {"high_above_dbm", [](SweepConfig& c, const json& v) { c.thresholds.high_above_dbm = as<double>(v, "high_above_dbm"); }},
      {"rho_db", [](SweepConfig& c, const json& v) { c.thresholds.rho_db = as<double>(v, "rho_db"); }},
      {"passive_static_w", [](SweepConfig& c, const json& v) { c.statics.passive = as<double>(v, "passive_static_w"); }},
      {"dormant_static_w", [](SweepConfig& c, const json& v) { c.statics.dormant = as<double>(v, "dormant_static_w"); }},
      {"point_power_dbm", [](SweepConfig& c, const json& v) { c.point_power_dbm = as<double>(v, "point_power_dbm"); }},
      {"output",
       [](SweepConfig& c, const json& v) {
         if (!v.is_string())
           throw ConfigError("'output' must be a string");
         c.output_path = v.get<std::string>();
       }},
      {"decision_log",
       [](SweepConfig& c, const json& v) {
         if (!v.is_string())
           throw ConfigError("'decision_log' must be a string");
         c.decision_log_path = v.get<std::string>();
       }},
  };
  return table;
}

void apply(SweepConfig& cfg, const std::string& key, const json& value)
{
  const auto& table = setters();
  const auto it = table.find(key);
  if (it == table.end())
    throw ConfigError("unknown configuration key '" + key + "'");
  it->second(cfg, value);
}

json parse_override_value(const std::string& text)
{
  try {
    return json::parse(text);
  } catch (const json::parse_error&) {
    return json(text);
  }
}

SweepConfig finish(SweepConfig cfg, std::span<const std::string> overrides)
{
  for (const auto& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ConfigError("override '" + o + "' is not of the form key=value");
    apply(cfg, o.substr(0, eq), parse_override_value(o.substr(eq + 1)));
  }
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid configuration: ") + e.what());
  }
  return cfg;
}

}  // namespace

SweepConfig load_config(const std::filesystem::path& path, std::span<const std::string> overrides, bool allow_defaults)
{
  SweepConfig cfg;
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    if (!allow_defaults)
      throw ConfigError("cannot read configuration file '" + path.string() + "'");
    return finish(cfg, overrides);
  }
  std::stringstream buffer;
  buffer << file.rdbuf();
  const std::string text = buffer.str();
  if (text.find_first_not_of(" \t\r\n") != std::string::npos) {
    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ConfigError("malformed configuration file '" + path.string() + "': " + e.what());
    }
    if (!doc.is_object())
      throw ConfigError("configuration file '" + path.string() + "' must hold a JSON object");
    for (const auto& [key, value] : doc.items())
      apply(cfg, key, value);
  }
  return finish(cfg, overrides);
}

SweepConfig default_config(std::span<const std::string> overrides) { return finish(SweepConfig{}, overrides); }

SweepConfig ci_preset()
{
  SweepConfig cfg;
  cfg.scene.num_ris_elements = 64;
  cfg.drops = 20;
  return cfg;
}

}  // namespace hris
