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

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "hris/config.hpp"

using namespace hris;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& text)
{
  const auto p = std::filesystem::temp_directory_path() / ("hris_cfg_" + name);
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST_CASE("empty file with defaults gives the reference deployment")
{
  const auto path = write_temp("empty.json", "");
  const SweepConfig c = load_config(path, {}, true);
  CHECK(c.scene.num_users == 5);
  CHECK(c.scene.num_bs_antennas == 5);
  CHECK(c.scene.num_ris_elements == 400);
  CHECK(c.scene.noise_power_receiver_dbm == -65.0);
  CHECK(c.scene.bs_position.x == 0.0);
  CHECK(c.scene.bs_position.y == -45.0);
  CHECK(c.scene.ris_position.x == 180.0);
  CHECK(c.scene.ris_position.y == 20.0);
  CHECK(c.scene.user_center.x == 200.0);
  CHECK(c.scene.user_center.y == 0.0);
  CHECK(c.scene.user_radius == 6.0);
  CHECK(c.power_grid.front() == 30.0);
  CHECK(c.power_grid.back() == 80.0);
  CHECK(c.drops == 100);
  CHECK(c.thresholds.high_above_dbm == 60.0);
}

TEST_CASE("file values and overrides")
{
  const auto path = write_temp("values.json", R"({"drops": 7, "num_ris_elements": 64, "modes": ["passive", "hybrid"],
    "phase_range_deg": 40, "precoder": "mrt", "scenarios": ["weak_direct"]})");
  const std::vector<std::string> overrides{"drops=20", "power_grid=[30, 40]"};
  const SweepConfig c = load_config(path, overrides, false);
  CHECK(c.drops == 20);
  CHECK(c.scene.num_ris_elements == 64);
  CHECK(c.modes == std::vector<SimMode>{SimMode::Passive, SimMode::Hybrid});
  CHECK(c.optimizer.phase_range.has_value());
  CHECK(c.optimizer.precoder_kind == PrecoderKind::MRT);
  CHECK(c.scenarios == std::vector<Scenario>{Scenario::WeakDirect});
  CHECK(c.power_grid == std::vector<double>{30.0, 40.0});

  const std::vector<std::string> string_override{"precoder=rzf"};
  CHECK(load_config(path, string_override, false).optimizer.precoder_kind == PrecoderKind::RZF);
}

TEST_CASE("configuration errors")
{
  const auto missing = std::filesystem::temp_directory_path() / "hris_cfg_does_not_exist.json";
  CHECK_THROWS_AS(load_config(missing, {}, false), ConfigError);
  CHECK_NOTHROW(load_config(missing, {}, true));

  const std::vector<std::string> zero_users{"num_users=0"};
  CHECK_THROWS_AS(default_config(zero_users), ConfigError);
  const std::vector<std::string> unknown{"colour=blue"};
  CHECK_THROWS_AS(default_config(unknown), ConfigError);
  const std::vector<std::string> malformed{"drops=lots"};
  CHECK_THROWS_AS(default_config(malformed), ConfigError);
  const std::vector<std::string> no_equals{"drops"};
  CHECK_THROWS_AS(default_config(no_equals), ConfigError);
  const std::vector<std::string> not_increasing{"power_grid=[40, 30]"};
  CHECK_THROWS_AS(default_config(not_increasing), ConfigError);

  CHECK_THROWS_AS(load_config(write_temp("bad.json", "{drops: 3"), {}, false), ConfigError);
  CHECK_THROWS_AS(load_config(write_temp("array.json", "[1, 2]"), {}, false), ConfigError);
  CHECK_THROWS_AS(load_config(write_temp("unknown.json", R"({"nope": 1})"), {}, false), ConfigError);
}

TEST_CASE("ci preset")
{
  const SweepConfig c = ci_preset();
  CHECK(c.scene.num_ris_elements == 64);
  CHECK(c.drops == 20);
  CHECK_NOTHROW(c.validate());
}
