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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "hris/sim.hpp"
#include "hris/units.hpp"

using namespace hris;

namespace {

SweepConfig small_sweep()
{
  SweepConfig cfg;
  cfg.scene.num_ris_elements = 8;
  cfg.optimizer.phase_grid_size = 8;
  cfg.optimizer.max_outer_iters = 5;
  cfg.drops = 6;
  cfg.master_seed = 17;
  return cfg;
}

std::filesystem::path temp_file(const std::string& name)
{
  return std::filesystem::temp_directory_path() / ("hris_test_" + name);
}

std::string slurp(const std::filesystem::path& p)
{
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("run_point with one drop is one end-to-end evaluation")
{
  const SweepConfig cfg = small_sweep();
  for (SimMode mode : {SimMode::NoRis, SimMode::Dormant, SimMode::Passive, SimMode::Active}) {
    CAPTURE(to_string(mode));
    const PointStats s = run_point(cfg.scene, mode, 45.0, 1, 99, cfg.optimizer);
    const ChannelSet ch = realize_channels(cfg.scene, drop_seed(99, 0));
    const std::array<SimMode, 1> modes{mode};
    const DropOutcome o = evaluate_drop(ch, cfg.scene, 45.0, modes, cfg.optimizer, cfg.thresholds);
    CHECK(s.mean_se == o.at(mode));
    CHECK(s.stderr_se == 0.0);
  }
}

TEST_CASE("run_point is deterministic and matches the serial reference")
{
  const SweepConfig cfg = small_sweep();
  const PointStats a = run_point(cfg.scene, SimMode::Passive, 50.0, 8, 5, cfg.optimizer);
  const PointStats b = run_point(cfg.scene, SimMode::Passive, 50.0, 8, 5, cfg.optimizer);
  const PointStats c = run_point(cfg.scene, SimMode::Passive, 50.0, 8, 5, cfg.optimizer, {}, {}, Execution::Serial);
  CHECK(a.mean_se == b.mean_se);
  CHECK(a.stderr_se == b.stderr_se);
  CHECK(a.mean_se == c.mean_se);
  CHECK(a.stderr_se == c.stderr_se);
}

TEST_CASE("standard error shrinks as one over sqrt(drops)")
{
  SceneConfig scene;
  scene.num_ris_elements = 4;
  const OptimizerOptions opts;
  double ratio_sum = 0.0;
  const int repeats = 4;
  for (int r = 0; r < repeats; ++r) {
    const auto few = run_point(scene, SimMode::NoRis, 40.0, 100, 1000 + r, opts);
    const auto many = run_point(scene, SimMode::NoRis, 40.0, 400, 2000 + r, opts);
    ratio_sum += many.stderr_se / few.stderr_se;
  }
  CHECK(std::abs(ratio_sum / repeats - 0.5) <= 0.5 * 0.3);
}

TEST_CASE("summarize")
{
  const std::vector<double> xs{1.0, 2.0, 3.0, 4.0};
  const PointStats s = summarize(xs);
  CHECK(s.mean_se == 2.5);
  CHECK(s.stderr_se == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
}

TEST_CASE("run_sweep cardinality and ordering")
{
  SweepConfig cfg = small_sweep();
  cfg.drops = 2;
  cfg.modes = {SimMode::NoRis, SimMode::Dormant, SimMode::Passive};
  cfg.power_grid.clear();
  for (int i = 0; i < 12; ++i)
    cfg.power_grid.push_back(25.0 + 5.0 * i);
  const SweepResult r = run_sweep(cfg);
  REQUIRE(r.rows.size() == 72);
  CHECK(r.decisions.empty());
  std::size_t i = 0;
  for (Scenario s : cfg.scenarios)
    for (SimMode m : cfg.modes)
      for (double p : cfg.power_grid) {
        CHECK(r.rows[i].scenario == s);
        CHECK(r.rows[i].mode == m);
        CHECK(r.rows[i].total_power_dbm == p);
        CHECK(r.rows[i].drops == 2);
        CHECK(r.rows[i].seed == cfg.master_seed);
        CHECK(r.rows[i].mean_se >= 0.0);
        ++i;
      }
  for (std::size_t j = 0; j < r.rows.size(); ++j)
    if (r.rows[j].mode == SimMode::NoRis && j > 0 && r.rows[j - 1].mode == SimMode::NoRis &&
        r.rows[j - 1].scenario == r.rows[j].scenario)
      CHECK(r.rows[j].mean_se > r.rows[j - 1].mean_se);

  const std::string csv = format_csv(r);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 73);
}

TEST_CASE("sweep rows reuse the same drops at every power")
{
  SweepConfig cfg = small_sweep();
  cfg.scenarios = {Scenario::WeakDirect};
  cfg.modes = {SimMode::Passive};
  cfg.power_grid = {35.0, 55.0};
  cfg.drops = 3;
  const SweepResult r = run_sweep(cfg);
  for (std::size_t p = 0; p < 2; ++p) {
    SceneConfig scene = cfg.scene;
    scene.scenario = Scenario::WeakDirect;
    const PointStats s = run_point(scene, SimMode::Passive, cfg.power_grid[p], 3, cfg.master_seed, cfg.optimizer);
    CHECK(r.rows[p].mean_se == s.mean_se);
  }
  // drop seeds depend on the drop index only
  CHECK(drop_seed(17, 2) == drop_seed(17, 2));
  CHECK(drop_seed(17, 2) != drop_seed(17, 3));
  const ChannelSet a = realize_channels(cfg.scene, drop_seed(17, 1));
  const ChannelSet b = realize_channels(cfg.scene, drop_seed(17, 1));
  CHECK(a.ris_user == b.ris_user);
}

TEST_CASE("serial and parallel sweeps agree bit for bit")
{
  SweepConfig cfg = small_sweep();
  cfg.power_grid = {30.0, 50.0, 70.0};
  const SweepResult par = run_sweep(cfg, Execution::Parallel);
  const SweepResult ser = run_sweep(cfg, Execution::Serial);
  CHECK(format_csv(par) == format_csv(ser));
  CHECK(format_decision_log(par.decisions) == format_decision_log(ser.decisions));
}

TEST_CASE("hybrid forced to passive reproduces the passive row")
{
  SweepConfig cfg = small_sweep();
  cfg.power_grid = {30.0, 45.0, 65.0};
  cfg.modes = {SimMode::Passive, SimMode::Hybrid};
  cfg.thresholds = {1000.0, 2000.0, std::numeric_limits<double>::infinity()};
  const SweepResult r = run_sweep(cfg);
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    if (r.rows[i].mode != SimMode::Hybrid)
      continue;
    const auto passive = std::find_if(r.rows.begin(), r.rows.end(), [&](const SweepRow& row) {
      return row.mode == SimMode::Passive && row.scenario == r.rows[i].scenario &&
             row.total_power_dbm == r.rows[i].total_power_dbm;
    });
    REQUIRE(passive != r.rows.end());
    CHECK(r.rows[i].mean_se == passive->mean_se);
    CHECK(r.rows[i].stderr_se == passive->stderr_se);
  }
}

TEST_CASE("hybrid sweep: envelope and high-power safety")
{
  SweepConfig cfg = small_sweep();
  cfg.power_grid = {30.0, 40.0, 50.0, 60.0, 65.0, 70.0};
  cfg.thresholds = {61.0, 62.0, 0.0};
  const SweepResult r = run_sweep(cfg);
  for (const auto& h : r.rows) {
    if (h.mode != SimMode::Hybrid || h.total_power_dbm > 62.0)
      continue;
    for (const auto& f : r.rows)
      if (f.mode != SimMode::Hybrid && f.scenario == h.scenario && f.total_power_dbm == h.total_power_dbm)
        CHECK(h.mean_se >= f.mean_se - 1e-12);
  }

  const SweepResult hy = run_hybrid_sweep(small_sweep());
  CHECK(hy.rows.size() == small_sweep().scenarios.size() * small_sweep().power_grid.size());
  CHECK(hy.decisions.size() == hy.rows.size() * 6);
  for (std::size_t i = 0; i < hy.decisions.size(); ++i) {
    const auto& d = hy.decisions[i];
    CHECK(d.index == i);
    if (d.tx_power_dbm > 60.0) {
      CHECK(d.report_class == ReportClass::High);
      CHECK((d.mode == RisMode::Passive || d.mode == RisMode::Dormant));
    }
  }

  SweepConfig no_hybrid = small_sweep();
  no_hybrid.modes = {SimMode::Passive};
  CHECK_THROWS_AS(run_hybrid_sweep(no_hybrid), std::invalid_argument);
}

TEST_CASE("csv output")
{
  SUBCASE("empty result is header only")
  {
    const auto path = temp_file("empty.csv");
    write_csv({}, path);
    CHECK(slurp(path) == "scenario,mode,total_power_dbm,mean_se,stderr,drops,seed\n");
  }
  SUBCASE("round trip keeps full precision")
  {
    SweepResult r;
    r.rows.push_back({Scenario::WeakDirect, SimMode::Hybrid, 42.5, 1.0 / 3.0, 2.0e-17, 100, 18446744073709551615ULL});
    r.rows.push_back({Scenario::StrongDirect, SimMode::Active, -30.0, 123456.789012345678, 0.1, 1, 0});
    const auto path = temp_file("round.csv");
    write_csv(r, path);
    const auto text = slurp(path);
    CHECK(text.find('\r') == std::string::npos);
    const auto rows = parse_csv(text);
    REQUIRE(rows.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(rows[i].scenario == r.rows[i].scenario);
      CHECK(rows[i].mode == r.rows[i].mode);
      CHECK(rows[i].total_power_dbm == r.rows[i].total_power_dbm);
      CHECK(rows[i].mean_se == r.rows[i].mean_se);
      CHECK(rows[i].stderr_se == r.rows[i].stderr_se);
      CHECK(rows[i].drops == r.rows[i].drops);
      CHECK(rows[i].seed == r.rows[i].seed);
    }
  }
  SUBCASE("unwritable path names the path")
  {
    const std::string bad = "/nonexistent-dir/hris/out.csv";
    try {
      write_csv({}, bad);
      FAIL("expected an exception");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()).find(bad) != std::string::npos);
    }
  }
  SUBCASE("decision log header")
  {
    const std::vector<DecisionRecord> log{{0, 65.0, ReportClass::High, 1.5, 0.0, RisMode::Dormant}};
    CHECK(format_decision_log(log) == "index,tx_power_dbm,class,tau_db,rho_db,mode\n0,65,high,1.5,0,dormant\n");
  }
}

TEST_CASE("crossover detection")
{
  SweepResult r;
  const double active[] = {10, 12, 14, 15, 16};
  const double passive[] = {5, 8, 13, 15.5, 18};
  for (int i = 0; i < 5; ++i) {
    r.rows.push_back({Scenario::StrongDirect, SimMode::Active, 30.0 + 10 * i, active[i], 0, 1, 0});
    r.rows.push_back({Scenario::StrongDirect, SimMode::Passive, 30.0 + 10 * i, passive[i], 0, 1, 0});
  }
  CHECK(crossover_power(r, Scenario::StrongDirect) == 60.0);
  CHECK_FALSE(crossover_power(r, Scenario::WeakDirect).has_value());
  CHECK(summary(r).find("60 dBm") != std::string::npos);
}
