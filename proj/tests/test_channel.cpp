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

#include <cmath>
#include <limits>

#include <doctest.h>

#include "hris/channel.hpp"
#include "hris/units.hpp"
#include "hris/verify.hpp"

using namespace hris;

TEST_CASE("distance")
{
  CHECK(distance({0.0, -45.0}, {180.0, 20.0}) == doctest::Approx(191.37659209).epsilon(1e-10));
  CHECK(distance({3.5, -1.25}, {3.5, -1.25}) == 0.0);
  CHECK(distance({0.0, -45.0}, {200.0, 0.0}) == 205.0);
  CHECK(distance({1.0, 2.0}, {-4.0, 7.0}) == distance({-4.0, 7.0}, {1.0, 2.0}));
}

TEST_CASE("path loss")
{
  CHECK(path_loss(kNlosModel, 1.0) == 13.54);
  CHECK(path_loss(kLosModel, 205.0) == doctest::Approx(88.158585).epsilon(1e-8));
  CHECK(path_loss(kNlosModel, 205.0) == doctest::Approx(103.883341).epsilon(1e-8));
  CHECK_THROWS_AS(path_loss(kLosModel, 0.5), std::domain_error);
  CHECK_THROWS_AS(path_loss(kLosModel, std::nan("")), std::domain_error);
}

TEST_CASE("path loss curves are monotone and cross once")
{
  int sign_changes = 0;
  double prev_diff = path_loss(kLosModel, 1.0) - path_loss(kNlosModel, 1.0);
  double prev_los = path_loss(kLosModel, 1.0);
  double prev_nlos = path_loss(kNlosModel, 1.0);
  for (double d = 1.05; d < 5000.0; d *= 1.05) {
    const double los = path_loss(kLosModel, d);
    const double nlos = path_loss(kNlosModel, d);
    CHECK(los > prev_los);
    CHECK(nlos > prev_nlos);
    const double diff = los - nlos;
    if ((diff > 0) != (prev_diff > 0))
      ++sign_changes;
    prev_diff = diff;
    prev_los = los;
    prev_nlos = nlos;
  }
  CHECK(sign_changes == 1);
  // analytic crossing of the two lines
  CHECK(path_loss(kLosModel, 24.6093817) == doctest::Approx(path_loss(kNlosModel, 24.6093817)).epsilon(1e-8));
}

TEST_CASE("sample_rician LoS-only limit has constant magnitude")
{
  RandomStream rng(7);
  const auto x = sample_rician(80.0, std::numeric_limits<double>::infinity(), 64, rng);
  const double expected = std::sqrt(db_to_linear(-80.0));
  for (const auto& v : x)
    CHECK(std::abs(v) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("sample_rician second moment matches the path gain")
{
  for (double k_db : {-std::numeric_limits<double>::infinity(), 0.0, 3.0, 10.0}) {
    CAPTURE(k_db);
    RandomStream rng(derive_seed(11, static_cast<std::uint64_t>(k_db + 1000)));
    const auto m = verify::empirical_moments(sample_rician(0.0, k_db, 100000, rng));
    CHECK(std::abs(m.mean_power - 1.0) < 0.01);
  }
  RandomStream rng(5);
  const auto m = verify::empirical_moments(sample_rician(90.0, 3.0, 100000, rng));
  CHECK(std::abs(m.mean_power / db_to_linear(-90.0) - 1.0) < 0.01);
}

TEST_CASE("sample_rician scattered-to-LoS ratio is 1/kappa")
{
  for (double k_db : {0.0, 3.0, 10.0}) {
    CAPTURE(k_db);
    RandomStream rng(derive_seed(3, static_cast<std::uint64_t>(k_db)));
    const auto m = verify::empirical_moments(sample_rician(60.0, k_db, 100000, rng));
    CHECK(std::abs(m.scattered_power / m.los_power * db_to_linear(k_db) - 1.0) < 0.02);
  }
}

TEST_CASE("realize_channels dimensions and geometry")
{
  SceneConfig scene;
  const ChannelSet ch = realize_channels(scene, 42);
  CHECK(ch.direct.rows() == 5);
  CHECK(ch.direct.cols() == 5);
  CHECK(ch.bs_ris.rows() == 400);
  CHECK(ch.bs_ris.cols() == 5);
  CHECK(ch.ris_user.rows() == 400);
  CHECK(ch.ris_user.cols() == 5);
  CHECK(ch.seed == 42);
  CHECK(ch.direct.allFinite());
  CHECK(ch.bs_ris.allFinite());
  CHECK(ch.ris_user.allFinite());

  for (int s = 0; s < 200; ++s) {
    const ChannelSet c = realize_channels(scene, derive_seed(9, s));
    for (const auto& p : c.user_positions)
      CHECK(distance(p, {200.0, 0.0}) <= 6.0);
  }
}

TEST_CASE("realize_channels is a pure function of scene and seed")
{
  SceneConfig scene;
  scene.num_ris_elements = 32;
  const ChannelSet a = realize_channels(scene, 1234);
  const ChannelSet b = realize_channels(scene, 1234);
  CHECK(a.direct == b.direct);
  CHECK(a.bs_ris == b.bs_ris);
  CHECK(a.ris_user == b.ris_user);
  const ChannelSet c = realize_channels(scene, 1235);
  CHECK(a.bs_ris != c.bs_ris);
}

TEST_CASE("scenario only changes the direct-link path loss")
{
  SceneConfig strong;
  strong.num_ris_elements = 16;
  SceneConfig weak = strong;
  weak.scenario = Scenario::WeakDirect;
  const ChannelSet a = realize_channels(strong, 77);
  const ChannelSet b = realize_channels(weak, 77);
  CHECK(a.bs_ris == b.bs_ris);
  CHECK(a.ris_user == b.ris_user);
  for (int k = 0; k < 5; ++k) {
    const double d = distance(strong.bs_position, a.user_positions[k]);
    const double ratio_db = path_loss(kNlosModel, d) - path_loss(kLosModel, d);
    CHECK(a.direct.col(k).squaredNorm() / b.direct.col(k).squaredNorm() ==
          doctest::Approx(db_to_linear(ratio_db)).epsilon(1e-9));
  }
}

TEST_CASE("scene validation")
{
  SceneConfig scene;
  scene.num_users = 0;
  CHECK_THROWS_AS(scene.validate(), std::invalid_argument);
  scene = {};
  scene.user_radius = 0.0;
  CHECK_THROWS_AS(scene.validate(), std::invalid_argument);
  scene = {};
  scene.noise_power_receiver_dbm = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(scene.validate(), std::invalid_argument);
}
