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

#include <cstdint>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "hris/rng.hpp"

namespace hris {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

enum class Scenario { StrongDirect, WeakDirect };

std::string_view to_string(Scenario s);
Scenario scenario_from_string(std::string_view name);

/// Geometry, array sizes and noise/fading parameters of one deployment.
/// Defaults reproduce the reference outdoor layout: BS at (0,-45), RIS at
/// (180,20), five users in a 6 m disk around (200,0).
struct SceneConfig {
  Point2 bs_position{0.0, -45.0};
  Point2 ris_position{180.0, 20.0};
  Point2 user_center{200.0, 0.0};
  double user_radius = 6.0;
  int num_users = 5;
  int num_bs_antennas = 5;
  int num_ris_elements = 400;
  double noise_power_receiver_dbm = -65.0;
  double noise_power_ris_element_dbm = -65.0;
  double rician_k_direct_db = 3.0;
  double rician_k_ris_db = 0.0;
  Scenario scenario = Scenario::StrongDirect;

  /// Throws std::invalid_argument naming the first violated invariant.
  void validate() const;
};

/// Log-distance path loss, intercept + slope * log10(d).
struct PathLossModel {
  double intercept_db;
  double slope_db_per_decade;
};

/// 37.3 + 22.0 log10(d): the low-loss curve, used for LoS-like links.
inline constexpr PathLossModel kLosModel{37.3, 22.0};
/// 13.54 + 39.08 log10(d): the high-loss curve, used for the weak direct link.
inline constexpr PathLossModel kNlosModel{13.54, 39.08};

/// One channel realization. Column k of `direct` is h_k (M), column k of
/// `ris_user` is f_k (N); `bs_ris` is G (N x M).
struct ChannelSet {
  Eigen::MatrixXcd direct;
  Eigen::MatrixXcd bs_ris;
  Eigen::MatrixXcd ris_user;
  std::vector<Point2> user_positions;
  std::uint64_t seed = 0;

  int num_users() const { return static_cast<int>(direct.cols()); }
  int num_bs_antennas() const { return static_cast<int>(direct.rows()); }
  int num_ris_elements() const { return static_cast<int>(bs_ris.rows()); }
};

double distance(Point2 a, Point2 b);

/// Throws std::domain_error for d < 1 m.
double path_loss(const PathLossModel& model, double d);

/// Draws `len` Rician entries with mean power 10^(-pl_db/10). The LoS term
/// shares one uniformly drawn phase across the whole call. k_factor_db may be
/// +inf (pure LoS) or -inf (Rayleigh).
Eigen::VectorXcd sample_rician(double pl_db, double k_factor_db, int len, RandomStream& rng);

/// Path-loss models applied to the direct link and to both RIS hops.
PathLossModel direct_link_model(Scenario s);
PathLossModel ris_link_model();

ChannelSet realize_channels(const SceneConfig& scene, RandomStream rng);
ChannelSet realize_channels(const SceneConfig& scene, std::uint64_t seed);

}  // namespace hris
