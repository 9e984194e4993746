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

#include "hris/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "hris/units.hpp"

namespace hris {

std::string_view to_string(Scenario s)
{
  return s == Scenario::StrongDirect ? "strong_direct" : "weak_direct";
}

Scenario scenario_from_string(std::string_view name)
{
  if (name == "strong_direct" || name == "strong" || name == "1")
    return Scenario::StrongDirect;
  if (name == "weak_direct" || name == "weak" || name == "2")
    return Scenario::WeakDirect;
  throw std::invalid_argument("unknown scenario '" + std::string(name) + "'");
}

void SceneConfig::validate() const
{
  if (num_users < 1)
    throw std::invalid_argument("num_users must be >= 1");
  if (num_bs_antennas < 1)
    throw std::invalid_argument("num_bs_antennas must be >= 1");
  if (num_ris_elements < 1)
    throw std::invalid_argument("num_ris_elements must be >= 1");
  if (!(user_radius > 0.0) || !std::isfinite(user_radius))
    throw std::invalid_argument("user_radius must be > 0");
  for (double v : {noise_power_receiver_dbm, noise_power_ris_element_dbm, bs_position.x, bs_position.y,
                   ris_position.x, ris_position.y, user_center.x, user_center.y})
    if (!std::isfinite(v))
      throw std::invalid_argument("scene positions and noise powers must be finite");
  if (std::isnan(rician_k_direct_db) || std::isnan(rician_k_ris_db))
    throw std::invalid_argument("Rician K-factors must not be NaN");
}

double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

double path_loss(const PathLossModel& model, double d)
{
  if (!(d >= 1.0))
    throw std::domain_error("path loss is undefined below the 1 m reference distance (d = " +
                            std::to_string(d) + ")");
  return model.intercept_db + model.slope_db_per_decade * std::log10(d);
}

Eigen::VectorXcd sample_rician(double pl_db, double k_factor_db, int len, RandomStream& rng)
{
  if (len < 1)
    throw std::invalid_argument("sample_rician: len must be >= 1");
  const double amplitude = std::sqrt(db_to_linear(-pl_db));

  double los_weight = 0.0;
  double nlos_weight = 1.0;
  if (k_factor_db == std::numeric_limits<double>::infinity()) {
    los_weight = 1.0;
    nlos_weight = 0.0;
  } else {
    const double kappa = db_to_linear(k_factor_db);
    los_weight = std::sqrt(kappa / (kappa + 1.0));
    nlos_weight = std::sqrt(1.0 / (kappa + 1.0));
  }

  const double los_phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
  const std::complex<double> los = std::polar(los_weight, los_phase);

  Eigen::VectorXcd out(len);
  for (int i = 0; i < len; ++i) {
    std::complex<double> scatter{0.0, 0.0};
    if (nlos_weight > 0.0)
      scatter = nlos_weight * rng.complex_normal();
    out[i] = amplitude * (los + scatter);
  }
  return out;
}

PathLossModel direct_link_model(Scenario s)
{
  return s == Scenario::StrongDirect ? kLosModel : kNlosModel;
}

PathLossModel ris_link_model() { return kLosModel; }

namespace {

double clamped_loss(const PathLossModel& model, double d) { return path_loss(model, std::max(d, 1.0)); }

}  // namespace

ChannelSet realize_channels(const SceneConfig& scene, RandomStream rng)
{
  scene.validate();
  const int K = scene.num_users;
  const int M = scene.num_bs_antennas;
  const int N = scene.num_ris_elements;

  ChannelSet ch;
  ch.seed = rng.seed();
  ch.user_positions.reserve(K);
  for (int k = 0; k < K; ++k) {
    const double r = scene.user_radius * std::sqrt(rng.uniform());
    const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
    ch.user_positions.push_back({scene.user_center.x + r * std::cos(phi), scene.user_center.y + r * std::sin(phi)});
  }

  const PathLossModel direct_model = direct_link_model(scene.scenario);
  const PathLossModel ris_model = ris_link_model();

  ch.direct.resize(M, K);
  for (int k = 0; k < K; ++k) {
    const double pl = clamped_loss(direct_model, distance(scene.bs_position, ch.user_positions[k]));
    ch.direct.col(k) = sample_rician(pl, scene.rician_k_direct_db, M, rng);
  }

  const double pl_bs_ris = clamped_loss(ris_model, distance(scene.bs_position, scene.ris_position));
  const Eigen::VectorXcd g = sample_rician(pl_bs_ris, scene.rician_k_ris_db, N * M, rng);
  ch.bs_ris = Eigen::Map<const Eigen::MatrixXcd>(g.data(), N, M);

  ch.ris_user.resize(N, K);
  for (int k = 0; k < K; ++k) {
    const double pl = clamped_loss(ris_model, distance(scene.ris_position, ch.user_positions[k]));
    ch.ris_user.col(k) = sample_rician(pl, scene.rician_k_ris_db, N, rng);
  }
  return ch;
}

ChannelSet realize_channels(const SceneConfig& scene, std::uint64_t seed)
{
  return realize_channels(scene, RandomStream(seed));
}

}  // namespace hris
