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

#include "hris/signal.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "hris/units.hpp"

namespace hris {

std::string_view to_string(RisMode m)
{
  switch (m) {
    case RisMode::NoRis: return "noris";
    case RisMode::Dormant: return "dormant";
    case RisMode::Passive: return "passive";
    case RisMode::Active: return "active";
  }
  return "unknown";
}

RisMode ris_mode_from_string(std::string_view name)
{
  if (name == "noris" || name == "no_ris") return RisMode::NoRis;
  if (name == "dormant") return RisMode::Dormant;
  if (name == "passive") return RisMode::Passive;
  if (name == "active") return RisMode::Active;
  throw std::invalid_argument("unknown RIS mode '" + std::string(name) + "'");
}

RisState RisState::no_ris(int num_elements)
{
  return {RisMode::NoRis, Eigen::VectorXd::Zero(num_elements), 1.0, std::nullopt};
}

RisState RisState::dormant(int num_elements)
{
  return {RisMode::Dormant, Eigen::VectorXd::Zero(num_elements), 1.0, std::nullopt};
}

RisState RisState::passive(Eigen::VectorXd phases, std::optional<double> phase_range)
{
  return {RisMode::Passive, std::move(phases), 1.0, phase_range};
}

RisState RisState::active(Eigen::VectorXd phases, double gain, std::optional<double> phase_range)
{
  return {RisMode::Active, std::move(phases), gain, phase_range};
}

void RisState::validate() const
{
  if (!(gain >= 0.0) || !std::isfinite(gain))
    throw std::invalid_argument("RIS gain must be finite and >= 0");
  if ((mode == RisMode::Passive || mode == RisMode::Dormant) && gain != 1.0)
    throw std::invalid_argument("passive and dormant reflection must be unit modulus");
  if (mode == RisMode::Dormant && !phases.isZero(0.0))
    throw std::invalid_argument("dormant RIS phases must all be zero");
  if (phase_range) {
    const double bound = *phase_range;
    for (double phase : phases)
      if (std::abs(phase) > bound)
        throw std::invalid_argument("phase outside the allowed range");
  }
}

Eigen::VectorXcd effective_channel(const Eigen::VectorXcd& direct, const Eigen::VectorXcd& ris_user,
                                   const Eigen::MatrixXcd& bs_ris, const RisState& ris)
{
  const auto M = bs_ris.cols();
  const auto N = bs_ris.rows();
  if (direct.size() != M || ris_user.size() != N || ris.phases.size() != N)
    throw std::invalid_argument("effective_channel: dimension mismatch");

  Eigen::VectorXcd v = direct;
  const double p = ris.reflection_gain();
  if (p == 0.0)
    return v;
  Eigen::VectorXcd weighted(N);
  for (Eigen::Index n = 0; n < N; ++n)
    weighted[n] = std::polar(1.0, ris.phases[n]) * ris_user[n];
  v.noalias() += p * (bs_ris.adjoint() * weighted);
  return v;
}

Eigen::MatrixXcd effective_channels(const Eigen::MatrixXcd& direct, const Eigen::MatrixXcd& ris_user,
                                    const Eigen::MatrixXcd& bs_ris, const RisState& ris)
{
  if (direct.cols() != ris_user.cols())
    throw std::invalid_argument("effective_channels: user count mismatch");
  Eigen::MatrixXcd out(direct.rows(), direct.cols());
  for (Eigen::Index k = 0; k < direct.cols(); ++k)
    out.col(k) = effective_channel(direct.col(k), ris_user.col(k), bs_ris, ris);
  return out;
}

std::vector<double> sinr(const Eigen::MatrixXcd& effective, const Precoder& precoder, const RisState& ris,
                         const Eigen::MatrixXcd& ris_user, double ris_noise_watts, double rx_noise_watts)
{
  const auto K = effective.cols();
  if (precoder.columns.cols() != K || precoder.columns.rows() != effective.rows())
    throw std::invalid_argument("sinr: precoder dimensions do not match the effective channels");

  // gram(k, j) = v_k^H w_j
  const Eigen::MatrixXcd gram = effective.adjoint() * precoder.columns;
  const double p = ris.reflection_gain();
  const bool amplified = ris.mode == RisMode::Active;

  std::vector<double> out(static_cast<std::size_t>(K));
  for (Eigen::Index k = 0; k < K; ++k) {
    double interference = 0.0;
    for (Eigen::Index j = 0; j < K; ++j)
      if (j != k)
        interference += std::norm(gram(k, j));
    double noise = rx_noise_watts;
    if (amplified)
      noise += p * p * ris_noise_watts * ris_user.col(k).squaredNorm();
    out[static_cast<std::size_t>(k)] = std::norm(gram(k, k)) / (interference + noise);
  }
  return out;
}

double sum_se(std::span<const double> sinrs)
{
  double total = 0.0;
  for (double s : sinrs)
    total += std::log2(1.0 + s);
  return total;
}

LinkBudget power_account(RisMode mode, double bs_power, double amp_power, double static_power)
{
  if (bs_power < 0.0 || amp_power < 0.0 || static_power < 0.0)
    throw std::invalid_argument("power_account: powers must be non-negative");
  LinkBudget budget;
  budget.bs_power = bs_power;
  budget.static_power = static_power;
  budget.amp_power = mode == RisMode::Active ? amp_power : 0.0;
  budget.total_power_dbm = watts_to_dbm(budget.total_watts());
  return budget;
}

}  // namespace hris
