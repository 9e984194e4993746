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

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace hris {

enum class RisMode { NoRis, Dormant, Passive, Active };

std::string_view to_string(RisMode m);
RisMode ris_mode_from_string(std::string_view name);

/// Operating mode plus the reflection coefficients p * exp(j * phase_n).
struct RisState {
  RisMode mode = RisMode::NoRis;
  Eigen::VectorXd phases;
  double gain = 1.0;
  std::optional<double> phase_range;

  static RisState no_ris(int num_elements);
  static RisState dormant(int num_elements);
  static RisState passive(Eigen::VectorXd phases, std::optional<double> phase_range = std::nullopt);
  static RisState active(Eigen::VectorXd phases, double gain, std::optional<double> phase_range = std::nullopt);

  /// Effective amplitude applied to the reflected path (0 for NoRis).
  double reflection_gain() const { return mode == RisMode::NoRis ? 0.0 : gain; }

  /// Throws std::invalid_argument if the mode's invariants do not hold.
  void validate() const;
};

/// BS precoder: column k of `columns` is w_k.
struct Precoder {
  Eigen::MatrixXcd columns;
  double bs_power = 0.0;

  double transmit_power() const { return columns.squaredNorm(); }
};

struct LinkBudget {
  double total_power_dbm = 0.0;
  double bs_power = 0.0;
  double amp_power = 0.0;
  double static_power = 0.0;

  double total_watts() const { return bs_power + amp_power + static_power; }
};

/// v_k = h_k + p G^H Phi f_k, i.e. v_k^H = h_k^H + p f_k^H Phi^H G.
Eigen::VectorXcd effective_channel(const Eigen::VectorXcd& direct, const Eigen::VectorXcd& ris_user,
                                   const Eigen::MatrixXcd& bs_ris, const RisState& ris);

/// All K effective channels as the columns of an M x K matrix.
Eigen::MatrixXcd effective_channels(const Eigen::MatrixXcd& direct, const Eigen::MatrixXcd& ris_user,
                                    const Eigen::MatrixXcd& bs_ris, const RisState& ris);

/// Per-user SINR including the amplified RIS element noise in Active mode.
std::vector<double> sinr(const Eigen::MatrixXcd& effective, const Precoder& precoder, const RisState& ris,
                         const Eigen::MatrixXcd& ris_user, double ris_noise_watts, double rx_noise_watts);

/// Sum of log2(1 + SINR_k), bits/s/Hz.
double sum_se(std::span<const double> sinrs);

LinkBudget power_account(RisMode mode, double bs_power, double amp_power, double static_power);

}  // namespace hris
