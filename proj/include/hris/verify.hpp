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

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hris/channel.hpp"
#include "hris/optimize.hpp"

// Reference computations for checking the optimizer and signal model. They
// share only the ChannelSet type with the production path and evaluate the
// received-signal statistics with plain scalar loops.
namespace hris::verify {

/// Sum SE of reflection p * exp(j phase_n) with precoder W, term by term.
double reference_sum_se(const ChannelSet& ch, const Eigen::VectorXd& phases, double gain, bool amplified,
                        const Eigen::MatrixXcd& W, NoisePowers noise);

/// Best single-user SE over every phase combination drawn from `grid`, each
/// evaluated with the matched-filter precoder at `bs_power`. Requires K = 1.
double exhaustive_single_user(const ChannelSet& ch, double bs_power, const std::vector<double>& grid,
                              NoisePowers noise);

/// Largest SE increase obtainable by moving one element to another grid phase.
double grid_local_gap(const ChannelSet& ch, const Eigen::VectorXd& phases, double gain, bool amplified,
                      const Eigen::MatrixXcd& W, NoisePowers noise, const std::vector<double>& grid);

struct RicianMoments {
  double mean_power = 0.0;        ///< E|x|^2
  double los_power = 0.0;         ///< |E x|^2
  double scattered_power = 0.0;   ///< E|x - E x|^2
};

RicianMoments empirical_moments(const Eigen::VectorXcd& samples);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Fast invariant and oracle checks used by the `validate` subcommand.
std::vector<CheckResult> run_validation_suite(std::uint64_t seed);

}  // namespace hris::verify
