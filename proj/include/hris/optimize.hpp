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
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "hris/channel.hpp"
#include "hris/signal.hpp"

namespace hris {

enum class PrecoderKind { MRT, RZF };

std::string_view to_string(PrecoderKind k);
PrecoderKind precoder_kind_from_string(std::string_view name);

struct OptimizerOptions {
  int max_outer_iters = 20;
  int phase_grid_size = 64;
  double tolerance = 1e-4;
  PrecoderKind precoder_kind = PrecoderKind::RZF;
  /// Fraction of the total budget spent on RIS amplification (Active only).
  double power_split = 0.5;
  std::vector<double> split_grid{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  /// When true, Active runs pick the best split from split_grid instead of power_split.
  bool search_split = false;
  /// Symmetric phase bound in radians; unset means the full circle.
  std::optional<double> phase_range;

  void validate() const;
};

struct NoisePowers {
  double receiver = 0.0;     ///< W
  double ris_element = 0.0;  ///< W

  static NoisePowers from_scene(const SceneConfig& scene);
};

struct PassiveResult {
  RisState ris;
  Precoder precoder;
  double sum_se = 0.0;
  /// Sum SE after initialization and after every accepted outer iteration.
  std::vector<double> trace;
};

struct ActiveResult {
  RisState ris;
  Precoder precoder;
  double sum_se = 0.0;
  LinkBudget budget;
  double power_split = 0.0;
  std::vector<double> trace;
};

struct SplitChoice {
  double power_split = 0.0;
  double sum_se = 0.0;
  ActiveResult result;
};

/// MRT or RZF precoder scaled to exactly `bs_power` watts. Columns of
/// `effective` are the effective channels v_k.
Precoder make_precoder(const Eigen::MatrixXcd& effective, double bs_power, PrecoderKind kind, double rx_noise);

/// Phases evaluated per element by the coordinate ascent.
std::vector<double> phase_candidates(int grid_size, std::optional<double> phase_range);

/// Sum SE of a fixed RIS configuration with a freshly computed precoder.
double evaluate_sum_se(const ChannelSet& ch, const RisState& ris, const Precoder& precoder, NoisePowers noise);

/// NoRis and Dormant operation: the RIS is not optimized, only the precoder.
double fixed_ris_sum_se(const ChannelSet& ch, const RisState& ris, double bs_power, NoisePowers noise,
                        PrecoderKind kind);

/// Amplifier gain that spends exactly `amp_power` on the reflected signal plus
/// amplified element noise: sqrt(amp / (||G W||_F^2 + N sigma^2)).
double active_gain(const Eigen::MatrixXcd& bs_ris, const Eigen::MatrixXcd& precoder, double ris_noise,
                   double amp_power);

/// Output power radiated by the amplifying surface for gain p.
double amplifier_output_power(const Eigen::MatrixXcd& bs_ris, const Eigen::MatrixXcd& precoder,
                              double ris_noise, double gain);

PassiveResult optimize_passive(const ChannelSet& ch, double bs_power, NoisePowers noise,
                               const OptimizerOptions& opts);

/// Uses opts.power_split to divide `total_power` between BS and amplifier.
ActiveResult optimize_active(const ChannelSet& ch, double total_power, NoisePowers noise,
                             const OptimizerOptions& opts);

/// Best split over opts.split_grid; ties resolve toward the smaller split.
SplitChoice split_search(const ChannelSet& ch, double total_power, NoisePowers noise, const OptimizerOptions& opts);

}  // namespace hris
