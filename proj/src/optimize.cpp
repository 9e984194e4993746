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

#include "hris/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "hris/units.hpp"

namespace hris {

std::string_view to_string(PrecoderKind k) { return k == PrecoderKind::MRT ? "mrt" : "rzf"; }

PrecoderKind precoder_kind_from_string(std::string_view name)
{
  if (name == "mrt" || name == "MRT") return PrecoderKind::MRT;
  if (name == "rzf" || name == "RZF") return PrecoderKind::RZF;
  throw std::invalid_argument("unknown precoder kind '" + std::string(name) + "'");
}

void OptimizerOptions::validate() const
{
  if (max_outer_iters < 1)
    throw std::invalid_argument("max_outer_iters must be >= 1");
  if (phase_grid_size < 2)
    throw std::invalid_argument("phase_grid_size must be >= 2");
  if (!(tolerance > 0.0))
    throw std::invalid_argument("tolerance must be > 0");
  if (!(power_split >= 0.0 && power_split < 1.0))
    throw std::invalid_argument("power_split must lie in [0, 1)");
  for (double s : split_grid)
    if (!(s >= 0.0 && s < 1.0))
      throw std::invalid_argument("split_grid entries must lie in [0, 1)");
  if (phase_range && !(*phase_range > 0.0 && *phase_range <= std::numbers::pi))
    throw std::invalid_argument("phase_range must lie in (0, pi]");
}

NoisePowers NoisePowers::from_scene(const SceneConfig& scene)
{
  return {dbm_to_watts(scene.noise_power_receiver_dbm), dbm_to_watts(scene.noise_power_ris_element_dbm)};
}

Precoder make_precoder(const Eigen::MatrixXcd& effective, double bs_power, PrecoderKind kind, double rx_noise)
{
  if (!(bs_power > 0.0))
    throw std::invalid_argument("precoder: bs_power must be > 0");
  if (effective.size() == 0 || effective.isZero(0.0))
    throw std::invalid_argument("precoder: all-zero channel matrix");

  const auto K = effective.cols();
  Eigen::MatrixXcd W(effective.rows(), K);
  if (kind == PrecoderKind::MRT) {
    for (Eigen::Index k = 0; k < K; ++k) {
      const double norm = effective.col(k).norm();
      W.col(k) = norm > 0.0 ? Eigen::VectorXcd(effective.col(k) / norm) : Eigen::VectorXcd::Zero(W.rows());
    }
  } else {
    const double alpha = static_cast<double>(K) * rx_noise / bs_power;
    Eigen::MatrixXcd gram = effective.adjoint() * effective;
    gram.diagonal().array() += alpha;
    W = effective * gram.ldlt().solve(Eigen::MatrixXcd::Identity(K, K));
  }
  // MRT gives every user bs_power / K; RZF keeps its column ratios.
  if (kind == PrecoderKind::MRT) {
    const auto active_users = (W.colwise().squaredNorm().array() > 0.0).count();
    W *= std::sqrt(bs_power / static_cast<double>(active_users));
  } else {
    W *= std::sqrt(bs_power / W.squaredNorm());
  }
  return {std::move(W), bs_power};
}

std::vector<double> phase_candidates(int grid_size, std::optional<double> phase_range)
{
  std::vector<double> out(static_cast<std::size_t>(grid_size));
  for (int q = 0; q < grid_size; ++q) {
    if (phase_range)
      out[q] = -*phase_range + 2.0 * *phase_range * q / (grid_size - 1);
    else
      out[q] = 2.0 * std::numbers::pi * q / grid_size;
  }
  return out;
}

double evaluate_sum_se(const ChannelSet& ch, const RisState& ris, const Precoder& precoder, NoisePowers noise)
{
  const Eigen::MatrixXcd V = effective_channels(ch.direct, ch.ris_user, ch.bs_ris, ris);
  const auto s = sinr(V, precoder, ris, ch.ris_user, noise.ris_element, noise.receiver);
  return sum_se(s);
}

double fixed_ris_sum_se(const ChannelSet& ch, const RisState& ris, double bs_power, NoisePowers noise,
                        PrecoderKind kind)
{
  const Eigen::MatrixXcd V = effective_channels(ch.direct, ch.ris_user, ch.bs_ris, ris);
  const Precoder W = make_precoder(V, bs_power, kind, noise.receiver);
  return sum_se(sinr(V, W, ris, ch.ris_user, noise.ris_element, noise.receiver));
}

double amplifier_output_power(const Eigen::MatrixXcd& bs_ris, const Eigen::MatrixXcd& precoder, double ris_noise,
                              double gain)
{
  const double incident = (bs_ris * precoder).squaredNorm();
  return gain * gain * (incident + static_cast<double>(bs_ris.rows()) * ris_noise);
}

double active_gain(const Eigen::MatrixXcd& bs_ris, const Eigen::MatrixXcd& precoder, double ris_noise,
                   double amp_power)
{
  if (amp_power < 0.0)
    throw std::invalid_argument("active_gain: amp_power must be >= 0");
  if (amp_power == 0.0)
    return 0.0;
  const double denom = amplifier_output_power(bs_ris, precoder, ris_noise, 1.0);
  if (!(denom > 0.0))
    return 0.0;
  return std::sqrt(amp_power / denom);
}

namespace {

// Sum SE from gram(k, j) = v_k^H w_j, stored row-major in \`gram\`. The product
// form needs a single logarithm per evaluation.
double gram_sum_se(const std::complex<double>* gram, const double* noise, int K)
{
  double product = 1.0;
  for (int k = 0; k < K; ++k) {
    const std::complex<double>* row = gram + static_cast<std::ptrdiff_t>(k) * K;
    double interference = noise[k];
    for (int j = 0; j < K; ++j)
      if (j != k)
        interference += std::norm(row[j]);
    product *= 1.0 + std::norm(row[k]) / interference;
  }
  return std::log2(product);
}

// One pass of per-element grid ascent with W and p held fixed. Updates
// \`phases\` in place and reports whether any element moved.
bool sweep_phases(const ChannelSet& ch, const Eigen::MatrixXcd& W, double gain, bool amplified,
                  NoisePowers noise, const std::vector<double>& grid, Eigen::VectorXd& phases)
{
  const int K = ch.num_users();
  const int N = ch.num_ris_elements();
  const auto Q = static_cast<int>(grid.size());
  const auto KK = static_cast<std::size_t>(K) * K;

  const RisState probe{amplified ? RisMode::Active : RisMode::Passive, phases, gain, std::nullopt};
  const Eigen::MatrixXcd V = effective_channels(ch.direct, ch.ris_user, ch.bs_ris, probe);
  using RowMajor = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  RowMajor gram = V.adjoint() * W;
  const Eigen::MatrixXcd incident = ch.bs_ris * W;  // N x K, row n is (G w_j)_n

  std::vector<double> user_noise(K);
  for (int k = 0; k < K; ++k)
    user_noise[k] =
        noise.receiver + (amplified ? gain * gain * noise.ris_element * ch.ris_user.col(k).squaredNorm() : 0.0);

  std::vector<std::complex<double>> rotation(Q);
  for (int q = 0; q < Q; ++q)
    rotation[q] = std::polar(1.0, -grid[q]);

  double current = gram_sum_se(gram.data(), user_noise.data(), K);
  bool changed = false;
  std::vector<std::complex<double>> step(KK);
  std::vector<std::complex<double>> trial(KK);
  for (int n = 0; n < N; ++n) {
    bool any = false;
    for (int k = 0; k < K; ++k)
      for (int j = 0; j < K; ++j) {
        step[k * K + j] = gain * std::conj(ch.ris_user(n, k)) * incident(n, j);
        any = any || step[k * K + j] != 0.0;
      }
    if (!any)
      continue;

    const std::complex<double> now = std::polar(1.0, -phases[n]);
    int best_q = -1;
    double best = current;
    for (int q = 0; q < Q; ++q) {
      if (grid[q] == phases[n])
        continue;
      const std::complex<double> delta = rotation[q] - now;
      for (std::size_t i = 0; i < KK; ++i)
        trial[i] = gram.data()[i] + delta * step[i];
      const double value = gram_sum_se(trial.data(), user_noise.data(), K);
      if (value > best) {
        best = value;
        best_q = q;
      }
    }
    if (best_q >= 0) {
      const std::complex<double> delta = rotation[best_q] - now;
      for (std::size_t i = 0; i < KK; ++i)
        gram.data()[i] += delta * step[i];
      phases[n] = grid[best_q];
      current = best;
      changed = true;
    }
  }
  return changed;
}

// Shared alternating loop. `refresh` recomputes the precoder (and the gain,
// for Active) from the current phases; accepted only when it improves.
struct AscentState {
  Eigen::VectorXd phases;
  Precoder precoder;
  double gain = 1.0;
  double sum_se = 0.0;
};

template <typename Refresh, typename Evaluate>
std::vector<double> alternate(const ChannelSet& ch, NoisePowers noise, const OptimizerOptions& opts, bool amplified,
                              AscentState& state, Refresh&& refresh, Evaluate&& evaluate)
{
  const auto grid = phase_candidates(opts.phase_grid_size, opts.phase_range);
  std::vector<double> trace{state.sum_se};

  auto try_sweep = [&]() {
    Eigen::VectorXd candidate = state.phases;
    if (!sweep_phases(ch, state.precoder.columns, state.gain, amplified, noise, grid, candidate))
      return false;
    const double value = evaluate(candidate, state.precoder, state.gain);
    if (value < state.sum_se)
      return false;
    state.phases = std::move(candidate);
    state.sum_se = value;
    return true;
  };

  auto try_refresh = [&]() {
    auto [precoder, gain] = refresh(state.phases, state.gain);
    const double value = evaluate(state.phases, precoder, gain);
    if (!(value > state.sum_se))
      return false;
    state.precoder = std::move(precoder);
    state.gain = gain;
    state.sum_se = value;
    return true;
  };

  for (int it = 0; it < opts.max_outer_iters; ++it) {
    const double previous = state.sum_se;
    bool changed = try_refresh();
    changed = try_sweep() || changed;
    trace.push_back(state.sum_se);

    if (!changed)
      break;
    if (state.sum_se - previous <= opts.tolerance * std::max(std::abs(previous), 1e-300))
      break;
  }

  // Polish: keep sweeping and refreshing until neither improves, so the result
  // is grid-local for its own precoder and the precoder matches the phases.
  for (int it = 0; it < opts.max_outer_iters; ++it) {
    const bool swept = try_sweep();
    if (swept)
      trace.push_back(state.sum_se);
    const bool refreshed = try_refresh();
    if (refreshed)
      trace.push_back(state.sum_se);
    if (!swept && !refreshed)
      break;
  }
  return trace;
}

}  // namespace

PassiveResult optimize_passive(const ChannelSet& ch, double bs_power, NoisePowers noise, const OptimizerOptions& opts)
{
  opts.validate();
  const int N = ch.num_ris_elements();
  auto as_state = [&](const Eigen::VectorXd& phases) { return RisState::passive(phases, opts.phase_range); };
  auto evaluate = [&](const Eigen::VectorXd& phases, const Precoder& W, double) {
    return evaluate_sum_se(ch, as_state(phases), W, noise);
  };
  auto refresh = [&](const Eigen::VectorXd& phases, double) {
    const Eigen::MatrixXcd V = effective_channels(ch.direct, ch.ris_user, ch.bs_ris, as_state(phases));
    return std::pair{make_precoder(V, bs_power, opts.precoder_kind, noise.receiver), 1.0};
  };

  AscentState state;
  state.phases = Eigen::VectorXd::Zero(N);
  state.precoder = refresh(state.phases, 1.0).first;
  state.sum_se = evaluate(state.phases, state.precoder, 1.0);

  auto trace = alternate(ch, noise, opts, false, state, refresh, evaluate);
  return {as_state(state.phases), std::move(state.precoder), state.sum_se, std::move(trace)};
}

ActiveResult optimize_active(const ChannelSet& ch, double total_power, NoisePowers noise, const OptimizerOptions& opts)
{
  opts.validate();
  if (!(total_power > 0.0))
    throw std::invalid_argument("optimize_active: total_power must be > 0");
  const int N = ch.num_ris_elements();
  const double amp_power = opts.power_split * total_power;
  const double bs_power = total_power - amp_power;

  auto as_state = [&](const Eigen::VectorXd& phases, double gain) {
    return RisState::active(phases, gain, opts.phase_range);
  };
  auto evaluate = [&](const Eigen::VectorXd& phases, const Precoder& W, double gain) {
    return evaluate_sum_se(ch, as_state(phases, gain), W, noise);
  };
  auto refresh = [&](const Eigen::VectorXd& phases, double gain) {
    const Eigen::MatrixXcd V = effective_channels(ch.direct, ch.ris_user, ch.bs_ris, as_state(phases, gain));
    Precoder W = make_precoder(V, bs_power, opts.precoder_kind, noise.receiver);
    const double next_gain = active_gain(ch.bs_ris, W.columns, noise.ris_element, amp_power);
    return std::pair{std::move(W), next_gain};
  };

  AscentState state;
  state.phases = Eigen::VectorXd::Zero(N);
  state.precoder = make_precoder(ch.direct, bs_power, opts.precoder_kind, noise.receiver);
  state.gain = active_gain(ch.bs_ris, state.precoder.columns, noise.ris_element, amp_power);
  state.sum_se = evaluate(state.phases, state.precoder, state.gain);

  auto trace = alternate(ch, noise, opts, true, state, refresh, evaluate);

  ActiveResult out;
  out.ris = as_state(state.phases, state.gain);
  out.precoder = std::move(state.precoder);
  out.sum_se = state.sum_se;
  out.budget = power_account(RisMode::Active, bs_power, amp_power, 0.0);
  out.power_split = opts.power_split;
  out.trace = std::move(trace);
  return out;
}

SplitChoice split_search(const ChannelSet& ch, double total_power, NoisePowers noise, const OptimizerOptions& opts)
{
  if (opts.split_grid.empty())
    throw std::invalid_argument("split_search: split_grid is empty");
  std::vector<double> grid = opts.split_grid;
  std::sort(grid.begin(), grid.end());

  std::optional<SplitChoice> best;
  OptimizerOptions trial = opts;
  for (double split : grid) {
    trial.power_split = split;
    ActiveResult r = optimize_active(ch, total_power, noise, trial);
    if (!best || r.sum_se > best->sum_se)
      best = SplitChoice{split, r.sum_se, std::move(r)};
  }
  return std::move(*best);
}

}  // namespace hris
