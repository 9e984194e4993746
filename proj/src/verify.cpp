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

#include "hris/verify.hpp"

#include <cmath>
#include <complex>
#include <sstream>

#include "hris/controller.hpp"
#include "hris/signal.hpp"
#include "hris/units.hpp"

namespace hris::verify {

using cd = std::complex<double>;

double reference_sum_se(const ChannelSet& ch, const Eigen::VectorXd& phases, double gain, bool amplified,
                        const Eigen::MatrixXcd& W, NoisePowers noise)
{
  const int K = ch.num_users();
  const int M = ch.num_bs_antennas();
  const int N = ch.num_ris_elements();
  double total = 0.0;
  for (int k = 0; k < K; ++k) {
    // received amplitude of stream j at user k: (h_k^H + p f_k^H Phi^H G) w_j
    std::vector<double> power(K, 0.0);
    for (int j = 0; j < K; ++j) {
      cd amplitude = 0.0;
      for (int m = 0; m < M; ++m) {
        cd row = std::conj(ch.direct(m, k));
        for (int n = 0; n < N; ++n)
          row += gain * std::conj(ch.ris_user(n, k)) * std::exp(cd(0.0, -phases[n])) * ch.bs_ris(n, m);
        amplitude += row * W(m, j);
      }
      power[j] = std::norm(amplitude);
    }
    double denom = noise.receiver;
    if (amplified) {
      double f_norm = 0.0;
      for (int n = 0; n < N; ++n)
        f_norm += std::norm(ch.ris_user(n, k));
      denom += gain * gain * noise.ris_element * f_norm;
    }
    for (int j = 0; j < K; ++j)
      if (j != k)
        denom += power[j];
    total += std::log2(1.0 + power[k] / denom);
  }
  return total;
}

double exhaustive_single_user(const ChannelSet& ch, double bs_power, const std::vector<double>& grid,
                              NoisePowers noise)
{
  const int M = ch.num_bs_antennas();
  const int N = ch.num_ris_elements();
  const auto Q = grid.size();
  std::vector<std::size_t> index(N, 0);
  double best = -1.0;
  while (true) {
    double gain = 0.0;
    for (int m = 0; m < M; ++m) {
      cd entry = ch.direct(m, 0);
      for (int n = 0; n < N; ++n)
        entry += std::exp(cd(0.0, grid[index[n]])) * ch.ris_user(n, 0) * std::conj(ch.bs_ris(n, m));
      gain += std::norm(entry);
    }
    best = std::max(best, std::log2(1.0 + bs_power * gain / noise.receiver));

    int pos = 0;
    while (pos < N && ++index[pos] == Q)
      index[pos++] = 0;
    if (pos == N)
      break;
  }
  return best;
}

double grid_local_gap(const ChannelSet& ch, const Eigen::VectorXd& phases, double gain, bool amplified,
                      const Eigen::MatrixXcd& W, NoisePowers noise, const std::vector<double>& grid)
{
  const double base = reference_sum_se(ch, phases, gain, amplified, W, noise);
  double gap = -std::numeric_limits<double>::infinity();
  Eigen::VectorXd trial = phases;
  for (int n = 0; n < phases.size(); ++n) {
    for (double phase : grid) {
      trial[n] = phase;
      gap = std::max(gap, reference_sum_se(ch, trial, gain, amplified, W, noise) - base);
    }
    trial[n] = phases[n];
  }
  return gap;
}

RicianMoments empirical_moments(const Eigen::VectorXcd& samples)
{
  const auto n = static_cast<double>(samples.size());
  cd mean = 0.0;
  double power = 0.0;
  for (const cd& x : samples) {
    mean += x;
    power += std::norm(x);
  }
  mean /= n;
  power /= n;
  double scattered = 0.0;
  for (const cd& x : samples)
    scattered += std::norm(x - mean);
  return {power, std::norm(mean), scattered / n};
}

namespace {

std::string describe(double value)
{
  std::ostringstream s;
  s.precision(6);
  s << value;
  return s.str();
}

CheckResult check(std::string name, bool passed, std::string detail)
{
  return {std::move(name), passed, std::move(detail)};
}

}  // namespace

std::vector<CheckResult> run_validation_suite(std::uint64_t seed)
{
  std::vector<CheckResult> out;

  {
    const double d = distance({0.0, -45.0}, {200.0, 0.0});
    const double los = path_loss(kLosModel, 205.0);
    const double nlos = path_loss(kNlosModel, 205.0);
    out.push_back(check("geometry and path loss", std::abs(d - 205.0) < 1e-12 && std::abs(los - 88.16) < 0.01 &&
                                                      std::abs(nlos - 103.88) < 0.01,
                        "d=" + describe(d) + " LoS=" + describe(los) + " NLoS=" + describe(nlos)));
  }

  {
    RandomStream rng(derive_seed(seed, 1));
    const auto m = empirical_moments(sample_rician(0.0, 0.0, 100000, rng));
    const double kappa = 1.0;
    const double ratio = m.scattered_power / m.los_power;
    out.push_back(check("Rician moments (1e5 samples)",
                        std::abs(m.mean_power - 1.0) < 0.01 && std::abs(ratio * kappa - 1.0) < 0.02,
                        "power=" + describe(m.mean_power) + " scattered/LoS=" + describe(ratio)));
  }

  SceneConfig scene;
  scene.num_ris_elements = 16;
  const NoisePowers noise = NoisePowers::from_scene(scene);
  const ChannelSet ch = realize_channels(scene, derive_seed(seed, 2));

  {
    Eigen::VectorXd phases = Eigen::VectorXd::LinSpaced(16, 0.0, 3.0);
    const Eigen::MatrixXcd Vp = effective_channels(ch.direct, ch.ris_user, ch.bs_ris, RisState::passive(phases));
    const Precoder W = make_precoder(Vp, 1.0, PrecoderKind::RZF, noise.receiver);
    const auto sp = sinr(Vp, W, RisState::passive(phases), ch.ris_user, noise.ris_element, noise.receiver);
    const RisState act = RisState::active(phases, 1.0);
    const auto sa = sinr(effective_channels(ch.direct, ch.ris_user, ch.bs_ris, act), W, act, ch.ris_user, 1e-30,
                         noise.receiver);
    double worst = 0.0;
    for (std::size_t k = 0; k < sp.size(); ++k)
      worst = std::max(worst, std::abs(sa[k] - sp[k]) / sp[k]);
    out.push_back(check("active(p=1, no amplifier noise) == passive", worst <= 1e-9, "max rel diff=" + describe(worst)));

    const double impl = evaluate_sum_se(ch, RisState::passive(phases), W, noise);
    const double ref = reference_sum_se(ch, phases, 1.0, false, W.columns, noise);
    out.push_back(check("signal model vs scalar reference", std::abs(impl - ref) <= 1e-9 * ref,
                        "impl=" + describe(impl) + " ref=" + describe(ref)));
  }

  {
    OptimizerOptions opts;
    opts.phase_grid_size = 8;
    opts.tolerance = 1e-12;
    opts.max_outer_iters = 50;
    SceneConfig small;
    small.num_users = 1;
    small.num_ris_elements = 2;
    const NoisePowers n1 = NoisePowers::from_scene(small);
    const auto grid = phase_candidates(8, std::nullopt);
    double worst = 0.0;
    for (int s = 0; s < 10; ++s) {
      const ChannelSet c = realize_channels(small, derive_seed(seed, 100 + s));
      const double got = optimize_passive(c, 1.0, n1, opts).sum_se;
      const double want = exhaustive_single_user(c, 1.0, grid, n1);
      worst = std::max(worst, std::abs(got - want) / want);
    }
    out.push_back(check("coordinate ascent == exhaustive (N=2, K=1, Q=8)", worst <= 1e-9,
                        "max rel diff=" + describe(worst)));
  }

  {
    OptimizerOptions opts;
    opts.phase_grid_size = 16;
    const double total = dbm_to_watts(40.0);
    const ActiveResult a = optimize_active(ch, total, noise, opts);
    const double out_power = amplifier_output_power(ch.bs_ris, a.precoder.columns, noise.ris_element, a.ris.gain);
    const double amp = a.budget.amp_power;
    const bool ok = std::abs(out_power - amp) <= 1e-9 * amp &&
                    std::abs(a.budget.total_watts() - total) <= 1e-9 * total;
    out.push_back(check("active power budget", ok, "amp out=" + describe(out_power) + " budget=" + describe(amp)));
  }

  {
    const ControllerThresholds th;
    const bool ok = select_mode({30.0, ReportClass::Weak, 1.0, 0.0}, th) == RisMode::Active &&
                    select_mode({30.0, ReportClass::Weak, -1.0, 0.0}, th) == RisMode::Passive &&
                    select_mode({50.0, ReportClass::Strong, 2.0, 1.0}, th) == RisMode::Active &&
                    select_mode({50.0, ReportClass::Strong, 1.0, 1.0}, th) == RisMode::Passive &&
                    select_mode({65.0, ReportClass::High, 9.0, 1.0}, th) == RisMode::Passive &&
                    select_mode({65.0, ReportClass::High, 9.0, -1.0}, th) == RisMode::Dormant;
    out.push_back(check("controller branch table", ok, "six branches"));
  }
  return out;
}

}  // namespace hris::verify
