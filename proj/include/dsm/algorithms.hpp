// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Decentralized online DR-submodular maximization:
//
//  * Mono-DMFW: blocked meta Frank-Wolfe. Rounds are grouped into Q blocks of
//    K rounds; each node plays one point per block, computed by K consensus +
//    linear-oracle phases, and spends exactly one stochastic gradient (on a
//    randomly permuted round of the block) per phase.
//  * DOBGA: projected online gradient ascent on the boosting auxiliary
//    function, one boosted gradient and one exchange per round.
//  * DMFW: the unblocked baseline; every round runs all K phases against the
//    same local function, so it costs K gradients and K exchanges per round.
//
// All three are synchronous: a phase reads only the previous phase's values.

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "dsm/network.hpp"
#include "dsm/objectives.hpp"
#include "dsm/region.hpp"
#include "dsm/trace.hpp"

namespace dsm {

// Gradient-tracking weight for phase k of K:
//   2 / (k + 3)^{2/3}           for k <= floor(K/2) + 1,
//   1.5 / (K - k + 2)^{2/3}     otherwise.
double mono_dmfw_eta(int phase, int phases);

// 1 / sqrt(t).
double dobga_eta(int round);

// For a power-of-two horizon T: K = 2^{ceil(3/5 log2 T)}, Q = T / K.
std::pair<int, int> suggest_blocking(int rounds);

struct MonoDmfwConfig {
  int phases = 1;  // K, also the block length
  int blocks = 1;  // Q
  // Consensus weight of the fresh gradient estimate; <= 0 selects T^{-1/5}.
  double gamma = 0.0;
  // Linear-oracle step scale; <= 0 selects diam(K).
  double oracle_scale = 0.0;
};

struct DobgaConfig {
  std::function<double(int)> step = dobga_eta;
  std::string step_name = "inv_sqrt";
  int grad_samples = 1;
  // Per-node starting points (N x n); all zero when absent.
  std::optional<Eigen::MatrixXd> initial_points;
};

struct DmfwConfig {
  int phases = 1;  // K
  // Per-phase schedules; absent selects eta_k = 2/K^{2/3}, gamma_k = 1/K^{1/2}.
  std::function<double(int)> eta;
  std::function<double(int)> gamma;
  double oracle_scale = 0.0;
};

struct RunOptions {
  std::uint64_t seed = 0;
  // Test hook: every node draws from node 0's random streams.
  bool identical_node_streams = false;
};

Trace run_mono_dmfw(const ObjectiveStream& stream, const WeightMatrix& weights,
                    std::shared_ptr<const ConvexRegion> region,
                    const MonoDmfwConfig& config, const RunOptions& options);

Trace run_dobga(const ObjectiveStream& stream, const WeightMatrix& weights,
                std::shared_ptr<const ConvexRegion> region, const DobgaConfig& config,
                const RunOptions& options);

Trace run_dmfw(const ObjectiveStream& stream, const WeightMatrix& weights,
               std::shared_ptr<const ConvexRegion> region, const DmfwConfig& config,
               const RunOptions& options);

}  // namespace dsm
