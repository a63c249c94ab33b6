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

// Post-processing of traces: offline benchmark, alpha-regret, counter audit
// and runtime checks of the consensus / residual bounds.

#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dsm/objectives.hpp"
#include "dsm/region.hpp"
#include "dsm/trace.hpp"

namespace dsm {

struct Benchmark {
  Eigen::VectorXd point;
  double value = 0.0;  // Phi(point), Phi = (1/(NT)) sum_{t,i} f_{t,i}
  int steps = 0;
  std::string method;
};

// Phi(x) averaged over every cell of the stream.
double average_objective(const ObjectiveStream& stream, const Eigen::VectorXd& x);

// Continuous greedy with exact gradients: x <- x + lmo(grad Phi(x)) / steps
// from the origin. A (1 - 1/e)-quality stand-in for the hindsight optimum.
Benchmark offline_opt(const ObjectiveStream& stream, const ConvexRegion& region, int steps);

struct RegretReport {
  double alpha = 0.0;
  double benchmark_value = 0.0;
  std::string benchmark_method;
  // (T x N): per round t and node j, (1/N) sum_i f_{t,i}(x_j(t)).
  Eigen::MatrixXd network_reward;
  // (T): (1/N) sum_i f_{t,i}(x*).
  Eigen::VectorXd benchmark_reward;
  // (T x N): cumulative alpha-regret R(t, j) and R(t, j) / t.
  Eigen::MatrixXd cumulative;
  Eigen::MatrixXd ratio;
  // Largest Phi over all played actions and whether Phi(x*) dominates it
  // (within 1e-6). The benchmark is approximate, so this can fail.
  double best_played_value = 0.0;
  bool benchmark_dominates = true;

  // max_j R(T, j) / T.
  double final_ratio() const;
  // max_j R(t, j) / t at a 1-based round.
  double ratio_at(int round) const;
};

RegretReport alpha_regret(const Trace& trace, const ObjectiveStream& stream,
                          const ConvexRegion& region, const Eigen::VectorXd& benchmark,
                          double alpha);

struct CounterAudit {
  AlgorithmKind algorithm = AlgorithmKind::kMonoDmfw;
  double grads_per_round = 0.0;
  double exchanges_per_round = 0.0;
  double expected_grads = 0.0;
  double expected_exchanges = 0.0;
};

// Per-node-per-round gradient queries and exchanges. Expected: Mono-DMFW
// (1, 1), DOBGA (grad_samples, 1), DMFW (K, K). Throws audit-failure when any
// node deviates.
CounterAudit audit_counters(const Trace& trace, AlgorithmKind kind);

struct ProbeRow {
  std::string name;
  // Values at the tightest check (smallest bound - observed).
  double observed = 0.0;
  double bound = 0.0;
  double margin = 0.0;
  int checks = 0;
  bool pass = true;
};

// sqrt(N) r / (K (1 - beta)).
double consensus_deviation_bound(int nodes, double radius, int phases, double beta);

// Mono-DMFW / DMFW: average-iterate drift <= r/K and consensus deviation
// bound at every phase. DOBGA: projection residual <= eta_t (1-1/e) G1 and
// deviation <= 2 (1-1/e) G1 sqrt(N) sum_{k<=t} beta^{t-k} eta_k (+ the decayed
// initial deviation).
std::vector<ProbeRow> probe_report(const Trace& trace);

}  // namespace dsm
