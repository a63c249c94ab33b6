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

// Record of one decentralized run.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace dsm {

enum class AlgorithmKind { kMonoDmfw, kDobga, kDmfw };

const char* to_string(AlgorithmKind kind);
AlgorithmKind parse_algorithm(const std::string& name);

using CounterMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

// Consensus snapshot after phase `phase` (0 = initial point) of block
// `block`: the network average of the phase iterates and
// sqrt(sum_i ||x_i - mean||^2).
struct PhaseRecord {
  int block = 0;
  int phase = 0;
  Eigen::VectorXd mean;
  double deviation = 0.0;
};

// Per-round diagnostics of the projected boosting update, for round t
// (1-based) producing x(t+1).
struct RoundDiagnostics {
  int round = 0;
  double step = 0.0;
  // max_i ||x_i(t+1) - y_i(t+1)||.
  double residual = 0.0;
  // Largest norm of a (sample-averaged) stochastic gradient seen so far.
  double estimator_norm = 0.0;
  // sqrt(sum_i ||x_i(t+1) - mean||^2).
  double deviation = 0.0;
};

struct Trace {
  AlgorithmKind algorithm = AlgorithmKind::kMonoDmfw;
  int rounds = 0;
  int nodes = 0;
  int dimension = 0;
  // Phases per block: K for Mono-DMFW and DMFW, 1 for DOBGA.
  int phases_per_block = 1;
  int grad_samples = 1;
  double beta = 0.0;
  double radius = 0.0;
  double diameter = 0.0;
  double payload_bytes_per_round = 0.0;

  // actions[t] is N x n; row i is x_i(t+1) in 1-based round terms.
  std::vector<Eigen::MatrixXd> actions;
  // rewards(t, i) = f_{t,i}(x_i(t)), exact.
  Eigen::MatrixXd rewards;
  // Cumulative per-node counters after each round.
  CounterMatrix grad_queries;
  CounterMatrix exchanges;

  std::vector<PhaseRecord> phases;
  std::vector<RoundDiagnostics> diagnostics;
  // Initial consensus deviation of a DOBGA run.
  double initial_deviation = 0.0;

  std::map<std::string, std::string> metadata;

  friend bool operator==(const Trace&, const Trace&);
};

void write_trace_json(std::ostream& out, const Trace& trace);
Trace read_trace_json(std::istream& in);

}  // namespace dsm
