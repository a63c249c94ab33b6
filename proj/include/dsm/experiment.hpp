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

// Experiment orchestration: one cell per (algorithm, topology, seed), each
// built, run, evaluated and written independently.

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dsm/config.hpp"
#include "dsm/error.hpp"
#include "dsm/evaluation.hpp"
#include "dsm/trace.hpp"

namespace dsm {

struct CellResult {
  AlgorithmKind algorithm = AlgorithmKind::kMonoDmfw;
  std::string topology;
  std::uint64_t seed = 0;
  std::string tag;

  // False when a component error aborted the cell; see error / error_kind.
  bool ok = false;
  std::string error;
  ErrorKind error_kind = ErrorKind::kInvalidParameter;

  double final_ratio = 0.0;
  // max_j R(t, j) / t for t = 1..T.
  Eigen::VectorXd ratio_curve;
  // Wall-clock of the algorithm itself, excluding evaluation and I/O.
  double wall_seconds = 0.0;
  CounterAudit audit;
  bool audit_ok = false;
  std::vector<ProbeRow> probes;
  bool probes_ok = false;
  bool benchmark_dominates = false;
  double benchmark_value = 0.0;
  double best_played_value = 0.0;
  std::shared_ptr<const Trace> trace;
  std::string csv_path;
};

struct ExperimentResult {
  std::vector<CellResult> cells;
  std::vector<std::string> plots;

  // 0 when every cell succeeded, 2 on any audit or probe failure, 1 on any
  // other cell error.
  int exit_code() const;
  // Mean final ratio over the successful seeds of one (algorithm, topology);
  // NaN when there are none.
  double mean_final_ratio(AlgorithmKind algorithm, const std::string& topology) const;
  double mean_wall_seconds(AlgorithmKind algorithm, const std::string& topology) const;
};

std::string cell_tag(AlgorithmKind algorithm, const std::string& topology, std::uint64_t seed);

// Runs every cell. With a non-empty config.out_dir it writes <tag>.csv,
// meta_<tag>.txt and trace_<tag>.json per cell, summary.csv, and
// ratio_<topology>.svg per topology.
ExperimentResult run_experiment(const ExperimentConfig& config);

}  // namespace dsm
