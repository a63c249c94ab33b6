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

// Experiment configuration: a flat key-value file with TOML-style sections.
//
//   [network]
//   topology = ["complete", "cycle"]
//   nodes = 5
//
// Keys are addressed as "section.key". Values are numbers, bare words,
// quoted strings or bracketed lists of those.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "dsm/network.hpp"
#include "dsm/trace.hpp"

namespace dsm {

enum class DataSource { kSynthetic, kRatings, kQuadratic };

const char* to_string(DataSource source);

struct ExperimentConfig {
  // [network]
  std::vector<TopologyKind> topologies{TopologyKind::kComplete};
  int nodes = 5;
  double edge_prob = 0.0;  // <= 0 selects min(1, 3 / (N - 1))

  // [region]: {0 <= x <= upper, sum x <= budget} in R^n
  int dimension = 20;
  double upper = 1.0;
  double budget = 3.0;

  // [data]
  DataSource source = DataSource::kSynthetic;
  std::string ratings_path;
  int users_per_round = 10;  // b
  std::uint64_t data_seed = 0;
  double rating_prob = 0.1;
  double hessian_scale = 1.0;

  // [run]
  int rounds = 256;
  std::vector<AlgorithmKind> algorithms{AlgorithmKind::kMonoDmfw, AlgorithmKind::kDobga};
  std::vector<std::uint64_t> seeds{1};
  double sigma = 0.1;
  std::string out_dir;

  // [mono_dmfw]; K = Q = 0 selects the power-of-two blocking rule.
  int mono_phases = 0;
  int mono_blocks = 0;
  double mono_gamma = 0.0;

  // [dobga]
  int dobga_grad_samples = 1;

  // [dmfw]
  int dmfw_phases = 125;

  // [eval]
  int fw_steps = 200;

  double resolved_edge_prob() const;
  // Mono-DMFW (K, Q) after defaults.
  std::pair<int, int> mono_blocking() const;
  // Throws invalid-parameter on inconsistent settings.
  void validate() const;
  // Every setting, defaults included, as "section.key" -> value.
  std::map<std::string, std::string> echo() const;
};

// N=5, n=20, budget 3, sigma 0.1, T=256 (K=32, Q=8 by the blocking rule),
// b=10, synthetic ratings.
ExperimentConfig desk_preset();

// Starts from desk_preset() and applies the file's keys. Unknown keys and
// malformed values are rejected (invalid-parameter / parse-error).
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);

// "1,2,3" -> {1, 2, 3}.
std::vector<std::uint64_t> parse_seed_list(const std::string& text);

}  // namespace dsm
