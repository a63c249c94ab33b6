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

// Communication graphs and consensus weight matrices.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace dsm {

// Undirected simple graph on nodes 0..N-1. Construction rejects self-loops,
// duplicate edges and out-of-range endpoints; connectivity is queried, not
// enforced, so that validators can report a disconnected input.
class Graph {
 public:
  using Edge = std::pair<int, int>;

  Graph(int node_count, const std::vector<Edge>& edges);

  int node_count() const { return node_count_; }
  // Sorted, each pair stored as (low, high).
  const std::vector<Edge>& edges() const { return edges_; }
  int degree(int node) const { return static_cast<int>(adjacency_[node].size()); }
  const std::vector<int>& neighbors(int node) const { return adjacency_[node]; }
  bool has_edge(int a, int b) const;
  bool is_connected() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.node_count_ == b.node_count_ && a.edges_ == b.edges_;
  }

 private:
  int node_count_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adjacency_;
};

enum class TopologyKind { kComplete, kCycle, kErdosRenyi };

const char* to_string(TopologyKind kind);
TopologyKind parse_topology(const std::string& name);

inline constexpr int kMaxErdosRenyiAttempts = 1000;

// Builds a connected graph. For Erdos-Renyi every attempt samples each edge
// independently with probability `edge_prob` from a stream derived from
// (seed, attempt) and the first connected sample is returned.
Graph build_topology(TopologyKind kind, int node_count, double edge_prob,
                     std::uint64_t seed);

// Edge-list text: first line N, then one "i j" pair per line, 0-indexed.
Graph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Graph& graph);

// beta = max(|lambda_2|, |lambda_N|) of a symmetric doubly stochastic matrix.
// Throws assumption-violated when beta >= 1 - 1e-10.
double spectral_beta(const Eigen::MatrixXd& entries);

// Symmetric doubly stochastic mixing matrix with beta < 1, cached.
class WeightMatrix {
 public:
  // Validates symmetry, stochasticity, non-negativity, and beta < 1. When a
  // graph is given, also checks that non-edges carry zero weight.
  explicit WeightMatrix(Eigen::MatrixXd entries, const Graph* graph = nullptr);

  // The 1x1 matrix [1] used for single-node runs (beta = 0).
  static WeightMatrix single_node();

  int node_count() const { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXd& entries() const { return entries_; }
  double operator()(int i, int j) const { return entries_(i, j); }
  double beta() const { return beta_; }

 private:
  WeightMatrix(Eigen::MatrixXd entries, double beta)
      : entries_(std::move(entries)), beta_(beta) {}

  Eigen::MatrixXd entries_;
  double beta_;
};

WeightMatrix metropolis_weights(const Graph& graph);

// One synchronous gossip step: row i of the result is sum_j a_ij * row j of
// `rows`. The input is read as a snapshot, never updated in place. The
// WeightMatrix overload evaluates x_i + sum_j a_ij (x_j - x_i), so rows that
// already agree are reproduced exactly.
Eigen::MatrixXd consensus_mix(const WeightMatrix& weights,
                              const Eigen::MatrixXd& rows);
// Plain product W X for an arbitrary matrix.
Eigen::MatrixXd consensus_mix(const Eigen::MatrixXd& weights,
                              const Eigen::MatrixXd& rows);

}  // namespace dsm
