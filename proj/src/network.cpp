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

#include "dsm/network.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "dsm/error.hpp"
#include "dsm/rng.hpp"

namespace dsm {
namespace {

constexpr double kMatrixTolerance = 1e-12;
constexpr double kBetaCeiling = 1.0 - 1e-10;

std::string pair_text(int a, int b) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

}  // namespace

Graph::Graph(int node_count, const std::vector<Edge>& edges)
    : node_count_(node_count), adjacency_(node_count > 0 ? node_count : 0) {
  require(node_count >= 1, ErrorKind::kInvalidParameter,
          "graph needs at least one node");
  edges_.reserve(edges.size());
  for (auto [a, b] : edges) {
    require(a >= 0 && b >= 0 && a < node_count && b < node_count,
            ErrorKind::kInvalidParameter, "edge " + pair_text(a, b) + " out of range");
    require(a != b, ErrorKind::kInvalidParameter,
            "self-loop at node " + std::to_string(a));
    edges_.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(edges_.begin(), edges_.end());
  auto dup = std::adjacent_find(edges_.begin(), edges_.end());
  require(dup == edges_.end(), ErrorKind::kInvalidParameter,
          dup == edges_.end() ? "" : "duplicate edge " + pair_text(dup->first, dup->second));
  for (auto [a, b] : edges_) {
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
  }
  for (auto& list : adjacency_) std::sort(list.begin(), list.end());
}

bool Graph::has_edge(int a, int b) const {
  if (a < 0 || b < 0 || a >= node_count_ || b >= node_count_) return false;
  const auto& list = adjacency_[a];
  return std::binary_search(list.begin(), list.end(), b);
}

bool Graph::is_connected() const {
  std::vector<char> seen(node_count_, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int node = stack.back();
    stack.pop_back();
    for (int next : adjacency_[node]) {
      if (!seen[next]) {
        seen[next] = 1;
        ++reached;
        stack.push_back(next);
      }
    }
  }
  return reached == node_count_;
}

const char* to_string(TopologyKind kind) {
  switch (kind) {
    case TopologyKind::kComplete:
      return "complete";
    case TopologyKind::kCycle:
      return "cycle";
    case TopologyKind::kErdosRenyi:
      return "erdos_renyi";
  }
  return "unknown";
}

TopologyKind parse_topology(const std::string& name) {
  if (name == "complete") return TopologyKind::kComplete;
  if (name == "cycle") return TopologyKind::kCycle;
  if (name == "erdos_renyi" || name == "er") return TopologyKind::kErdosRenyi;
  fail(ErrorKind::kInvalidParameter, "unknown topology '" + name + "'");
}

Graph build_topology(TopologyKind kind, int node_count, double edge_prob,
                     std::uint64_t seed) {
  require(node_count >= 2, ErrorKind::kInvalidParameter,
          "topology needs N >= 2, got " + std::to_string(node_count));
  std::vector<Graph::Edge> edges;
  switch (kind) {
    case TopologyKind::kComplete:
      for (int a = 0; a < node_count; ++a)
        for (int b = a + 1; b < node_count; ++b) edges.emplace_back(a, b);
      return Graph(node_count, edges);
    case TopologyKind::kCycle:
      // N = 2 degenerates to a single edge.
      for (int a = 0; a + 1 < node_count; ++a) edges.emplace_back(a, a + 1);
      if (node_count > 2) edges.emplace_back(node_count - 1, 0);
      return Graph(node_count, edges);
    case TopologyKind::kErdosRenyi:
      break;
  }
  require(edge_prob > 0.0 && edge_prob <= 1.0, ErrorKind::kInvalidParameter,
          "edge probability must lie in (0, 1]");
  for (int attempt = 0; attempt < kMaxErdosRenyiAttempts; ++attempt) {
    Rng rng = make_stream(seed, StreamPurpose::kTopology, attempt);
    edges.clear();
    for (int a = 0; a < node_count; ++a)
      for (int b = a + 1; b < node_count; ++b)
        if (uniform01(rng) < edge_prob) edges.emplace_back(a, b);
    Graph candidate(node_count, edges);
    if (candidate.is_connected()) return candidate;
  }
  fail(ErrorKind::kTopologyGenerationFailure,
       "no connected Erdos-Renyi sample in " +
           std::to_string(kMaxErdosRenyiAttempts) + " attempts");
}

Graph read_edge_list(std::istream& in) {
  std::string line;
  int line_no = 0;
  int node_count = -1;
  std::vector<Graph::Edge> edges;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    if (node_count < 0) {
      require(static_cast<bool>(fields >> node_count), ErrorKind::kParseError,
              "line " + std::to_string(line_no) + ": expected node count");
      continue;
    }
    int a = 0, b = 0;
    require(static_cast<bool>(fields >> a >> b), ErrorKind::kParseError,
            "line " + std::to_string(line_no) + ": expected 'i j'");
    edges.emplace_back(a, b);
  }
  require(node_count >= 1, ErrorKind::kParseError, "missing node count");
  return Graph(node_count, edges);
}

void write_edge_list(std::ostream& out, const Graph& graph) {
  out << graph.node_count() << '\n';
  for (auto [a, b] : graph.edges()) out << a << ' ' << b << '\n';
}

double spectral_beta(const Eigen::MatrixXd& entries) {
  require(entries.rows() == entries.cols() && entries.rows() >= 1,
          ErrorKind::kInvalidParameter, "weight matrix must be square");
  if (entries.rows() == 1) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(entries,
                                                        Eigen::EigenvaluesOnly);
  require(solver.info() == Eigen::Success, ErrorKind::kAssumptionViolated,
          "eigensolver did not converge");
  const Eigen::VectorXd& eig = solver.eigenvalues();  // ascending
  const Eigen::Index n = eig.size();
  const double beta = std::max(std::abs(eig(n - 2)), std::abs(eig(0)));
  require(beta < kBetaCeiling, ErrorKind::kAssumptionViolated,
          "second largest eigenvalue magnitude is " + std::to_string(beta) +
              "; the graph is disconnected or the mixing is periodic");
  return beta;
}

WeightMatrix::WeightMatrix(Eigen::MatrixXd entries, const Graph* graph)
    : entries_(std::move(entries)), beta_(0.0) {
  const Eigen::Index n = entries_.rows();
  require(n >= 1 && entries_.cols() == n, ErrorKind::kInvalidParameter,
          "weight matrix must be square and non-empty");
  require(entries_.allFinite(), ErrorKind::kInvalidParameter,
          "weight matrix has non-finite entries");
  require((entries_ - entries_.transpose()).cwiseAbs().maxCoeff() <= kMatrixTolerance,
          ErrorKind::kAssumptionViolated, "weight matrix is not symmetric");
  require(entries_.minCoeff() >= 0.0, ErrorKind::kAssumptionViolated,
          "weight matrix has negative entries");
  for (Eigen::Index i = 0; i < n; ++i) {
    require(std::abs(entries_.row(i).sum() - 1.0) <= kMatrixTolerance,
            ErrorKind::kAssumptionViolated,
            "row " + std::to_string(i) + " does not sum to 1");
  }
  if (graph != nullptr) {
    require(graph->node_count() == n, ErrorKind::kInvalidParameter,
            "graph and weight matrix sizes differ");
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        if (i != j && !graph->has_edge(static_cast<int>(i), static_cast<int>(j)))
          require(entries_(i, j) == 0.0, ErrorKind::kAssumptionViolated,
                  "non-edge " + pair_text(static_cast<int>(i), static_cast<int>(j)) +
                      " carries weight");
  }
  beta_ = spectral_beta(entries_);
}

WeightMatrix WeightMatrix::single_node() {
  return WeightMatrix(Eigen::MatrixXd::Ones(1, 1), 0.0);
}

WeightMatrix metropolis_weights(const Graph& graph) {
  const int n = graph.node_count();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (auto [i, j] : graph.edges()) {
    const double w = 1.0 / (1.0 + std::max(graph.degree(i), graph.degree(j)));
    a(i, j) = w;
    a(j, i) = w;
  }
  for (int i = 0; i < n; ++i) {
    double off = 0.0;
    for (int j : graph.neighbors(i)) off += a(i, j);
    a(i, i) = 1.0 - off;
  }
  return WeightMatrix(std::move(a), &graph);
}

Eigen::MatrixXd consensus_mix(const Eigen::MatrixXd& weights,
                              const Eigen::MatrixXd& rows) {
  require(weights.cols() == rows.rows(), ErrorKind::kInvalidParameter,
          "mixing expects " + std::to_string(weights.cols()) + " rows, got " +
              std::to_string(rows.rows()));
  require(rows.allFinite(), ErrorKind::kInvalidParameter,
          "mixing input has non-finite entries");
  return weights * rows;
}

Eigen::MatrixXd consensus_mix(const WeightMatrix& weights,
                              const Eigen::MatrixXd& rows) {
  const Eigen::MatrixXd& a = weights.entries();
  require(a.cols() == rows.rows(), ErrorKind::kInvalidParameter,
          "mixing expects " + std::to_string(a.cols()) + " rows, got " +
              std::to_string(rows.rows()));
  require(rows.allFinite(), ErrorKind::kInvalidParameter,
          "mixing input has non-finite entries");
  // Difference form x_i + sum_j a_ij (x_j - x_i): equal to W X for a
  // stochastic W, and nodes that agree stay bit-identical.
  Eigen::MatrixXd out = rows;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (j != i && a(i, j) != 0.0) out.row(i) += a(i, j) * (rows.row(j) - rows.row(i));
  return out;
}

}  // namespace dsm
