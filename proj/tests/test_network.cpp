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

#include <algorithm>
#include <functional>
#include <sstream>

#include <doctest.h>

#include "dsm/error.hpp"
#include "dsm/network.hpp"
#include "support.hpp"

using dsm::Graph;
using dsm::TopologyKind;
using dsm::testing::error_kind_of;

namespace {

bool same_edges(const Graph& g, std::vector<Graph::Edge> expected) {
  auto got = g.edges();
  std::sort(got.begin(), got.end());
  std::sort(expected.begin(), expected.end());
  return got == expected;
}

}  // namespace

TEST_CASE("complete graph on three nodes") {
  const Graph g = dsm::build_topology(TopologyKind::kComplete, 3, 1.0, 7);
  CHECK(same_edges(g, {{0, 1}, {0, 2}, {1, 2}}));
  for (int i = 0; i < 3; ++i) CHECK(g.degree(i) == 2);
}

TEST_CASE("cycle on four nodes") {
  const Graph g = dsm::build_topology(TopologyKind::kCycle, 4, 1.0, 7);
  CHECK(same_edges(g, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}));
  for (int i = 0; i < 4; ++i) CHECK(g.degree(i) == 2);
}

TEST_CASE("a two-node cycle is a single edge") {
  CHECK(same_edges(dsm::build_topology(TopologyKind::kCycle, 2, 1.0, 0), {{0, 1}}));
}

TEST_CASE("Erdos-Renyi with p = 1 is complete") {
  const Graph er = dsm::build_topology(TopologyKind::kErdosRenyi, 5, 1.0, 7);
  CHECK(er == dsm::build_topology(TopologyKind::kComplete, 5, 1.0, 7));
}

TEST_CASE("Erdos-Renyi graphs are connected and seed-deterministic") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph a = dsm::build_topology(TopologyKind::kErdosRenyi, 12, 0.3, seed);
    CHECK(a.is_connected());
    CHECK(a == dsm::build_topology(TopologyKind::kErdosRenyi, 12, 0.3, seed));
  }
}

TEST_CASE("Erdos-Renyi gives up when connectivity is hopeless") {
  CHECK(error_kind_of([] { dsm::build_topology(TopologyKind::kErdosRenyi, 40, 1e-6, 3); }) ==
        dsm::ErrorKind::kTopologyGenerationFailure);
}

TEST_CASE("topology parameters are validated") {
  CHECK(error_kind_of([] { dsm::build_topology(TopologyKind::kCycle, 1, 1.0, 0); }) ==
        dsm::ErrorKind::kInvalidParameter);
  CHECK(error_kind_of([] { dsm::build_topology(TopologyKind::kErdosRenyi, 5, 0.0, 0); }) ==
        dsm::ErrorKind::kInvalidParameter);
  CHECK(error_kind_of([] { dsm::build_topology(TopologyKind::kErdosRenyi, 5, 1.5, 0); }) ==
        dsm::ErrorKind::kInvalidParameter);
  CHECK(error_kind_of([] { Graph(3, {{0, 0}}); }) == dsm::ErrorKind::kInvalidParameter);
  CHECK(error_kind_of([] { Graph(3, {{0, 1}, {1, 0}}); }) == dsm::ErrorKind::kInvalidParameter);
  CHECK(error_kind_of([] { Graph(3, {{0, 3}}); }) == dsm::ErrorKind::kInvalidParameter);
}

TEST_CASE("Metropolis weights on small graphs") {
  const auto complete = dsm::metropolis_weights(dsm::build_topology(TopologyKind::kComplete, 3, 1, 0));
  CHECK(complete.entries().isApprox(Eigen::MatrixXd::Constant(3, 3, 1.0 / 3), 1e-15));

  const auto cycle = dsm::metropolis_weights(dsm::build_topology(TopologyKind::kCycle, 4, 1, 0));
  Eigen::MatrixXd expected(4, 4);
  expected << 1, 1, 0, 1,  //
      1, 1, 1, 0,          //
      0, 1, 1, 1,          //
      1, 0, 1, 1;
  CHECK((cycle.entries() - expected / 3.0).cwiseAbs().maxCoeff() < 1e-15);

  const auto path = dsm::metropolis_weights(Graph(2, {{0, 1}}));
  CHECK((path.entries() - Eigen::MatrixXd::Constant(2, 2, 0.5)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("Metropolis weights are symmetric and doubly stochastic") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = dsm::build_topology(TopologyKind::kErdosRenyi, 15, 0.25, seed);
    const Eigen::MatrixXd w = dsm::metropolis_weights(g).entries();
    CHECK((w - w.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((w.rowwise().sum().array() - 1.0).abs().maxCoeff() <= 1e-12);
    CHECK(w.minCoeff() >= 0.0);
    for (int i = 0; i < 15; ++i)
      for (int j = 0; j < 15; ++j)
        if (i != j && !g.has_edge(i, j)) CHECK(w(i, j) == 0.0);
    CHECK(dsm::spectral_beta(w) < 1.0);
  }
}

TEST_CASE("spectral beta of the reference matrices") {
  CHECK(std::abs(dsm::spectral_beta(Eigen::MatrixXd::Constant(3, 3, 1.0 / 3))) < 1e-8);
  const auto cycle = dsm::metropolis_weights(dsm::build_topology(TopologyKind::kCycle, 4, 1, 0));
  CHECK(std::abs(cycle.beta() - 1.0 / 3.0) < 1e-8);
  CHECK(error_kind_of([] { dsm::spectral_beta(Eigen::MatrixXd::Identity(3, 3)); }) ==
        dsm::ErrorKind::kAssumptionViolated);
}

TEST_CASE("weight matrices violating the assumptions are rejected") {
  Eigen::MatrixXd asym(2, 2);
  asym << 0.6, 0.4, 0.3, 0.7;
  CHECK(error_kind_of([&] { dsm::WeightMatrix w(asym); }) == dsm::ErrorKind::kAssumptionViolated);
  Eigen::MatrixXd negative(2, 2);
  negative << 1.5, -0.5, -0.5, 1.5;
  CHECK(error_kind_of([&] { dsm::WeightMatrix w(negative); }) == dsm::ErrorKind::kAssumptionViolated);
  const Graph path(3, {{0, 1}, {1, 2}});
  const Eigen::MatrixXd uniform = Eigen::MatrixXd::Constant(3, 3, 1.0 / 3);
  CHECK(error_kind_of([&] { dsm::WeightMatrix w(uniform, &path); }) ==
        dsm::ErrorKind::kAssumptionViolated);
  CHECK(dsm::WeightMatrix::single_node().beta() == 0.0);
}

TEST_CASE("consensus mixing examples") {
  const auto w = dsm::metropolis_weights(dsm::build_topology(TopologyKind::kComplete, 3, 1, 0));
  Eigen::MatrixXd same(3, 4);
  for (int i = 0; i < 3; ++i) same.row(i) << 0.5, -1.0, 2.0, 7.0;
  CHECK((dsm::consensus_mix(w, same) - same).cwiseAbs().maxCoeff() < 1e-15);
  const Eigen::MatrixXd mixed = dsm::consensus_mix(w, Eigen::MatrixXd::Identity(3, 3));
  CHECK((mixed.array() - 1.0 / 3.0).abs().maxCoeff() < 1e-15);
  const Eigen::MatrixXd x = Eigen::MatrixXd::Random(3, 5);
  CHECK(dsm::consensus_mix(Eigen::MatrixXd::Identity(3, 3), x) == x);
}

TEST_CASE("consensus mixing preserves the average and contracts deviations") {
  dsm::Rng rng(11);
  for (TopologyKind kind : {TopologyKind::kCycle, TopologyKind::kErdosRenyi}) {
    const auto w = dsm::metropolis_weights(dsm::build_topology(kind, 9, 0.4, 5));
    for (int trial = 0; trial < 50; ++trial) {
      Eigen::MatrixXd x(9, 6);
      for (int i = 0; i < 9; ++i) x.row(i) = dsm::testing::random_vector(6, -3, 3, rng).transpose();
      const Eigen::MatrixXd y = dsm::consensus_mix(w, x);
      CHECK((y.colwise().mean() - x.colwise().mean()).cwiseAbs().maxCoeff() <= 1e-10);
      const Eigen::MatrixXd centred = x.rowwise() - x.colwise().mean();
      CHECK(dsm::consensus_mix(w, centred).norm() <= (w.beta() + 1e-8) * centred.norm());
    }
  }
}

TEST_CASE("consensus mixing rejects mismatched shapes") {
  const auto w = dsm::metropolis_weights(dsm::build_topology(TopologyKind::kComplete, 3, 1, 0));
  CHECK(error_kind_of([&] { dsm::consensus_mix(w, Eigen::MatrixXd::Zero(4, 2)); }) ==
        dsm::ErrorKind::kInvalidParameter);
}

TEST_CASE("edge lists round-trip") {
  const Graph g = dsm::build_topology(TopologyKind::kErdosRenyi, 8, 0.5, 2);
  std::stringstream text;
  dsm::write_edge_list(text, g);
  CHECK(dsm::read_edge_list(text) == g);
  std::stringstream bad("3\n0 x\n");
  CHECK(error_kind_of([&] { dsm::read_edge_list(bad); }) == dsm::ErrorKind::kParseError);
}
