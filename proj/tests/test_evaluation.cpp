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

#include <cmath>
#include <memory>

#include <doctest.h>

#include "dsm/algorithms.hpp"
#include "dsm/boosting.hpp"
#include "dsm/evaluation.hpp"
#include "dsm/ratings.hpp"
#include "support.hpp"

using dsm::testing::error_kind_of;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

// A trace in which every node plays `x` every round.
dsm::Trace constant_play(int rounds, int nodes, const VectorXd& x) {
  dsm::Trace trace;
  trace.rounds = rounds;
  trace.nodes = nodes;
  trace.dimension = static_cast<int>(x.size());
  for (int t = 0; t < rounds; ++t) trace.actions.push_back(x.transpose().replicate(nodes, 1));
  trace.rewards = MatrixXd::Zero(rounds, nodes);
  trace.grad_queries = dsm::CounterMatrix::Zero(rounds, nodes);
  trace.exchanges = dsm::CounterMatrix::Zero(rounds, nodes);
  return trace;
}

}  // namespace

TEST_CASE("continuous greedy on a linear objective lands on the LMO vertex") {
  const VectorXd h = (VectorXd(4) << 1, 3, 2, 0.5).finished();
  const dsm::BoxBudgetRegion k(4, 1.0, 2.0);
  const auto stream = dsm::testing::constant_stream(3, 2, dsm::testing::linear_objective(h), 0.0);
  const auto b = dsm::offline_opt(stream, k, 50);
  CHECK((b.point - k.lmo(h)).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(b.value == doctest::Approx(5.0));
  CHECK(b.method.find("approximate") != std::string::npos);
}

TEST_CASE("continuous greedy on the zero objective") {
  const auto stream =
      dsm::testing::constant_stream(2, 2, dsm::testing::linear_objective(VectorXd::Zero(3)), 0.0);
  CHECK(dsm::offline_opt(stream, dsm::BoxBudgetRegion(3, 1.0, 1.0), 10).value == 0.0);
}

TEST_CASE("continuous greedy matches a grid search in two dimensions") {
  const dsm::BoxBudgetRegion k(2, 1.0, 1.0);
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto stream = dsm::quadratic_stream(2, 2, VectorXd::Ones(2), 1.0, 0.0, seed);
    const auto b = dsm::offline_opt(stream, k, 200);
    double best = -1e300;
    for (int i = 0; i <= 140; ++i)
      for (int j = 0; i + j <= 140; ++j)
        best = std::max(best, dsm::average_objective(stream, Eigen::Vector2d(i / 140.0, j / 140.0)));
    CHECK(std::abs(b.value - best) <= 1e-2);
  }
}

TEST_CASE("continuous greedy needs enough steps") {
  const auto stream = dsm::quadratic_stream(2, 2, VectorXd::Ones(2), 1.0, 0.0, 1);
  CHECK(error_kind_of([&] { dsm::offline_opt(stream, dsm::BoxBudgetRegion(2, 1.0, 1.0), 5); }) ==
        dsm::ErrorKind::kInvalidParameter);
}

TEST_CASE("regret of playing the benchmark") {
  const auto stream = dsm::quadratic_stream(6, 3, VectorXd::Ones(3), 1.0, 0.0, 4);
  const dsm::BoxBudgetRegion k(3, 1.0, 1.5);
  const auto b = dsm::offline_opt(stream, k, 100);
  const auto trace = constant_play(6, 3, b.point);
  const auto exact = dsm::alpha_regret(trace, stream, k, b.point, 1.0);
  CHECK(exact.cumulative.cwiseAbs().maxCoeff() == 0.0);
  const auto boosted = dsm::alpha_regret(trace, stream, k, b.point, dsm::kOneMinusInvE);
  double total = 0.0;
  for (int t = 0; t < 6; ++t) {
    total += boosted.benchmark_reward(t);
    for (int j = 0; j < 3; ++j)
      CHECK(boosted.cumulative(t, j) == doctest::Approx(-std::exp(-1.0) * total).epsilon(1e-12));
  }
  CHECK(boosted.benchmark_dominates);
}

TEST_CASE("regret of the origin is alpha times the benchmark reward") {
  const VectorXd h = (VectorXd(2) << 1, 2).finished();
  const auto stream = dsm::testing::constant_stream(1, 1, dsm::testing::linear_objective(h), 0.0);
  const dsm::BoxBudgetRegion k(2, 1.0, 1.0);
  const VectorXd star = k.lmo(h);
  const auto report = dsm::alpha_regret(constant_play(1, 1, VectorXd::Zero(2)), stream, k, star, 0.5);
  CHECK(report.cumulative(0, 0) == doctest::Approx(0.5 * 2.0));
  CHECK(report.final_ratio() == doctest::Approx(1.0));
}

TEST_CASE("regret inputs are validated") {
  const auto stream = dsm::quadratic_stream(2, 1, VectorXd::Ones(2), 1.0, 0.0, 4);
  const dsm::BoxBudgetRegion k(2, 1.0, 1.0);
  const auto trace = constant_play(2, 1, VectorXd::Zero(2));
  CHECK(error_kind_of([&] { dsm::alpha_regret(trace, stream, k, VectorXd::Ones(2), 0.5); }) ==
        dsm::ErrorKind::kInvalidParameter);
  CHECK(error_kind_of([&] { dsm::alpha_regret(trace, stream, k, VectorXd::Zero(2), 0.0); }) ==
        dsm::ErrorKind::kInvalidParameter);
}

TEST_CASE("regret recomputed from per-round rewards is bit-identical") {
  const auto data = dsm::synth_ratings(2, 32, 4, 8, dsm::half_star_levels());
  const auto stream = dsm::ratings_stream(data, 2, 0.1);
  const auto k = std::make_shared<const dsm::BoxBudgetRegion>(8, 1.0, 2.0);
  const auto w = dsm::metropolis_weights(dsm::build_topology(dsm::TopologyKind::kComplete, 2, 1, 0));
  const auto trace = dsm::run_mono_dmfw(stream, w, k, {8, 4, 0.0, 0.0}, {1, false});
  const auto b = dsm::offline_opt(stream, *k, 80);
  const auto report = dsm::alpha_regret(trace, stream, *k, b.point, dsm::kOneMinusInvE);
  for (int j = 0; j < 2; ++j) {
    double running = 0.0;
    for (int t = 0; t < 32; ++t) {
      double best = 0.0, got = 0.0;
      for (int i = 0; i < 2; ++i) {
        best += stream.at(t, i).value(b.point);
        got += stream.at(t, i).value(trace.actions[t].row(j).transpose());
      }
      running += report.alpha * (best / 2) - got / 2;
      REQUIRE(report.cumulative(t, j) == running);
      REQUIRE(report.ratio(t, j) == running / (t + 1));
    }
  }
  CHECK(report.ratio.allFinite());
}

TEST_CASE("counter audits") {
  const auto stream = dsm::quadratic_stream(16, 3, VectorXd::Ones(4), 1.0, 0.1, 6);
  const auto k = std::make_shared<const dsm::BoxBudgetRegion>(4, 1.0, 2.0);
  const auto w = dsm::metropolis_weights(dsm::build_topology(dsm::TopologyKind::kCycle, 3, 1, 0));
  auto mono = dsm::run_mono_dmfw(stream, w, k, {4, 4, 0.0, 0.0}, {});
  auto a = dsm::audit_counters(mono, dsm::AlgorithmKind::kMonoDmfw);
  CHECK(a.grads_per_round == 1.0);
  CHECK(a.exchanges_per_round == 1.0);
  a = dsm::audit_counters(dsm::run_dobga(stream, w, k, {}, {}), dsm::AlgorithmKind::kDobga);
  CHECK(a.grads_per_round == 1.0);
  CHECK(a.exchanges_per_round == 1.0);
  dsm::DmfwConfig dmfw;
  dmfw.phases = 125;
  a = dsm::audit_counters(dsm::run_dmfw(stream, w, k, dmfw, {}), dsm::AlgorithmKind::kDmfw);
  CHECK(a.grads_per_round == 125.0);
  CHECK(a.exchanges_per_round == 125.0);

  CHECK(error_kind_of([&] { dsm::audit_counters(mono, dsm::AlgorithmKind::kDobga); }) ==
        dsm::ErrorKind::kAuditFailure);
  mono.grad_queries(15, 1) += 1;
  CHECK(error_kind_of([&] { dsm::audit_counters(mono, dsm::AlgorithmKind::kMonoDmfw); }) ==
        dsm::ErrorKind::kAuditFailure);
}

TEST_CASE("probe bound formula") {
  CHECK(dsm::consensus_deviation_bound(3, 2.0, 8, 0.0) == doctest::Approx(std::sqrt(3.0) * 2.0 / 8));
  CHECK(dsm::consensus_deviation_bound(5, 1.0, 16, 0.4) ==
        doctest::Approx(0.5 * dsm::consensus_deviation_bound(5, 1.0, 8, 0.4)));
}

TEST_CASE("probes on a complete three-node graph") {
  const auto stream = dsm::quadratic_stream(16, 3, VectorXd::Ones(5), 1.0, 0.2, 9);
  const auto k = std::make_shared<const dsm::BoxBudgetRegion>(5, 1.0, 2.0);
  const auto w = dsm::metropolis_weights(dsm::build_topology(dsm::TopologyKind::kComplete, 3, 1, 0));
  auto trace = dsm::run_mono_dmfw(stream, w, k, {8, 2, 0.0, 0.0}, {3, false});
  const auto rows = dsm::probe_report(trace);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].bound == doctest::Approx(std::sqrt(3.0) * k->geometry().radius / 8));
  for (const auto& row : rows) CHECK(row.pass);
  trace.phases[3].deviation = 10.0;
  CHECK_FALSE(dsm::probe_report(trace)[1].pass);
}

TEST_CASE("a single node has no consensus deviation") {
  const auto stream = dsm::quadratic_stream(8, 1, VectorXd::Ones(3), 1.0, 0.2, 2);
  const auto k = std::make_shared<const dsm::BoxBudgetRegion>(3, 1.0, 1.0);
  const auto mono =
      dsm::run_mono_dmfw(stream, dsm::WeightMatrix::single_node(), k, {4, 2, 0.0, 0.0}, {});
  for (const auto& p : mono.phases) CHECK(p.deviation == 0.0);
  const auto dobga = dsm::run_dobga(stream, dsm::WeightMatrix::single_node(), k, {}, {});
  for (const auto& d : dobga.diagnostics) CHECK(d.deviation == 0.0);
}

TEST_CASE("DOBGA probes include the initial disagreement") {
  const auto stream = dsm::quadratic_stream(30, 4, VectorXd::Ones(3), 1.0, 0.1, 3);
  const auto k = std::make_shared<const dsm::BoxBudgetRegion>(3, 1.0, 1.5);
  const auto w = dsm::metropolis_weights(dsm::build_topology(dsm::TopologyKind::kCycle, 4, 1, 0));
  dsm::DobgaConfig config;
  MatrixXd start = MatrixXd::Zero(4, 3);
  start(0, 0) = 1.0;
  start(2, 1) = 0.5;
  config.initial_points = start;
  auto trace = dsm::run_dobga(stream, w, k, config, {5, false});
  CHECK(trace.initial_deviation > 0.0);
  for (const auto& row : dsm::probe_report(trace)) CHECK_MESSAGE(row.pass, row.name);
  trace.diagnostics[4].residual = 5.0;
  CHECK_FALSE(dsm::probe_report(trace)[0].pass);
}
