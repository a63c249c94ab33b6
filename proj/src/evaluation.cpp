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

#include "dsm/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dsm/boosting.hpp"
#include "dsm/error.hpp"

namespace dsm {
namespace {

constexpr double kMembershipTolerance = 1e-9;
constexpr double kDominanceTolerance = 1e-6;
constexpr double kFrankWolfeProbeSlack = 1e-9;
constexpr double kResidualProbeSlack = 1e-9;
constexpr double kDeviationProbeSlack = 1e-6;

Eigen::VectorXd average_gradient(const ObjectiveStream& stream, const Eigen::VectorXd& x) {
  Eigen::VectorXd total = Eigen::VectorXd::Zero(stream.dimension());
  for (int t = 0; t < stream.rounds(); ++t)
    for (int i = 0; i < stream.nodes(); ++i) total += stream.at(t, i).gradient(x);
  return total / (static_cast<double>(stream.rounds()) * stream.nodes());
}

// Keeps the tightest of a sequence of (observed <= bound + slack) checks.
class ProbeAccumulator {
 public:
  ProbeAccumulator(std::string name, double slack) : slack_(slack) { row_.name = std::move(name); }

  void check(double observed, double bound) {
    ++row_.checks;
    const double margin = bound - observed;
    if (row_.checks == 1 || margin < row_.margin) {
      row_.margin = margin;
      row_.observed = observed;
      row_.bound = bound;
    }
    if (observed > bound + slack_) row_.pass = false;
  }

  ProbeRow row() const { return row_; }

 private:
  ProbeRow row_;
  double slack_;
};

}  // namespace

double average_objective(const ObjectiveStream& stream, const Eigen::VectorXd& x) {
  double total = 0.0;
  for (int t = 0; t < stream.rounds(); ++t)
    for (int i = 0; i < stream.nodes(); ++i) total += stream.at(t, i).value(x);
  return total / (static_cast<double>(stream.rounds()) * stream.nodes());
}

Benchmark offline_opt(const ObjectiveStream& stream, const ConvexRegion& region, int steps) {
  require(steps >= 10, ErrorKind::kInvalidParameter, "continuous greedy needs >= 10 steps");
  require(region.dimension() == stream.dimension(), ErrorKind::kInvalidParameter,
          "region and objectives disagree on dimension");
  Eigen::VectorXd x = Eigen::VectorXd::Zero(stream.dimension());
  for (int s = 0; s < steps; ++s)
    x += region.lmo(average_gradient(stream, x)) / static_cast<double>(steps);
  Benchmark b;
  b.point = std::move(x);
  b.value = average_objective(stream, b.point);
  b.steps = steps;
  b.method = "continuous_greedy(steps=" + std::to_string(steps) + ", approximate)";
  return b;
}

double RegretReport::final_ratio() const { return ratio.row(ratio.rows() - 1).maxCoeff(); }

double RegretReport::ratio_at(int round) const {
  require(round >= 1 && round <= ratio.rows(), ErrorKind::kInvalidParameter,
          "round out of range");
  return ratio.row(round - 1).maxCoeff();
}

RegretReport alpha_regret(const Trace& trace, const ObjectiveStream& stream,
                          const ConvexRegion& region, const Eigen::VectorXd& benchmark,
                          double alpha) {
  require(alpha > 0.0 && alpha <= 1.0, ErrorKind::kInvalidParameter,
          "alpha must lie in (0, 1]");
  require(region.contains(benchmark, kMembershipTolerance), ErrorKind::kInvalidParameter,
          "benchmark point lies outside the region");
  require(trace.rounds <= stream.rounds() && trace.nodes == stream.nodes() &&
              static_cast<int>(trace.actions.size()) == trace.rounds,
          ErrorKind::kInvalidParameter, "trace does not match the stream");
  const int rounds = trace.rounds;
  const int nodes = trace.nodes;
  RegretReport report;
  report.alpha = alpha;
  report.network_reward = Eigen::MatrixXd::Zero(rounds, nodes);
  report.benchmark_reward = Eigen::VectorXd::Zero(rounds);
  report.cumulative = Eigen::MatrixXd::Zero(rounds, nodes);
  report.ratio = Eigen::MatrixXd::Zero(rounds, nodes);

  for (int t = 0; t < rounds; ++t) {
    double best = 0.0;
    for (int i = 0; i < nodes; ++i) best += stream.at(t, i).value(benchmark);
    report.benchmark_reward(t) = best / nodes;
    for (int j = 0; j < nodes; ++j) {
      const Eigen::VectorXd x = trace.actions[t].row(j).transpose();
      double got = 0.0;
      for (int i = 0; i < nodes; ++i) got += stream.at(t, i).value(x);
      report.network_reward(t, j) = got / nodes;
    }
  }
  for (int j = 0; j < nodes; ++j) {
    double running = 0.0;
    for (int t = 0; t < rounds; ++t) {
      running += alpha * report.benchmark_reward(t) - report.network_reward(t, j);
      report.cumulative(t, j) = running;
      report.ratio(t, j) = running / (t + 1);
    }
  }

  // Benchmark dominance over every played action, measured on the horizon
  // the benchmark was computed for.
  report.benchmark_value = average_objective(stream, benchmark);
  report.best_played_value = -std::numeric_limits<double>::infinity();
  for (const auto& actions : trace.actions)
    for (int j = 0; j < nodes; ++j)
      report.best_played_value = std::max(
          report.best_played_value, average_objective(stream, actions.row(j).transpose()));
  report.benchmark_dominates =
      report.benchmark_value >= report.best_played_value - kDominanceTolerance;
  return report;
}

CounterAudit audit_counters(const Trace& trace, AlgorithmKind kind) {
  require(trace.rounds >= 1 && trace.grad_queries.rows() == trace.rounds &&
              trace.exchanges.rows() == trace.rounds,
          ErrorKind::kInvalidParameter, "trace is incomplete");
  CounterAudit audit;
  audit.algorithm = kind;
  switch (kind) {
    case AlgorithmKind::kMonoDmfw:
      audit.expected_grads = 1;
      audit.expected_exchanges = 1;
      break;
    case AlgorithmKind::kDobga:
      audit.expected_grads = trace.grad_samples;
      audit.expected_exchanges = 1;
      break;
    case AlgorithmKind::kDmfw:
      audit.expected_grads = trace.phases_per_block;
      audit.expected_exchanges = trace.phases_per_block;
      break;
  }
  const auto last = trace.rounds - 1;
  audit.grads_per_round =
      static_cast<double>(trace.grad_queries.row(last).maxCoeff()) / trace.rounds;
  audit.exchanges_per_round =
      static_cast<double>(trace.exchanges.row(last).maxCoeff()) / trace.rounds;
  for (int i = 0; i < trace.nodes; ++i) {
    const double g = static_cast<double>(trace.grad_queries(last, i)) / trace.rounds;
    const double e = static_cast<double>(trace.exchanges(last, i)) / trace.rounds;
    if (kind != trace.algorithm || g != audit.expected_grads ||
        e != audit.expected_exchanges) {
      fail(ErrorKind::kAuditFailure,
           std::string(to_string(kind)) + " node " + std::to_string(i) + ": observed (" +
               std::to_string(g) + ", " + std::to_string(e) + ") per round, expected (" +
               std::to_string(audit.expected_grads) + ", " +
               std::to_string(audit.expected_exchanges) + ")");
    }
  }
  return audit;
}

double consensus_deviation_bound(int nodes, double radius, int phases, double beta) {
  return std::sqrt(static_cast<double>(nodes)) * radius / (phases * (1.0 - beta));
}

std::vector<ProbeRow> probe_report(const Trace& trace) {
  std::vector<ProbeRow> rows;
  if (trace.algorithm == AlgorithmKind::kDobga) {
    ProbeAccumulator residual("projection_residual", kResidualProbeSlack);
    ProbeAccumulator spread("dobga_consensus_deviation", kDeviationProbeSlack);
    const double root_n = std::sqrt(static_cast<double>(trace.nodes));
    double weighted_steps = 0.0;  // sum_{k<=t} beta^{t-k} eta_k
    double initial = trace.initial_deviation;
    for (const auto& d : trace.diagnostics) {
      residual.check(d.residual, d.step * kOneMinusInvE * d.estimator_norm);
      weighted_steps = trace.beta * weighted_steps + d.step;
      initial *= trace.beta;
      spread.check(d.deviation,
                   2.0 * kOneMinusInvE * d.estimator_norm * root_n * weighted_steps + initial);
    }
    rows.push_back(residual.row());
    rows.push_back(spread.row());
    return rows;
  }

  const int phases = trace.phases_per_block;
  ProbeAccumulator drift("average_iterate_drift", kFrankWolfeProbeSlack);
  ProbeAccumulator spread("consensus_deviation", kFrankWolfeProbeSlack);
  const double drift_bound = trace.radius / phases;
  const double spread_bound =
      consensus_deviation_bound(trace.nodes, trace.radius, phases, trace.beta);
  for (std::size_t p = 0; p < trace.phases.size(); ++p) {
    const PhaseRecord& record = trace.phases[p];
    if (record.phase >= 1) {
      spread.check(record.deviation, spread_bound);
      const PhaseRecord& previous = trace.phases[p - 1];
      drift.check((record.mean - previous.mean).norm(), drift_bound);
    }
  }
  rows.push_back(drift.row());
  rows.push_back(spread.row());
  return rows;
}

}  // namespace dsm
