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

#include "dsm/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "dsm/boosting.hpp"
#include "dsm/error.hpp"
#include "dsm/linear_oracle.hpp"
#include "dsm/rng.hpp"

namespace dsm {
namespace {

constexpr double kFeasibilityTolerance = 1e-9;

std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double deviation(const Eigen::MatrixXd& rows, const Eigen::VectorXd& mean) {
  return (rows.rowwise() - mean.transpose()).norm();
}

Eigen::VectorXd row_mean(const Eigen::MatrixXd& rows) {
  return rows.colwise().mean().transpose();
}

void validate_inputs(const ObjectiveStream& stream, const WeightMatrix& weights,
                     const std::shared_ptr<const ConvexRegion>& region) {
  require(region != nullptr, ErrorKind::kInvalidParameter, "missing feasible region");
  require(weights.node_count() == stream.nodes(), ErrorKind::kInvalidParameter,
          "weight matrix has " + std::to_string(weights.node_count()) +
              " nodes but the stream has " + std::to_string(stream.nodes()));
  require(region->dimension() == stream.dimension(), ErrorKind::kInvalidParameter,
          "region and objectives disagree on dimension");
  require(weights.beta() < 1.0, ErrorKind::kAssumptionViolated,
          "weight matrix has beta >= 1");
}

std::uint64_t stream_index(const RunOptions& options, int node) {
  return options.identical_node_streams ? 0 : static_cast<std::uint64_t>(node);
}

std::vector<GradientOracle> make_gradient_oracles(const ObjectiveStream& stream,
                                                  const RunOptions& options) {
  std::vector<GradientOracle> out;
  out.reserve(stream.nodes());
  for (int i = 0; i < stream.nodes(); ++i)
    out.emplace_back(stream.sigma(), make_stream(options.seed, StreamPurpose::kGradientNoise,
                                                 stream_index(options, i)));
  return out;
}

Trace start_trace(AlgorithmKind kind, const ObjectiveStream& stream,
                  const WeightMatrix& weights, const ConvexRegion& region,
                  const RunOptions& options) {
  Trace trace;
  trace.algorithm = kind;
  trace.rounds = stream.rounds();
  trace.nodes = stream.nodes();
  trace.dimension = stream.dimension();
  trace.beta = weights.beta();
  const RegionGeometry geometry = region.geometry();
  trace.radius = geometry.radius;
  trace.diameter = geometry.diameter;
  trace.rewards = Eigen::MatrixXd::Zero(stream.rounds(), stream.nodes());
  trace.grad_queries = CounterMatrix::Zero(stream.rounds(), stream.nodes());
  trace.exchanges = CounterMatrix::Zero(stream.rounds(), stream.nodes());
  trace.actions.reserve(stream.rounds());
  auto& meta = trace.metadata;
  meta["algorithm"] = to_string(kind);
  meta["seed"] = std::to_string(options.seed);
  meta["rounds"] = std::to_string(stream.rounds());
  meta["nodes"] = std::to_string(stream.nodes());
  meta["dimension"] = std::to_string(stream.dimension());
  meta["objective"] = stream.description();
  meta["sigma"] = number(stream.sigma());
  meta["gradient_bound"] = number(stream.gradient_bound());
  meta["smoothness_bound"] = number(stream.smoothness());
  meta["beta"] = number(trace.beta);
  meta["region_radius"] = number(geometry.radius);
  meta["region_diameter"] = number(geometry.diameter);
  meta["region_diameter_is_bound"] = geometry.diameter_is_upper_bound ? "true" : "false";
  return trace;
}

// Record round t's actions and exact own rewards.
void play_round(Trace& trace, const ObjectiveStream& stream, const ConvexRegion& region,
                int round, const Eigen::MatrixXd& actions) {
  for (int i = 0; i < stream.nodes(); ++i) {
    const Eigen::VectorXd x = actions.row(i).transpose();
    require(region.contains(x, kFeasibilityTolerance), ErrorKind::kAssumptionViolated,
            "node " + std::to_string(i) + " played an infeasible action in round " +
                std::to_string(round + 1));
    trace.rewards(round, i) = stream.at(round, i).value(x);
  }
  trace.actions.push_back(actions);
}

// Counters are accumulated per round as increments; convert to running totals.
void accumulate(CounterMatrix& counters) {
  for (Eigen::Index t = 1; t < counters.rows(); ++t) counters.row(t) += counters.row(t - 1);
}

// Per node and phase: one linear oracle, created at the origin.
using OracleGrid = std::vector<std::vector<OnlineLinearOracle>>;

OracleGrid make_oracles(int nodes, int phases,
                        const std::shared_ptr<const ConvexRegion>& region, double scale) {
  OracleGrid grid(nodes);
  for (auto& row : grid) {
    row.reserve(phases);
    for (int k = 0; k < phases; ++k) row.emplace_back(region, scale);
  }
  return grid;
}

// x^{(k)} = A x^{(k-1)} + v^{(k)} / K from x^{(0)} = 0; returns x^{(1..K)}
// and records the snapshots 0..K for `block`.
std::vector<Eigen::MatrixXd> frank_wolfe_phases(const WeightMatrix& weights,
                                                const OracleGrid& oracles, int phases,
                                                int dimension, int block, Trace& trace) {
  const int nodes = weights.node_count();
  std::vector<Eigen::MatrixXd> iterates;
  iterates.reserve(phases);
  Eigen::MatrixXd current = Eigen::MatrixXd::Zero(nodes, dimension);
  trace.phases.push_back({block, 0, Eigen::VectorXd::Zero(dimension), 0.0});
  Eigen::MatrixXd directions(nodes, dimension);
  for (int k = 0; k < phases; ++k) {
    for (int i = 0; i < nodes; ++i) directions.row(i) = oracles[i][k].predict().transpose();
    current = consensus_mix(weights, current) + directions / static_cast<double>(phases);
    const Eigen::VectorXd mean = row_mean(current);
    trace.phases.push_back({block, k + 1, mean, deviation(current, mean)});
    iterates.push_back(current);
  }
  return iterates;
}

// Gradient tracking and consensus on the surrogate directions, feeding each
// phase oracle its payoff vector. `round_of(i, k)` names the round whose
// local function node i queries in phase k.
template <typename RoundOf, typename Eta, typename Gamma>
void frank_wolfe_feedback(const ObjectiveStream& stream, const WeightMatrix& weights,
                          const std::vector<Eigen::MatrixXd>& iterates,
                          std::vector<GradientOracle>& gradients, OracleGrid& oracles,
                          RoundOf round_of, Eta eta, Gamma gamma, Trace& trace) {
  const int nodes = weights.node_count();
  const int phases = static_cast<int>(iterates.size());
  const int dimension = stream.dimension();
  Eigen::MatrixXd tracked = Eigen::MatrixXd::Zero(nodes, dimension);
  Eigen::MatrixXd direction = Eigen::MatrixXd::Zero(nodes, dimension);
  for (int k = 0; k < phases; ++k) {
    const double step = eta(k + 1);
    const double weight = gamma(k + 1);
    for (int i = 0; i < nodes; ++i) {
      const int round = round_of(i, k);
      const Eigen::VectorXd point = iterates[k].row(i).transpose();
      const Eigen::VectorXd grad = gradients[i].query(stream.at(round, i), point);
      ++trace.grad_queries(round, i);
      tracked.row(i) = (1.0 - step) * tracked.row(i) + step * grad.transpose();
    }
    direction = (1.0 - weight) * consensus_mix(weights, direction) + weight * tracked;
    for (int i = 0; i < nodes; ++i) oracles[i][k].feedback(direction.row(i).transpose());
  }
}

double oracle_constant(const OracleGrid& oracles) {
  double bound = 0.0;
  double scale = 0.0;
  for (const auto& row : oracles)
    for (const auto& o : row) {
      bound = std::max(bound, o.payoff_norm_bound());
      scale = std::max(scale, o.scale());
    }
  return 1.5 * scale * bound;
}

}  // namespace

double mono_dmfw_eta(int phase, int phases) {
  require(phases >= 1 && phase >= 1 && phase <= phases, ErrorKind::kInvalidParameter,
          "phase " + std::to_string(phase) + " outside [1, " + std::to_string(phases) + "]");
  if (phase <= phases / 2 + 1) return 2.0 / std::pow(phase + 3.0, 2.0 / 3.0);
  return 1.5 / std::pow(static_cast<double>(phases - phase + 2), 2.0 / 3.0);
}

double dobga_eta(int round) {
  require(round >= 1, ErrorKind::kInvalidParameter, "round index must be >= 1");
  return 1.0 / std::sqrt(static_cast<double>(round));
}

std::pair<int, int> suggest_blocking(int rounds) {
  require(rounds >= 1 && (rounds & (rounds - 1)) == 0, ErrorKind::kInvalidParameter,
          "blocking helper needs a power-of-two horizon, got " + std::to_string(rounds));
  int exponent = 0;
  while ((1 << exponent) < rounds) ++exponent;
  const int k_exponent = (3 * exponent + 4) / 5;  // ceil(3e/5)
  const int phases = 1 << k_exponent;
  return {phases, rounds / phases};
}

Trace run_mono_dmfw(const ObjectiveStream& stream, const WeightMatrix& weights,
                    std::shared_ptr<const ConvexRegion> region,
                    const MonoDmfwConfig& config, const RunOptions& options) {
  validate_inputs(stream, weights, region);
  const int phases = config.phases;
  const int blocks = config.blocks;
  require(phases >= 1 && blocks >= 1, ErrorKind::kInvalidParameter,
          "block length K and block count Q must be positive");
  require(static_cast<long>(phases) * blocks == stream.rounds(),
          ErrorKind::kInvalidParameter,
          "T = " + std::to_string(stream.rounds()) + " is not K*Q = " +
              std::to_string(phases) + "*" + std::to_string(blocks));
  const double gamma = config.gamma > 0.0
                           ? config.gamma
                           : std::pow(static_cast<double>(stream.rounds()), -0.2);
  require(gamma > 0.0 && gamma <= 1.0, ErrorKind::kInvalidParameter,
          "gamma must lie in (0, 1]");

  const int nodes = stream.nodes();
  const int dimension = stream.dimension();
  Trace trace = start_trace(AlgorithmKind::kMonoDmfw, stream, weights, *region, options);
  trace.phases_per_block = phases;
  // x and d advance in lockstep and share one payload per phase.
  trace.payload_bytes_per_round = 2.0 * dimension * sizeof(double);
  trace.metadata["K"] = std::to_string(phases);
  trace.metadata["Q"] = std::to_string(blocks);
  trace.metadata["gamma"] = number(gamma);
  trace.metadata["eta_schedule"] = "2/(k+3)^(2/3) for k<=floor(K/2)+1, else 1.5/(K-k+2)^(2/3)";

  std::vector<GradientOracle> gradients = make_gradient_oracles(stream, options);
  std::vector<Rng> shufflers;
  for (int i = 0; i < nodes; ++i)
    shufflers.push_back(
        make_stream(options.seed, StreamPurpose::kPermutation, stream_index(options, i)));
  OracleGrid oracles = make_oracles(nodes, phases, region, config.oracle_scale);
  trace.metadata["oracle_scale"] = number(oracles[0][0].scale());

  std::vector<std::vector<int>> order(nodes, std::vector<int>(phases));
  for (int q = 0; q < blocks; ++q) {
    const int first = q * phases;
    const std::vector<Eigen::MatrixXd> iterates =
        frank_wolfe_phases(weights, oracles, phases, dimension, q + 1, trace);

    for (int t = first; t < first + phases; ++t) {
      play_round(trace, stream, *region, t, iterates.back());
      // One piggybacked exchange per phase, phase k charged to round k of the block.
      trace.exchanges.row(t).setConstant(1);
    }

    // Independent uniform permutation of the block's rounds per node.
    for (int i = 0; i < nodes; ++i) {
      auto& perm = order[i];
      for (int k = 0; k < phases; ++k) perm[k] = first + k;
      for (int k = phases - 1; k > 0; --k) {
        const int pick = std::min(k, static_cast<int>(uniform01(shufflers[i]) * (k + 1)));
        std::swap(perm[k], perm[pick]);
      }
    }
    frank_wolfe_feedback(
        stream, weights, iterates, gradients, oracles,
        [&](int i, int k) { return order[i][k]; },
        [&](int k) { return mono_dmfw_eta(k, phases); }, [&](int) { return gamma; },
        trace);
  }
  accumulate(trace.grad_queries);
  accumulate(trace.exchanges);
  trace.metadata["oracle_regret_constant"] = number(oracle_constant(oracles));
  return trace;
}

Trace run_dobga(const ObjectiveStream& stream, const WeightMatrix& weights,
                std::shared_ptr<const ConvexRegion> region, const DobgaConfig& config,
                const RunOptions& options) {
  validate_inputs(stream, weights, region);
  require(static_cast<bool>(config.step), ErrorKind::kInvalidParameter,
          "missing step schedule");
  require(config.grad_samples >= 1, ErrorKind::kInvalidParameter,
          "grad_samples must be >= 1");
  const int rounds = stream.rounds();
  const int nodes = stream.nodes();
  const int dimension = stream.dimension();
  std::vector<double> steps(rounds);
  for (int t = 0; t < rounds; ++t) {
    steps[t] = config.step(t + 1);
    require(std::isfinite(steps[t]) && steps[t] > 0.0, ErrorKind::kInvalidParameter,
            "step sizes must be positive");
    require(t == 0 || steps[t] <= steps[t - 1], ErrorKind::kInvalidParameter,
            "step sizes must be nonincreasing");
  }

  Trace trace = start_trace(AlgorithmKind::kDobga, stream, weights, *region, options);
  trace.grad_samples = config.grad_samples;
  trace.payload_bytes_per_round = static_cast<double>(dimension) * sizeof(double);
  trace.metadata["eta_schedule"] = config.step_name;
  trace.metadata["grad_samples"] = std::to_string(config.grad_samples);

  Eigen::MatrixXd current = Eigen::MatrixXd::Zero(nodes, dimension);
  if (config.initial_points) {
    require(config.initial_points->rows() == nodes &&
                config.initial_points->cols() == dimension,
            ErrorKind::kInvalidParameter, "initial points must be N x n");
    current = *config.initial_points;
    for (int i = 0; i < nodes; ++i)
      require(region->contains(current.row(i).transpose(), kFeasibilityTolerance),
              ErrorKind::kInvalidParameter, "initial point outside the region");
  }
  trace.metadata["initial_points"] = config.initial_points ? "configured" : "origin";
  trace.initial_deviation = deviation(current, row_mean(current));

  std::vector<GradientOracle> gradients = make_gradient_oracles(stream, options);
  std::vector<ZSampler> samplers;
  for (int i = 0; i < nodes; ++i)
    samplers.emplace_back(
        make_stream(options.seed, StreamPurpose::kZSampler, stream_index(options, i)));

  Eigen::MatrixXd estimates(nodes, dimension);
  double estimator_norm = 0.0;
  for (int t = 0; t < rounds; ++t) {
    play_round(trace, stream, *region, t, current);
    for (int i = 0; i < nodes; ++i) {
      const Eigen::VectorXd x = current.row(i).transpose();
      Eigen::VectorXd sum = Eigen::VectorXd::Zero(dimension);
      for (int s = 0; s < config.grad_samples; ++s)
        sum += boosted_gradient(stream.at(t, i), x, gradients[i], samplers[i]);
      estimates.row(i) = sum.transpose() / static_cast<double>(config.grad_samples);
      estimator_norm = std::max(estimator_norm, estimates.row(i).norm() / kOneMinusInvE);
    }
    trace.grad_queries.row(t).setConstant(config.grad_samples);
    trace.exchanges.row(t).setConstant(1);

    const Eigen::MatrixXd targets = consensus_mix(weights, current) + steps[t] * estimates;
    Eigen::MatrixXd next(nodes, dimension);
    double residual = 0.0;
    for (int i = 0; i < nodes; ++i) {
      next.row(i) = region->project(targets.row(i).transpose()).transpose();
      residual = std::max(residual, (next.row(i) - targets.row(i)).norm());
    }
    current = std::move(next);
    trace.diagnostics.push_back(
        {t + 1, steps[t], residual, estimator_norm, deviation(current, row_mean(current))});
  }
  accumulate(trace.grad_queries);
  accumulate(trace.exchanges);
  trace.metadata["observed_estimator_norm"] = number(estimator_norm);
  return trace;
}

Trace run_dmfw(const ObjectiveStream& stream, const WeightMatrix& weights,
               std::shared_ptr<const ConvexRegion> region, const DmfwConfig& config,
               const RunOptions& options) {
  validate_inputs(stream, weights, region);
  const int phases = config.phases;
  require(phases >= 1, ErrorKind::kInvalidParameter, "DMFW needs K >= 1");
  const double default_eta = 2.0 / std::pow(static_cast<double>(phases), 2.0 / 3.0);
  const double default_gamma = 1.0 / std::sqrt(static_cast<double>(phases));
  auto eta = [&](int k) {
    const double v = config.eta ? config.eta(k) : default_eta;
    return std::min(v, 1.0);
  };
  auto gamma = [&](int k) { return config.gamma ? config.gamma(k) : default_gamma; };

  const int nodes = stream.nodes();
  const int dimension = stream.dimension();
  Trace trace = start_trace(AlgorithmKind::kDmfw, stream, weights, *region, options);
  trace.phases_per_block = phases;
  trace.payload_bytes_per_round = 2.0 * phases * dimension * sizeof(double);
  trace.metadata["K"] = std::to_string(phases);
  trace.metadata["eta_schedule"] =
      config.eta ? "configured" : "2/K^(2/3) = " + number(default_eta);
  trace.metadata["gamma_schedule"] =
      config.gamma ? "configured" : "1/K^(1/2) = " + number(default_gamma);

  std::vector<GradientOracle> gradients = make_gradient_oracles(stream, options);
  OracleGrid oracles = make_oracles(nodes, phases, region, config.oracle_scale);
  trace.metadata["oracle_scale"] = number(oracles[0][0].scale());

  for (int t = 0; t < stream.rounds(); ++t) {
    const std::vector<Eigen::MatrixXd> iterates =
        frank_wolfe_phases(weights, oracles, phases, dimension, t + 1, trace);
    play_round(trace, stream, *region, t, iterates.back());
    trace.exchanges.row(t).setConstant(phases);
    frank_wolfe_feedback(
        stream, weights, iterates, gradients, oracles, [t](int, int) { return t; }, eta,
        gamma, trace);
  }
  accumulate(trace.grad_queries);
  accumulate(trace.exchanges);
  trace.metadata["oracle_regret_constant"] = number(oracle_constant(oracles));
  return trace;
}

}  // namespace dsm
