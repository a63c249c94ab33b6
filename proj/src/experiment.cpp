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

#include "dsm/experiment.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <optional>

#include "dsm/algorithms.hpp"
#include "dsm/boosting.hpp"
#include "dsm/network.hpp"
#include "dsm/objectives.hpp"
#include "dsm/plot.hpp"
#include "dsm/ratings.hpp"
#include "dsm/region.hpp"

namespace dsm {
namespace {

namespace fs = std::filesystem;

std::string number(double v) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, v);
  return std::string(buffer, end);
}

// Everything shared by the algorithms of one (topology, seed).
struct CellInputs {
  std::optional<WeightMatrix> weights;
  std::optional<ObjectiveStream> stream;
  std::shared_ptr<const ConvexRegion> region;
  Benchmark benchmark;
  IngestReport ingest;
};

CellInputs build_inputs(const ExperimentConfig& config, TopologyKind topology,
                        std::uint64_t seed, const std::optional<RatingsData>& file_data) {
  CellInputs in;
  if (config.nodes == 1) {
    in.weights = WeightMatrix::single_node();
  } else {
    const Graph graph =
        build_topology(topology, config.nodes, config.resolved_edge_prob(), seed);
    in.weights = metropolis_weights(graph);
  }
  in.region = std::make_shared<BoxBudgetRegion>(config.dimension, config.upper, config.budget);
  const std::uint64_t data_seed = config.data_seed + seed;
  switch (config.source) {
    case DataSource::kRatings:
      in.ingest = file_data->report;
      in.stream = ratings_stream(*file_data, config.nodes, config.sigma);
      break;
    case DataSource::kSynthetic: {
      const RatingsData data =
          synth_ratings(data_seed, config.rounds, config.users_per_round, config.dimension,
                        half_star_levels(), config.rating_prob);
      in.ingest = data.report;
      in.stream = ratings_stream(data, config.nodes, config.sigma);
      break;
    }
    case DataSource::kQuadratic:
      in.stream = quadratic_stream(config.rounds, config.nodes,
                                   Eigen::VectorXd::Constant(config.dimension, config.upper),
                                   config.hessian_scale, config.sigma, data_seed);
      break;
  }
  in.benchmark = offline_opt(*in.stream, *in.region, config.fw_steps);
  return in;
}

Trace run_algorithm(AlgorithmKind algorithm, const ExperimentConfig& config,
                    const CellInputs& in, std::uint64_t seed) {
  const RunOptions options{seed, false};
  switch (algorithm) {
    case AlgorithmKind::kMonoDmfw: {
      const auto [k, q] = config.mono_blocking();
      MonoDmfwConfig c;
      c.phases = k;
      c.blocks = q;
      c.gamma = config.mono_gamma;
      return run_mono_dmfw(*in.stream, *in.weights, in.region, c, options);
    }
    case AlgorithmKind::kDobga: {
      DobgaConfig c;
      c.grad_samples = config.dobga_grad_samples;
      return run_dobga(*in.stream, *in.weights, in.region, c, options);
    }
    case AlgorithmKind::kDmfw: {
      DmfwConfig c;
      c.phases = config.dmfw_phases;
      return run_dmfw(*in.stream, *in.weights, in.region, c, options);
    }
  }
  fail(ErrorKind::kInvalidParameter, "unknown algorithm");
}

void write_csv(const std::string& path, const CellResult& cell, const Trace& trace,
               const RegretReport& report) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), ErrorKind::kInvalidParameter, "cannot write " + path);
  out << kCsvHeader << "\n";
  const std::string prefix = std::string(",") + to_string(cell.algorithm) + "," +
                             cell.topology + "," + std::to_string(cell.seed) + ",";
  for (int t = 0; t < trace.rounds; ++t) {
    for (int j = 0; j < trace.nodes; ++j) {
      out << (t + 1) << "," << j << prefix << number(report.network_reward(t, j)) << ","
          << number(report.cumulative(t, j)) << "," << number(report.ratio(t, j)) << ","
          << trace.grad_queries(t, j) << "," << trace.exchanges(t, j) << "\n";
    }
  }
}

void write_meta(const std::string& path, const ExperimentConfig& config, const CellResult& cell,
                const CellInputs& in, const Trace& trace) {
  std::map<std::string, std::string> meta = config.echo();
  for (const auto& [k, v] : trace.metadata) meta["trace." + k] = v;
  meta["cell.algorithm"] = to_string(cell.algorithm);
  meta["cell.topology"] = cell.topology;
  meta["cell.seed"] = std::to_string(cell.seed);
  meta["cell.beta"] = number(trace.beta);
  meta["cell.radius"] = number(trace.radius);
  meta["cell.diameter"] = number(trace.diameter);
  meta["cell.payload_bytes_per_round"] = number(trace.payload_bytes_per_round);
  meta["cell.wall_seconds"] = number(cell.wall_seconds);
  meta["eval.alpha"] = number(kOneMinusInvE);
  meta["eval.benchmark"] = in.benchmark.method;
  meta["eval.benchmark_value"] = number(in.benchmark.value);
  meta["eval.best_played_value"] = number(cell.best_played_value);
  meta["eval.benchmark_dominates"] = cell.benchmark_dominates ? "true" : "false";
  meta["eval.final_ratio"] = number(cell.final_ratio);
  meta["audit.grads_per_round"] = number(cell.audit.grads_per_round);
  meta["audit.exchanges_per_round"] = number(cell.audit.exchanges_per_round);
  meta["audit.expected"] = "(" + number(cell.audit.expected_grads) + ", " +
                           number(cell.audit.expected_exchanges) + ")";
  meta["audit.pass"] = cell.audit_ok ? "true" : "false";
  for (const auto& row : cell.probes) {
    meta["probe." + row.name] = std::string(row.pass ? "pass" : "FAIL") +
                                " observed=" + number(row.observed) +
                                " bound=" + number(row.bound) +
                                " checks=" + std::to_string(row.checks);
  }
  meta["data.rows"] = std::to_string(in.ingest.rows);
  meta["data.excluded_rows"] = std::to_string(in.ingest.excluded_rows);
  meta["data.users_seen"] = std::to_string(in.ingest.users_seen);
  meta["data.users_kept"] = std::to_string(in.ingest.users_kept);
  meta["data.empty_user_count"] = std::to_string(in.ingest.empty_users);
  std::ofstream out(path, std::ios::binary);
  require(out.good(), ErrorKind::kInvalidParameter, "cannot write " + path);
  for (const auto& [k, v] : meta) out << k << "=" << v << "\n";
}

void run_cell(const ExperimentConfig& config, const CellInputs& in, CellResult& cell) {
  const auto start = std::chrono::steady_clock::now();
  Trace trace = run_algorithm(cell.algorithm, config, in, cell.seed);
  cell.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const RegretReport report =
      alpha_regret(trace, *in.stream, *in.region, in.benchmark.point, kOneMinusInvE);
  cell.final_ratio = report.final_ratio();
  cell.ratio_curve = report.ratio.rowwise().maxCoeff();
  cell.benchmark_dominates = report.benchmark_dominates;
  cell.benchmark_value = report.benchmark_value;
  cell.best_played_value = report.best_played_value;

  try {
    cell.audit = audit_counters(trace, cell.algorithm);
    cell.audit_ok = true;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kAuditFailure) throw;
    cell.error = e.what();
    cell.error_kind = e.kind();
  }
  cell.probes = probe_report(trace);
  cell.probes_ok = true;
  for (const auto& row : cell.probes) cell.probes_ok = cell.probes_ok && row.pass;
  if (cell.audit_ok && !cell.probes_ok) {
    cell.error = "probe bound violated";
    cell.error_kind = ErrorKind::kAuditFailure;
  }
  cell.ok = cell.audit_ok && cell.probes_ok;

  if (!config.out_dir.empty()) {
    const fs::path dir(config.out_dir);
    cell.csv_path = (dir / (cell.tag + ".csv")).string();
    write_csv(cell.csv_path, cell, trace, report);
    write_meta((dir / ("meta_" + cell.tag + ".txt")).string(), config, cell, in, trace);
    std::ofstream json(dir / ("trace_" + cell.tag + ".json"), std::ios::binary);
    write_trace_json(json, trace);
  }
  cell.trace = std::make_shared<const Trace>(std::move(trace));
}

void write_summary(const std::string& path, const ExperimentResult& result) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), ErrorKind::kInvalidParameter, "cannot write " + path);
  out << "tag,algorithm,topology,seed,status,error_kind,final_ratio,wall_seconds,"
         "grads_per_round,exchanges_per_round,probes,benchmark_dominates,error\n";
  for (const auto& c : result.cells) {
    std::string message = c.error;
    for (char& ch : message)
      if (ch == ',' || ch == '\n') ch = ';';
    out << c.tag << "," << to_string(c.algorithm) << "," << c.topology << "," << c.seed << ","
        << (c.ok ? "ok" : "failed") << "," << (c.ok ? "" : to_string(c.error_kind)) << ","
        << number(c.final_ratio) << "," << number(c.wall_seconds) << ","
        << number(c.audit.grads_per_round) << "," << number(c.audit.exchanges_per_round) << ","
        << (c.probes_ok ? "pass" : "fail") << "," << (c.benchmark_dominates ? "true" : "false")
        << "," << message << "\n";
  }
}

}  // namespace

int ExperimentResult::exit_code() const {
  int code = 0;
  for (const auto& c : cells) {
    if (c.ok) continue;
    if (c.error_kind == ErrorKind::kAuditFailure) return 2;
    code = 1;
  }
  return code;
}

double ExperimentResult::mean_final_ratio(AlgorithmKind algorithm,
                                          const std::string& topology) const {
  double total = 0.0;
  int count = 0;
  for (const auto& c : cells) {
    if (c.algorithm != algorithm || c.topology != topology || c.trace == nullptr) continue;
    total += c.final_ratio;
    ++count;
  }
  return count ? total / count : std::numeric_limits<double>::quiet_NaN();
}

double ExperimentResult::mean_wall_seconds(AlgorithmKind algorithm,
                                           const std::string& topology) const {
  double total = 0.0;
  int count = 0;
  for (const auto& c : cells) {
    if (c.algorithm != algorithm || c.topology != topology || c.trace == nullptr) continue;
    total += c.wall_seconds;
    ++count;
  }
  return count ? total / count : std::numeric_limits<double>::quiet_NaN();
}

std::string cell_tag(AlgorithmKind algorithm, const std::string& topology, std::uint64_t seed) {
  return std::string(to_string(algorithm)) + "_" + topology + "_s" + std::to_string(seed);
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  if (!config.out_dir.empty()) fs::create_directories(config.out_dir);

  ExperimentResult result;
  std::optional<RatingsData> file_data;
  std::optional<Error> data_error;
  if (config.source == DataSource::kRatings) {
    try {
      file_data = ingest_ratings(config.ratings_path, config.dimension, config.rounds,
                                 config.users_per_round);
    } catch (const Error& e) {
      data_error = e;
    }
  }

  const auto record_failure = [](CellResult& cell, const Error& e) {
    cell.ok = false;
    cell.error = e.what();
    cell.error_kind = e.kind();
  };

  std::map<std::string, std::vector<std::string>> csv_by_topology;
  for (TopologyKind topology : config.topologies) {
    const std::string topology_name = config.nodes == 1 ? "single" : to_string(topology);
    for (std::uint64_t seed : config.seeds) {
      std::optional<CellInputs> inputs;
      std::optional<Error> input_error = data_error;
      if (!input_error) {
        try {
          inputs = build_inputs(config, topology, seed, file_data);
        } catch (const Error& e) {
          input_error = e;
        }
      }
      for (AlgorithmKind algorithm : config.algorithms) {
        CellResult cell;
        cell.algorithm = algorithm;
        cell.topology = topology_name;
        cell.seed = seed;
        cell.tag = cell_tag(algorithm, topology_name, seed);
        if (input_error) {
          record_failure(cell, *input_error);
        } else {
          try {
            run_cell(config, *inputs, cell);
          } catch (const Error& e) {
            record_failure(cell, e);
          }
        }
        if (!cell.csv_path.empty()) csv_by_topology[topology_name].push_back(cell.csv_path);
        result.cells.push_back(std::move(cell));
      }
    }
  }

  if (!config.out_dir.empty()) {
    write_summary((fs::path(config.out_dir) / "summary.csv").string(), result);
    for (const auto& [topology, paths] : csv_by_topology) {
      const std::string svg = (fs::path(config.out_dir) / ("ratio_" + topology + ".svg")).string();
      emit_plots(paths, svg, "(1-1/e)-regret / t, " + topology + ", N=" +
                                 std::to_string(config.nodes));
      result.plots.push_back(svg);
    }
  }
  return result;
}

}  // namespace dsm
