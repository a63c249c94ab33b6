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

#include "dsm/trace.hpp"

#include <istream>
#include <ostream>

#include <json.hpp>

#include "dsm/error.hpp"

namespace dsm {
namespace {

using nlohmann::json;

json vector_json(const Eigen::VectorXd& v) {
  return json(std::vector<double>(v.data(), v.data() + v.size()));
}

Eigen::VectorXd json_vector(const json& j) {
  const auto values = j.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(values.data(),
                                           static_cast<Eigen::Index>(values.size()));
}

template <typename Matrix>
json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <typename Matrix>
Matrix json_matrix(const json& j) {
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = rows == 0 ? 0 : static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    require(static_cast<Eigen::Index>(j[r].size()) == cols, ErrorKind::kParseError,
            "ragged matrix in trace");
    for (Eigen::Index c = 0; c < cols; ++c)
      m(r, c) = j[r][c].template get<typename Matrix::Scalar>();
  }
  return m;
}

}  // namespace

const char* to_string(AlgorithmKind kind) {
  switch (kind) {
    case AlgorithmKind::kMonoDmfw:
      return "mono_dmfw";
    case AlgorithmKind::kDobga:
      return "dobga";
    case AlgorithmKind::kDmfw:
      return "dmfw";
  }
  return "unknown";
}

AlgorithmKind parse_algorithm(const std::string& name) {
  if (name == "mono_dmfw" || name == "mono-dmfw") return AlgorithmKind::kMonoDmfw;
  if (name == "dobga") return AlgorithmKind::kDobga;
  if (name == "dmfw") return AlgorithmKind::kDmfw;
  fail(ErrorKind::kInvalidParameter, "unknown algorithm '" + name + "'");
}

bool operator==(const Trace& a, const Trace& b) {
  auto same_phases = [](const std::vector<PhaseRecord>& x,
                        const std::vector<PhaseRecord>& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i].block != y[i].block || x[i].phase != y[i].phase ||
          x[i].deviation != y[i].deviation || x[i].mean != y[i].mean)
        return false;
    return true;
  };
  auto same_diagnostics = [](const std::vector<RoundDiagnostics>& x,
                             const std::vector<RoundDiagnostics>& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i].round != y[i].round || x[i].step != y[i].step ||
          x[i].residual != y[i].residual || x[i].estimator_norm != y[i].estimator_norm ||
          x[i].deviation != y[i].deviation)
        return false;
    return true;
  };
  return a.algorithm == b.algorithm && a.rounds == b.rounds && a.nodes == b.nodes &&
         a.dimension == b.dimension && a.phases_per_block == b.phases_per_block &&
         a.grad_samples == b.grad_samples && a.beta == b.beta && a.radius == b.radius &&
         a.diameter == b.diameter &&
         a.payload_bytes_per_round == b.payload_bytes_per_round &&
         a.actions == b.actions && a.rewards == b.rewards &&
         a.grad_queries == b.grad_queries && a.exchanges == b.exchanges &&
         same_phases(a.phases, b.phases) && same_diagnostics(a.diagnostics, b.diagnostics) &&
         a.initial_deviation == b.initial_deviation && a.metadata == b.metadata;
}

void write_trace_json(std::ostream& out, const Trace& trace) {
  json j;
  j["algorithm"] = to_string(trace.algorithm);
  j["rounds"] = trace.rounds;
  j["nodes"] = trace.nodes;
  j["dimension"] = trace.dimension;
  j["phases_per_block"] = trace.phases_per_block;
  j["grad_samples"] = trace.grad_samples;
  j["beta"] = trace.beta;
  j["radius"] = trace.radius;
  j["diameter"] = trace.diameter;
  j["payload_bytes_per_round"] = trace.payload_bytes_per_round;
  j["initial_deviation"] = trace.initial_deviation;
  j["metadata"] = trace.metadata;
  json actions = json::array();
  for (const auto& a : trace.actions) actions.push_back(matrix_json(a));
  j["actions"] = std::move(actions);
  j["rewards"] = matrix_json(trace.rewards);
  j["grad_queries"] = matrix_json(trace.grad_queries);
  j["exchanges"] = matrix_json(trace.exchanges);
  json phases = json::array();
  for (const auto& p : trace.phases)
    phases.push_back({{"block", p.block},
                      {"phase", p.phase},
                      {"deviation", p.deviation},
                      {"mean", vector_json(p.mean)}});
  j["phases"] = std::move(phases);
  json diagnostics = json::array();
  for (const auto& d : trace.diagnostics)
    diagnostics.push_back({{"round", d.round},
                           {"step", d.step},
                           {"residual", d.residual},
                           {"estimator_norm", d.estimator_norm},
                           {"deviation", d.deviation}});
  j["diagnostics"] = std::move(diagnostics);
  out << j.dump() << '\n';
}

Trace read_trace_json(std::istream& in) {
  json j;
  try {
    in >> j;
    Trace t;
    t.algorithm = parse_algorithm(j.at("algorithm").get<std::string>());
    t.rounds = j.at("rounds").get<int>();
    t.nodes = j.at("nodes").get<int>();
    t.dimension = j.at("dimension").get<int>();
    t.phases_per_block = j.at("phases_per_block").get<int>();
    t.grad_samples = j.at("grad_samples").get<int>();
    t.beta = j.at("beta").get<double>();
    t.radius = j.at("radius").get<double>();
    t.diameter = j.at("diameter").get<double>();
    t.payload_bytes_per_round = j.at("payload_bytes_per_round").get<double>();
    t.initial_deviation = j.at("initial_deviation").get<double>();
    t.metadata = j.at("metadata").get<std::map<std::string, std::string>>();
    for (const auto& a : j.at("actions")) t.actions.push_back(json_matrix<Eigen::MatrixXd>(a));
    t.rewards = json_matrix<Eigen::MatrixXd>(j.at("rewards"));
    t.grad_queries = json_matrix<CounterMatrix>(j.at("grad_queries"));
    t.exchanges = json_matrix<CounterMatrix>(j.at("exchanges"));
    for (const auto& p : j.at("phases"))
      t.phases.push_back({p.at("block").get<int>(), p.at("phase").get<int>(),
                          json_vector(p.at("mean")), p.at("deviation").get<double>()});
    for (const auto& d : j.at("diagnostics"))
      t.diagnostics.push_back({d.at("round").get<int>(), d.at("step").get<double>(),
                               d.at("residual").get<double>(),
                               d.at("estimator_norm").get<double>(),
                               d.at("deviation").get<double>()});
    return t;
  } catch (const json::exception& e) {
    fail(ErrorKind::kParseError, std::string("malformed trace: ") + e.what());
  }
}

}  // namespace dsm
