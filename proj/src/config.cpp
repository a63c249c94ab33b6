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

#include "dsm/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <istream>
#include <sstream>
#include <string_view>

#include "dsm/algorithms.hpp"
#include "dsm/error.hpp"

namespace dsm {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::string strip_comment(const std::string& line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

std::string unquote(const std::string& item, int line) {
  if (item.size() >= 2 && item.front() == '"' && item.back() == '"')
    return item.substr(1, item.size() - 2);
  if (item.find('"') != std::string::npos)
    fail(ErrorKind::kParseError, "config line " + std::to_string(line) + ": stray quote");
  return item;
}

std::vector<std::string> parse_value(const std::string& raw, int line) {
  if (raw.empty())
    fail(ErrorKind::kParseError, "config line " + std::to_string(line) + ": missing value");
  if (raw.front() != '[') return {unquote(raw, line)};
  if (raw.back() != ']')
    fail(ErrorKind::kParseError, "config line " + std::to_string(line) + ": unterminated list");
  std::vector<std::string> items;
  std::stringstream body(raw.substr(1, raw.size() - 2));
  std::string item;
  while (std::getline(body, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(unquote(item, line));
  }
  if (items.empty())
    fail(ErrorKind::kParseError, "config line " + std::to_string(line) + ": empty list");
  return items;
}

template <typename T>
T to_number(const std::string& key, const std::string& text) {
  T value{};
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size())
    fail(ErrorKind::kParseError, "config key " + key + ": '" + text + "' is not a number");
  return value;
}

std::string number_text(double v) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, v);
  return std::string(buffer, end);
}

template <typename T, typename F>
std::string join(const std::vector<T>& items, F&& text) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ",";
    out += text(items[i]);
  }
  return out;
}

using Setter = std::function<void(ExperimentConfig&, const std::string&,
                                  const std::vector<std::string>&)>;

const std::string& scalar(const std::string& key, const std::vector<std::string>& v) {
  if (v.size() != 1)
    fail(ErrorKind::kParseError, "config key " + key + " expects a single value");
  return v.front();
}

Setter int_field(int ExperimentConfig::*field) {
  return [field](ExperimentConfig& c, const std::string& k, const std::vector<std::string>& v) {
    c.*field = to_number<int>(k, scalar(k, v));
  };
}

Setter double_field(double ExperimentConfig::*field) {
  return [field](ExperimentConfig& c, const std::string& k, const std::vector<std::string>& v) {
    c.*field = to_number<double>(k, scalar(k, v));
  };
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"network.topology",
       [](ExperimentConfig& c, const std::string&, const std::vector<std::string>& v) {
         c.topologies.clear();
         for (const auto& name : v) c.topologies.push_back(parse_topology(name));
       }},
      {"network.nodes", int_field(&ExperimentConfig::nodes)},
      {"network.edge_prob", double_field(&ExperimentConfig::edge_prob)},
      {"region.n", int_field(&ExperimentConfig::dimension)},
      {"region.upper", double_field(&ExperimentConfig::upper)},
      {"region.budget", double_field(&ExperimentConfig::budget)},
      {"data.source",
       [](ExperimentConfig& c, const std::string& k, const std::vector<std::string>& v) {
         const std::string& name = scalar(k, v);
         if (name == "synthetic") c.source = DataSource::kSynthetic;
         else if (name == "ratings") c.source = DataSource::kRatings;
         else if (name == "quadratic") c.source = DataSource::kQuadratic;
         else fail(ErrorKind::kInvalidParameter, "unknown data source '" + name + "'");
       }},
      {"data.path",
       [](ExperimentConfig& c, const std::string& k, const std::vector<std::string>& v) {
         c.ratings_path = scalar(k, v);
       }},
      {"data.users_per_round", int_field(&ExperimentConfig::users_per_round)},
      {"data.seed",
       [](ExperimentConfig& c, const std::string& k, const std::vector<std::string>& v) {
         c.data_seed = to_number<std::uint64_t>(k, scalar(k, v));
       }},
      {"data.rating_prob", double_field(&ExperimentConfig::rating_prob)},
      {"data.hessian_scale", double_field(&ExperimentConfig::hessian_scale)},
      {"run.rounds", int_field(&ExperimentConfig::rounds)},
      {"run.algorithms",
       [](ExperimentConfig& c, const std::string&, const std::vector<std::string>& v) {
         c.algorithms.clear();
         for (const auto& name : v) c.algorithms.push_back(parse_algorithm(name));
       }},
      {"run.seeds",
       [](ExperimentConfig& c, const std::string& k, const std::vector<std::string>& v) {
         c.seeds.clear();
         for (const auto& s : v) c.seeds.push_back(to_number<std::uint64_t>(k, s));
       }},
      {"run.sigma", double_field(&ExperimentConfig::sigma)},
      {"run.out",
       [](ExperimentConfig& c, const std::string& k, const std::vector<std::string>& v) {
         c.out_dir = scalar(k, v);
       }},
      {"mono_dmfw.K", int_field(&ExperimentConfig::mono_phases)},
      {"mono_dmfw.Q", int_field(&ExperimentConfig::mono_blocks)},
      {"mono_dmfw.gamma", double_field(&ExperimentConfig::mono_gamma)},
      {"dobga.grad_samples", int_field(&ExperimentConfig::dobga_grad_samples)},
      {"dmfw.K", int_field(&ExperimentConfig::dmfw_phases)},
      {"eval.fw_steps", int_field(&ExperimentConfig::fw_steps)},
  };
  return table;
}

}  // namespace

const char* to_string(DataSource source) {
  switch (source) {
    case DataSource::kSynthetic: return "synthetic";
    case DataSource::kRatings: return "ratings";
    case DataSource::kQuadratic: return "quadratic";
  }
  return "unknown";
}

double ExperimentConfig::resolved_edge_prob() const {
  if (edge_prob > 0.0) return edge_prob;
  if (nodes <= 1) return 1.0;
  return std::min(1.0, 3.0 / (nodes - 1));
}

std::pair<int, int> ExperimentConfig::mono_blocking() const {
  if (mono_phases == 0 && mono_blocks == 0) return suggest_blocking(rounds);
  if (mono_blocks == 0 && mono_phases > 0 && rounds % mono_phases == 0)
    return {mono_phases, rounds / mono_phases};
  if (mono_phases == 0 && mono_blocks > 0 && rounds % mono_blocks == 0)
    return {rounds / mono_blocks, mono_blocks};
  return {mono_phases, mono_blocks};
}

void ExperimentConfig::validate() const {
  const auto check = [](bool ok, const std::string& what) {
    require(ok, ErrorKind::kInvalidParameter, "config: " + what);
  };
  check(nodes >= 1, "network.nodes must be >= 1");
  check(!topologies.empty(), "network.topology is empty");
  check(edge_prob <= 1.0, "network.edge_prob must be <= 1");
  check(dimension >= 1, "region.n must be >= 1");
  check(upper > 0.0 && budget > 0.0, "region.upper and region.budget must be positive");
  check(rounds >= 1, "run.rounds must be >= 1");
  check(!algorithms.empty(), "run.algorithms is empty");
  check(!seeds.empty(), "run.seeds is empty");
  check(sigma >= 0.0, "run.sigma must be >= 0");
  check(fw_steps >= 10, "eval.fw_steps must be >= 10");
  if (source != DataSource::kQuadratic) {
    check(users_per_round >= 1, "data.users_per_round must be >= 1");
    check(users_per_round % nodes == 0,
          "data.users_per_round (" + std::to_string(users_per_round) +
              ") must be divisible by network.nodes (" + std::to_string(nodes) + ")");
    check(upper <= 1.0, "facility-location data needs region.upper <= 1");
  }
  check(source != DataSource::kRatings || !ratings_path.empty(),
        "data.path is required for data.source = ratings");
  for (AlgorithmKind a : algorithms) {
    if (a == AlgorithmKind::kMonoDmfw) {
      const auto [k, q] = mono_blocking();
      check(k >= 1 && q >= 1 && static_cast<long>(k) * q == rounds,
            "Mono-DMFW needs run.rounds = mono_dmfw.K * mono_dmfw.Q");
    }
    if (a == AlgorithmKind::kDobga) check(dobga_grad_samples >= 1, "dobga.grad_samples >= 1");
    if (a == AlgorithmKind::kDmfw) check(dmfw_phases >= 1, "dmfw.K must be >= 1");
  }
}

std::map<std::string, std::string> ExperimentConfig::echo() const {
  std::map<std::string, std::string> out;
  out["network.topology"] = join(topologies, [](TopologyKind t) { return std::string(to_string(t)); });
  out["network.nodes"] = std::to_string(nodes);
  out["network.edge_prob"] = number_text(resolved_edge_prob());
  out["region.n"] = std::to_string(dimension);
  out["region.upper"] = number_text(upper);
  out["region.budget"] = number_text(budget);
  out["data.source"] = to_string(source);
  out["data.path"] = ratings_path;
  out["data.users_per_round"] = std::to_string(users_per_round);
  out["data.seed"] = std::to_string(data_seed);
  out["data.rating_prob"] = number_text(rating_prob);
  out["data.hessian_scale"] = number_text(hessian_scale);
  out["data.user_order"] = "first appearance in file";
  out["data.empty_users"] = "kept as all-zero vectors";
  out["run.rounds"] = std::to_string(rounds);
  out["run.algorithms"] = join(algorithms, [](AlgorithmKind a) { return std::string(to_string(a)); });
  out["run.seeds"] = join(seeds, [](std::uint64_t s) { return std::to_string(s); });
  out["run.sigma"] = number_text(sigma);
  out["run.out"] = out_dir;
  out["mono_dmfw.K"] = std::to_string(mono_phases);
  out["mono_dmfw.Q"] = std::to_string(mono_blocks);
  out["mono_dmfw.gamma"] = number_text(mono_gamma);
  out["dobga.grad_samples"] = std::to_string(dobga_grad_samples);
  out["dmfw.K"] = std::to_string(dmfw_phases);
  out["eval.fw_steps"] = std::to_string(fw_steps);
  return out;
}

ExperimentConfig desk_preset() { return ExperimentConfig{}; }

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig config = desk_preset();
  std::string section;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string text = trim(strip_comment(line));
    if (text.empty()) continue;
    if (text.front() == '[') {
      if (text.back() != ']' || text.size() < 3)
        fail(ErrorKind::kParseError, "config line " + std::to_string(number) + ": bad section");
      section = trim(text.substr(1, text.size() - 2));
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos)
      fail(ErrorKind::kParseError, "config line " + std::to_string(number) + ": expected key = value");
    const std::string key = (section.empty() ? "" : section + ".") + trim(text.substr(0, eq));
    const auto setter = setters().find(key);
    if (setter == setters().end())
      fail(ErrorKind::kInvalidParameter, "config line " + std::to_string(number) +
                                             ": unknown key '" + key + "'");
    setter->second(config, key, parse_value(trim(text.substr(eq + 1)), number));
  }
  config.validate();
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::kInvalidParameter, "cannot open config " + path);
  return parse_config(in);
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    item = trim(item);
    if (!item.empty()) seeds.push_back(to_number<std::uint64_t>("seeds", item));
  }
  require(!seeds.empty(), ErrorKind::kInvalidParameter, "seed list is empty");
  return seeds;
}

}  // namespace dsm
