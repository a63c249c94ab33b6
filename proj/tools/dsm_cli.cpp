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

// Command-line front end:
//   dsm run    --config <path> [--out <dir>] [--seeds s1,s2,...]
//   dsm ingest --ratings <csv> --n <int> --t <int> --b <int> [--check]
//   dsm plot   --in <glob> --out <svg>
//   dsm probe  --trace <path>
// Exit codes: 0 success, 1 configuration or input error, 2 audit or probe
// failure.

#include <fnmatch.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dsm/config.hpp"
#include "dsm/error.hpp"
#include "dsm/evaluation.hpp"
#include "dsm/experiment.hpp"
#include "dsm/plot.hpp"
#include "dsm/ratings.hpp"
#include "dsm/trace.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitAudit = 2;

namespace fs = std::filesystem;

std::vector<std::string> expand_glob(const std::string& pattern) {
  const fs::path p(pattern);
  const fs::path dir = p.has_parent_path() ? p.parent_path() : fs::path(".");
  const std::string name = p.filename().string();
  std::vector<std::string> matches;
  if (!fs::is_directory(dir)) return matches;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    if (fnmatch(name.c_str(), entry.path().filename().c_str(), 0) == 0)
      matches.push_back(entry.path().string());
  }
  std::sort(matches.begin(), matches.end());
  return matches;
}

int cmd_run(const std::string& config_path, const std::string& out_dir,
            const std::string& seeds) {
  dsm::ExperimentConfig config = dsm::load_config(config_path);
  if (!out_dir.empty()) config.out_dir = out_dir;
  if (!seeds.empty()) config.seeds = dsm::parse_seed_list(seeds);
  if (config.out_dir.empty()) config.out_dir = "out";
  const dsm::ExperimentResult result = dsm::run_experiment(config);
  for (const auto& cell : result.cells) {
    if (cell.ok) {
      std::printf("%-36s ok      final_ratio=%.6g  wall=%.3fs  audit=(%g,%g)\n",
                  cell.tag.c_str(), cell.final_ratio, cell.wall_seconds,
                  cell.audit.grads_per_round, cell.audit.exchanges_per_round);
    } else {
      std::printf("%-36s FAILED  [%s] %s\n", cell.tag.c_str(), std::string(dsm::to_string(cell.error_kind)).c_str(),
                  cell.error.c_str());
    }
  }
  for (const auto& plot : result.plots) std::printf("plot: %s\n", plot.c_str());
  return result.exit_code();
}

int cmd_ingest(const std::string& path, int n, int t, int b, bool check) {
  const dsm::RatingsData data = dsm::ingest_ratings(path, n, t, b);
  const auto& r = data.report;
  std::printf("rows=%lld excluded_rows=%lld users_seen=%lld users_kept=%lld empty_users=%lld\n",
              static_cast<long long>(r.rows), static_cast<long long>(r.excluded_rows),
              static_cast<long long>(r.users_seen), static_cast<long long>(r.users_kept),
              static_cast<long long>(r.empty_users));
  std::printf("rounds=%zu users_per_round=%d movies=%d\n", data.rounds.size(), b, n);
  if (check) {
    std::size_t vectors = 0;
    for (const auto& round : data.rounds) vectors += round.size();
    if (vectors != static_cast<std::size_t>(t) * b) {
      std::printf("check: FAIL (%zu rating vectors, expected %d)\n", vectors, t * b);
      return kExitConfig;
    }
    std::printf("check: ok (%zu rating vectors)\n", vectors);
  }
  return kExitOk;
}

int cmd_plot(const std::string& pattern, const std::string& out) {
  const auto paths = expand_glob(pattern);
  dsm::emit_plots(paths, out);
  std::printf("wrote %s from %zu CSV file(s)\n", out.c_str(), paths.size());
  return kExitOk;
}

int cmd_probe(const std::string& path) {
  std::ifstream in(path);
  dsm::require(in.good(), dsm::ErrorKind::kInvalidParameter, "cannot open trace " + path);
  const dsm::Trace trace = dsm::read_trace_json(in);
  int code = kExitOk;
  std::printf("algorithm=%s N=%d T=%d beta=%.6g radius=%.6g\n", dsm::to_string(trace.algorithm),
              trace.nodes, trace.rounds, trace.beta, trace.radius);
  for (const auto& row : dsm::probe_report(trace)) {
    std::printf("%-28s %s  observed=%.6g bound=%.6g margin=%.3g checks=%d\n", row.name.c_str(),
                row.pass ? "pass" : "FAIL", row.observed, row.bound, row.margin, row.checks);
    if (!row.pass) code = kExitAudit;
  }
  try {
    const dsm::CounterAudit audit = dsm::audit_counters(trace, trace.algorithm);
    std::printf("%-28s pass  per-round=(%g, %g)\n", "counter_audit", audit.grads_per_round,
                audit.exchanges_per_round);
  } catch (const dsm::Error& e) {
    if (e.kind() != dsm::ErrorKind::kAuditFailure) throw;
    std::printf("%-28s FAIL  %s\n", "counter_audit", e.what());
    code = kExitAudit;
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decentralized online DR-submodular maximization simulator"};
  app.require_subcommand(1);

  std::string config_path, out_dir, seeds;
  auto* run = app.add_subcommand("run", "Run an experiment from a config file");
  run->add_option("--config", config_path, "Config file")->required();
  run->add_option("--out", out_dir, "Output directory (overrides run.out)");
  run->add_option("--seeds", seeds, "Comma-separated seeds (overrides run.seeds)");

  std::string ratings;
  int n = 0, t = 0, b = 0;
  bool check = false;
  auto* ingest = app.add_subcommand("ingest", "Ingest a ratings CSV and report");
  ingest->add_option("--ratings", ratings, "userId,movieId,rating CSV")->required();
  ingest->add_option("--n", n, "Number of movies")->required();
  ingest->add_option("--t", t, "Rounds")->required();
  ingest->add_option("--b", b, "Users per round")->required();
  ingest->add_flag("--check", check, "Verify that exactly T*b rating vectors were produced");

  std::string pattern, svg;
  auto* plot = app.add_subcommand("plot", "Render ratio curves from run CSVs");
  plot->add_option("--in", pattern, "Glob of run CSV files")->required();
  plot->add_option("--out", svg, "Output SVG")->required();

  std::string trace_path;
  auto* probe = app.add_subcommand("probe", "Check bound probes and counters of a trace");
  probe->add_option("--trace", trace_path, "trace_<tag>.json")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) return cmd_run(config_path, out_dir, seeds);
    if (*ingest) return cmd_ingest(ratings, n, t, b, check);
    if (*plot) return cmd_plot(pattern, svg);
    if (*probe) return cmd_probe(trace_path);
  } catch (const dsm::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.kind() == dsm::ErrorKind::kAuditFailure ? kExitAudit : kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  }
  return kExitConfig;
}
