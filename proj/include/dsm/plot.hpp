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

// Ratio-curve SVG rendering from per-cell CSV files.

#pragma once

#include <string>
#include <vector>

namespace dsm {

// Column header shared by every per-cell CSV.
inline constexpr const char* kCsvHeader =
    "round,node,algorithm,topology,seed,reward,cum_regret,regret_ratio,grad_queries,exchanges";

// One polyline per (algorithm, topology): x = round, y = mean across seeds of
// max_j R(t, j) / t. Output is a deterministic function of the inputs.
// Throws invalid-parameter on an empty list or a schema mismatch.
std::string render_ratio_svg(const std::vector<std::string>& csv_paths,
                             const std::string& title);

void emit_plots(const std::vector<std::string>& csv_paths, const std::string& out_path,
                const std::string& title = "(1-1/e)-regret / t");

}  // namespace dsm
