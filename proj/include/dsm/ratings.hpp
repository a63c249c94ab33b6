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

// Ratings data: CSV ingestion (userId,movieId,rating[,timestamp]), synthetic
// generation and the per-node partition of each round's users.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dsm/objectives.hpp"

namespace dsm {

struct IngestReport {
  std::int64_t rows = 0;
  // Rows whose movieId falls outside [0, n).
  std::int64_t excluded_rows = 0;
  std::int64_t users_seen = 0;
  std::int64_t users_kept = 0;
  // Kept users with no rating among the first n movies (all-zero vectors).
  std::int64_t empty_users = 0;
};

struct RatingsData {
  int dimension = 0;
  // rounds[t] holds the b user vectors of round t, in user order.
  std::vector<std::vector<Eigen::VectorXd>> rounds;
  IngestReport report;
};

// Users are ordered by first appearance; the first T*b are kept and split
// into consecutive rounds of b. The movieId is the coordinate itself. A
// leading non-numeric line is treated as a header. A repeated (user, movie)
// pair keeps its last rating.
RatingsData ingest_ratings(std::istream& in, int movies, int rounds, int users_per_round);
RatingsData ingest_ratings(const std::string& path, int movies, int rounds,
                           int users_per_round);

// Contiguous slices of size |users| / N; slice i goes to node i.
std::vector<RatingsBlock> partition_users(const std::vector<Eigen::VectorXd>& users,
                                          int nodes);

// Each user rates each movie with probability `rate_prob` at a level drawn
// uniformly from `levels`; otherwise 0.
RatingsData synth_ratings(std::uint64_t seed, int rounds, int users_per_round, int movies,
                          const std::vector<double>& levels, double rate_prob = 0.1);

// The half-star scale 0.5, 1.0, ..., 5.0.
std::vector<double> half_star_levels();

// Facility-location stream over the partitioned rounds.
ObjectiveStream ratings_stream(const RatingsData& data, int nodes, double sigma);

}  // namespace dsm
