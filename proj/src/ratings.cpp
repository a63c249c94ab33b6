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

#include "dsm/ratings.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <string_view>
#include <unordered_map>

#include "dsm/error.hpp"
#include "dsm/rng.hpp"

namespace dsm {
namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

template <typename T>
bool parse_number(std::string_view text, T& out) {
  text = trim(text);
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && end == text.data() + text.size();
}

}  // namespace

RatingsData ingest_ratings(std::istream& in, int movies, int rounds, int users_per_round) {
  require(movies >= 1 && rounds >= 1 && users_per_round >= 1, ErrorKind::kInvalidParameter,
          "n, T and b must be positive");
  const std::int64_t wanted = static_cast<std::int64_t>(rounds) * users_per_round;

  RatingsData data;
  data.dimension = movies;
  std::unordered_map<std::int64_t, std::int64_t> slot;  // userId -> first-appearance index
  std::vector<std::map<int, double>> kept;              // for the first T*b users

  std::string line;
  std::int64_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string_view text = trim(line);
    if (text.empty()) continue;
    const auto fields = split_fields(text);
    std::int64_t user = 0;
    std::int64_t movie = 0;
    double rating = 0.0;
    const bool ok = fields.size() >= 3 && parse_number(fields[0], user) &&
                    parse_number(fields[1], movie) && parse_number(fields[2], rating);
    if (!ok) {
      if (line_number == 1 && data.report.rows == 0) continue;  // header
      fail(ErrorKind::kParseError,
           "ratings line " + std::to_string(line_number) + ": expected userId,movieId,rating");
    }
    if (!std::isfinite(rating) || rating < 0.0) {
      fail(ErrorKind::kParseError,
           "ratings line " + std::to_string(line_number) + ": rating must be >= 0");
    }
    ++data.report.rows;
    const auto [it, inserted] = slot.emplace(user, static_cast<std::int64_t>(slot.size()));
    if (inserted && it->second < wanted) kept.emplace_back();
    if (movie < 0 || movie >= movies) {
      ++data.report.excluded_rows;
      continue;
    }
    if (it->second < wanted) kept[static_cast<std::size_t>(it->second)][static_cast<int>(movie)] = rating;
  }
  data.report.users_seen = static_cast<std::int64_t>(slot.size());
  if (data.report.users_seen < wanted) {
    fail(ErrorKind::kDataInsufficient,
         "ratings provide " + std::to_string(data.report.users_seen) + " users, need T*b = " +
             std::to_string(wanted));
  }
  data.report.users_kept = wanted;
  data.rounds.assign(static_cast<std::size_t>(rounds), {});
  for (std::int64_t u = 0; u < wanted; ++u) {
    Eigen::VectorXd r = Eigen::VectorXd::Zero(movies);
    for (const auto& [movie, rating] : kept[static_cast<std::size_t>(u)]) r(movie) = rating;
    if (kept[static_cast<std::size_t>(u)].empty()) ++data.report.empty_users;
    data.rounds[static_cast<std::size_t>(u / users_per_round)].push_back(std::move(r));
  }
  return data;
}

RatingsData ingest_ratings(const std::string& path, int movies, int rounds,
                           int users_per_round) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::kParseError, "cannot open ratings file " + path);
  return ingest_ratings(in, movies, rounds, users_per_round);
}

std::vector<RatingsBlock> partition_users(const std::vector<Eigen::VectorXd>& users,
                                          int nodes) {
  require(nodes >= 1, ErrorKind::kInvalidParameter, "need at least one node");
  require(!users.empty() && users.size() % static_cast<std::size_t>(nodes) == 0,
          ErrorKind::kInvalidParameter,
          "users per round (" + std::to_string(users.size()) +
              ") must be a positive multiple of N = " + std::to_string(nodes));
  const std::size_t share = users.size() / static_cast<std::size_t>(nodes);
  std::vector<RatingsBlock> blocks(static_cast<std::size_t>(nodes));
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    blocks[i].dimension = static_cast<int>(users.front().size());
    blocks[i].users.assign(users.begin() + static_cast<std::ptrdiff_t>(i * share),
                           users.begin() + static_cast<std::ptrdiff_t>((i + 1) * share));
  }
  return blocks;
}

std::vector<double> half_star_levels() {
  std::vector<double> levels;
  for (int k = 1; k <= 10; ++k) levels.push_back(0.5 * k);
  return levels;
}

RatingsData synth_ratings(std::uint64_t seed, int rounds, int users_per_round, int movies,
                          const std::vector<double>& levels, double rate_prob) {
  require(rounds >= 1 && users_per_round >= 1 && movies >= 1, ErrorKind::kInvalidParameter,
          "T, b and n must be positive");
  require(rate_prob >= 0.0 && rate_prob <= 1.0, ErrorKind::kInvalidParameter,
          "rating probability must lie in [0, 1]");
  require(!levels.empty(), ErrorKind::kInvalidParameter, "rating levels are empty");
  for (double level : levels) {
    const double doubled = 2.0 * level;
    require(doubled >= 1.0 && doubled <= 10.0 && doubled == std::round(doubled),
            ErrorKind::kInvalidParameter, "rating levels must come from {0.5, 1.0, ..., 5.0}");
  }
  Rng rng = make_stream(seed, StreamPurpose::kSyntheticData, 0);
  RatingsData data;
  data.dimension = movies;
  data.rounds.resize(static_cast<std::size_t>(rounds));
  for (auto& round : data.rounds) {
    for (int u = 0; u < users_per_round; ++u) {
      Eigen::VectorXd r = Eigen::VectorXd::Zero(movies);
      for (int m = 0; m < movies; ++m) {
        if (uniform01(rng) >= rate_prob) continue;
        const auto k = static_cast<std::size_t>(uniform01(rng) * levels.size());
        r(m) = levels[std::min(k, levels.size() - 1)];
      }
      if (r.isZero()) ++data.report.empty_users;
      round.push_back(std::move(r));
    }
  }
  data.report.users_seen = data.report.users_kept =
      static_cast<std::int64_t>(rounds) * users_per_round;
  return data;
}

ObjectiveStream ratings_stream(const RatingsData& data, int nodes, double sigma) {
  std::vector<std::vector<RatingsBlock>> blocks;
  blocks.reserve(data.rounds.size());
  for (const auto& users : data.rounds) blocks.push_back(partition_users(users, nodes));
  return facility_stream(blocks, sigma);
}

}  // namespace dsm
