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

// Shared helpers for the unit and acceptance tests: independent brute-force
// references and small fixtures.

#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "dsm/error.hpp"
#include "dsm/objectives.hpp"
#include "dsm/region.hpp"
#include "dsm/rng.hpp"

namespace dsm::testing {

// The kind of the dsm::Error thrown by `action`, or nothing.
inline std::optional<ErrorKind> error_kind_of(const std::function<void()>& action) {
  try {
    action();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

inline Eigen::VectorXd random_vector(int n, double lo, double hi, Rng& rng) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = lo + (hi - lo) * uniform01(rng);
  return v;
}

// A point of {0 <= x <= u, sum x <= b}: uniform in the box, then scaled
// toward the origin when the budget is exceeded.
inline Eigen::VectorXd random_member(const BoxBudgetRegion& region, Rng& rng) {
  Eigen::VectorXd x(region.dimension());
  for (int i = 0; i < x.size(); ++i) x(i) = region.upper()(i) * uniform01(rng);
  const double total = x.sum();
  if (total > region.budget()) x *= region.budget() / total;
  return x;
}

// Facility value via explicit expectation over all 2^n subsets.
inline double enumerated_multilinear(const std::vector<Eigen::VectorXd>& ratings,
                                     const Eigen::VectorXd& x) {
  const int n = static_cast<int>(x.size());
  double total = 0.0;
  for (long mask = 0; mask < (1L << n); ++mask) {
    double p = 1.0;
    std::vector<int> subset;
    for (int m = 0; m < n; ++m) {
      if (mask & (1L << m)) {
        p *= x(m);
        subset.push_back(m);
      } else {
        p *= 1.0 - x(m);
      }
    }
    if (p == 0.0) continue;
    total += p * facility_set_value(ratings, subset);
  }
  return total;
}

// d/dx_m of the multilinear extension: E[F(S + m) - F(S - m)] over the other
// coordinates, enumerated.
inline Eigen::VectorXd enumerated_multilinear_gradient(
    const std::vector<Eigen::VectorXd>& ratings, const Eigen::VectorXd& x) {
  const int n = static_cast<int>(x.size());
  Eigen::VectorXd g = Eigen::VectorXd::Zero(n);
  for (int m = 0; m < n; ++m) {
    for (long mask = 0; mask < (1L << n); ++mask) {
      if (mask & (1L << m)) continue;
      double p = 1.0;
      std::vector<int> without;
      for (int l = 0; l < n; ++l) {
        if (l == m) continue;
        if (mask & (1L << l)) {
          p *= x(l);
          without.push_back(l);
        } else {
          p *= 1.0 - x(l);
        }
      }
      if (p == 0.0) continue;
      std::vector<int> with = without;
      with.push_back(m);
      g(m) += p * (facility_set_value(ratings, with) - facility_set_value(ratings, without));
    }
  }
  return g;
}

inline std::vector<Eigen::VectorXd> random_ratings(int users, int n, double density, Rng& rng) {
  std::vector<Eigen::VectorXd> ratings;
  for (int u = 0; u < users; ++u) {
    Eigen::VectorXd r = Eigen::VectorXd::Zero(n);
    for (int m = 0; m < n; ++m)
      if (uniform01(rng) < density) r(m) = 0.5 * (1 + static_cast<int>(10 * uniform01(rng)));
    ratings.push_back(r);
  }
  return ratings;
}

// f(x) = <h, x> on [0, u]^n, h >= 0.
inline ObjectivePtr linear_objective(const Eigen::VectorXd& h, double upper = 1.0) {
  const int n = static_cast<int>(h.size());
  return std::make_shared<QuadraticObjective>(Eigen::MatrixXd::Zero(n, n), h,
                                              Eigen::VectorXd::Constant(n, upper));
}

// The same objective in every (round, node) cell.
inline ObjectiveStream constant_stream(int rounds, int nodes, const ObjectivePtr& f,
                                       double sigma) {
  std::vector<ObjectivePtr> cells(static_cast<std::size_t>(rounds) * nodes, f);
  return ObjectiveStream(rounds, nodes, std::move(cells), sigma, "constant");
}

}  // namespace dsm::testing
