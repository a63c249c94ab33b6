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

#include "dsm/region.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "dsm/error.hpp"

namespace dsm {

BoxBudgetRegion::BoxBudgetRegion(Eigen::VectorXd upper, double budget)
    : upper_(std::move(upper)), budget_(budget) {
  require(upper_.size() >= 1, ErrorKind::kInvalidParameter,
          "region dimension must be positive");
  require(upper_.allFinite() && upper_.minCoeff() > 0.0,
          ErrorKind::kInvalidParameter, "coordinate caps must be positive");
  require(std::isfinite(budget_) && budget_ > 0.0, ErrorKind::kInvalidParameter,
          "budget must be positive");
  geometry_ = compute_geometry();
}

BoxBudgetRegion::BoxBudgetRegion(int dimension, double upper, double budget)
    : BoxBudgetRegion(
          Eigen::VectorXd::Constant(dimension > 0 ? dimension : 0, upper), budget) {}

bool BoxBudgetRegion::contains(const Eigen::VectorXd& x, double tol) const {
  require(x.size() == upper_.size(), ErrorKind::kInvalidParameter,
          "dimension mismatch: expected " + std::to_string(upper_.size()) +
              ", got " + std::to_string(x.size()));
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (!(x(i) >= -tol && x(i) <= upper_(i) + tol)) return false;
  }
  return x.sum() <= budget_ + tol;
}

Eigen::VectorXd BoxBudgetRegion::project(const Eigen::VectorXd& y) const {
  require(y.size() == upper_.size(), ErrorKind::kInvalidParameter,
          "dimension mismatch in projection");
  require(y.allFinite(), ErrorKind::kInvalidParameter,
          "projection input has non-finite entries");
  auto shifted = [&](double lambda) {
    return (y.array() - lambda).max(0.0).min(upper_.array()).matrix().eval();
  };
  Eigen::VectorXd x = shifted(0.0);
  if (x.sum() <= budget_) return x;

  // sum(x(lambda)) is continuous and nonincreasing; it is 0 at max(y).
  double lo = 0.0;
  double hi = y.maxCoeff();
  Eigen::VectorXd best = shifted(hi);
  for (int step = 0; step < kMaxBisectionSteps; ++step) {
    const double mid = 0.5 * (lo + hi);
    Eigen::VectorXd candidate = shifted(mid);
    const double total = candidate.sum();
    if (total > budget_) {
      lo = mid;
    } else {
      hi = mid;
      best = std::move(candidate);
      if (budget_ - total <= kBudgetTolerance) break;
    }
  }
  return best;
}

Eigen::VectorXd BoxBudgetRegion::lmo(const Eigen::VectorXd& d) const {
  require(d.size() == upper_.size(), ErrorKind::kInvalidParameter,
          "dimension mismatch in lmo");
  std::vector<int> order;
  for (int i = 0; i < d.size(); ++i)
    if (d(i) > 0.0) order.push_back(i);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return d(a) > d(b); });
  Eigen::VectorXd v = Eigen::VectorXd::Zero(d.size());
  double remaining = budget_;
  for (int i : order) {
    if (remaining <= 0.0) break;
    v(i) = std::min(upper_(i), remaining);
    remaining -= v(i);
  }
  return v;
}

std::vector<Eigen::VectorXd> BoxBudgetRegion::vertices() const {
  const int n = dimension();
  std::vector<Eigen::VectorXd> out;
  std::vector<char> full(n, 0);
  bool overflow = false;

  auto emit = [&](double used) {
    Eigen::VectorXd base = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i)
      if (full[i]) base(i) = upper_(i);
    out.push_back(base);
    const double slack = budget_ - used;
    if (slack <= 0.0) return;
    for (int j = 0; j < n; ++j) {
      if (!full[j] && slack < upper_(j)) {
        Eigen::VectorXd v = base;
        v(j) = slack;
        out.push_back(std::move(v));
      }
    }
  };

  // Enumerate sets of coordinates at their cap whose caps fit the budget.
  auto visit = [&](auto&& self, int index, double used) -> void {
    if (overflow) return;
    if (static_cast<long>(out.size()) > kMaxEnumeratedVertices) {
      overflow = true;
      return;
    }
    if (index == n) {
      emit(used);
      return;
    }
    self(self, index + 1, used);
    if (used + upper_(index) <= budget_) {
      full[index] = 1;
      self(self, index + 1, used + upper_(index));
      full[index] = 0;
    }
  };
  visit(visit, 0, 0.0);
  if (overflow || static_cast<long>(out.size()) > kMaxEnumeratedVertices) return {};
  return out;
}

RegionGeometry BoxBudgetRegion::compute_geometry() const {
  RegionGeometry g;
  // Greedy: spend the budget on the largest caps first.
  std::vector<int> order(dimension());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return upper_(a) > upper_(b); });
  double remaining = budget_;
  double squared = 0.0;
  for (int i : order) {
    if (remaining <= 0.0) break;
    const double take = std::min(upper_(i), remaining);
    squared += take * take;
    remaining -= take;
  }
  g.radius = std::sqrt(squared);

  const std::vector<Eigen::VectorXd> verts = vertices();
  if (verts.empty()) {
    g.diameter = std::sqrt(2.0) * g.radius;
    g.diameter_is_upper_bound = true;
    return g;
  }
  double radius_sq = 0.0;
  double diameter_sq = 0.0;
  for (std::size_t a = 0; a < verts.size(); ++a) {
    radius_sq = std::max(radius_sq, verts[a].squaredNorm());
    for (std::size_t b = a + 1; b < verts.size(); ++b)
      diameter_sq = std::max(diameter_sq, (verts[a] - verts[b]).squaredNorm());
  }
  g.radius = std::max(g.radius, std::sqrt(radius_sq));
  g.diameter = std::sqrt(diameter_sq);
  return g;
}

}  // namespace dsm
