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

// Convex constraint sets for the decision variable.

#pragma once

#include <memory>
#include <vector>

#include <Eigen/Dense>

namespace dsm {

struct RegionGeometry {
  double radius = 0.0;    // max_{x in K} ||x||
  double diameter = 0.0;  // max_{x,y in K} ||x - y||
  // True when the diameter is the sqrt(2) * radius bound rather than the
  // exact value (too many extreme points to enumerate).
  bool diameter_is_upper_bound = false;
};

// Interface the algorithms consume. Every region contains the origin.
class ConvexRegion {
 public:
  virtual ~ConvexRegion() = default;

  virtual int dimension() const = 0;
  virtual bool contains(const Eigen::VectorXd& x, double tol) const = 0;
  // Euclidean projection.
  virtual Eigen::VectorXd project(const Eigen::VectorXd& y) const = 0;
  // A maximizer of <d, v> over the region.
  virtual Eigen::VectorXd lmo(const Eigen::VectorXd& d) const = 0;
  virtual RegionGeometry geometry() const = 0;
};

// {x : 0 <= x <= upper, sum(x) <= budget}.
class BoxBudgetRegion final : public ConvexRegion {
 public:
  static constexpr double kBudgetTolerance = 1e-10;
  static constexpr int kMaxBisectionSteps = 200;
  static constexpr long kMaxEnumeratedVertices = 10000;

  BoxBudgetRegion(Eigen::VectorXd upper, double budget);
  BoxBudgetRegion(int dimension, double upper, double budget);

  int dimension() const override { return static_cast<int>(upper_.size()); }
  const Eigen::VectorXd& upper() const { return upper_; }
  double budget() const { return budget_; }

  bool contains(const Eigen::VectorXd& x, double tol) const override;
  // Clamp to the box; if the budget is exceeded, bisect on the multiplier
  // lambda of x(lambda) = clamp(y - lambda, 0, upper).
  Eigen::VectorXd project(const Eigen::VectorXd& y) const override;
  // Fill coordinates with positive d in descending order (ties by index)
  // until the budget runs out.
  Eigen::VectorXd lmo(const Eigen::VectorXd& d) const override;
  RegionGeometry geometry() const override { return geometry_; }

  // Extreme points, or an empty vector when there are more than
  // kMaxEnumeratedVertices of them.
  std::vector<Eigen::VectorXd> vertices() const;

 private:
  RegionGeometry compute_geometry() const;

  Eigen::VectorXd upper_;
  double budget_;
  RegionGeometry geometry_;
};

}  // namespace dsm
