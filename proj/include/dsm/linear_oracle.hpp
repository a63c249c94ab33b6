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

// No-regret online linear maximization over a convex region by projected
// online gradient ascent with an adaptive step
//   eta_t = c / (max_{s<=t} ||d_s|| * sqrt(t)).
// With c = diam(K) the regret against the best fixed point after t rounds is
// at most 1.5 * diam(K) * max||d|| * sqrt(t).

#pragma once

#include <cstdint>
#include <memory>

#include <Eigen/Dense>

#include "dsm/region.hpp"

namespace dsm {

class OnlineLinearOracle {
 public:
  static constexpr double kNormFloor = 1e-9;

  // scale <= 0 selects the default c = diam(K).
  explicit OnlineLinearOracle(std::shared_ptr<const ConvexRegion> region,
                              double scale = 0.0);

  // Current decision; starts at the origin.
  const Eigen::VectorXd& predict() const { return point_; }
  // Receive the linear payoff vector d for the last prediction.
  void feedback(const Eigen::VectorXd& payoff);

  std::int64_t rounds() const { return rounds_; }
  double scale() const { return scale_; }
  double payoff_norm_bound() const { return norm_bound_; }

  friend bool operator==(const OnlineLinearOracle& a, const OnlineLinearOracle& b) {
    return a.scale_ == b.scale_ && a.rounds_ == b.rounds_ &&
           a.norm_bound_ == b.norm_bound_ && a.point_ == b.point_;
  }

 private:
  std::shared_ptr<const ConvexRegion> region_;
  double scale_;
  Eigen::VectorXd point_;
  std::int64_t rounds_ = 0;
  double norm_bound_ = kNormFloor;
};

}  // namespace dsm
