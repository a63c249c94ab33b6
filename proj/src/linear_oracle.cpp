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

#include "dsm/linear_oracle.hpp"

#include <algorithm>
#include <cmath>

#include "dsm/error.hpp"

namespace dsm {

OnlineLinearOracle::OnlineLinearOracle(std::shared_ptr<const ConvexRegion> region,
                                       double scale)
    : region_(std::move(region)), scale_(scale) {
  require(region_ != nullptr, ErrorKind::kInvalidParameter, "oracle needs a region");
  if (scale_ <= 0.0) scale_ = region_->geometry().diameter;
  require(std::isfinite(scale_) && scale_ > 0.0, ErrorKind::kInvalidParameter,
          "oracle step scale must be positive");
  point_ = Eigen::VectorXd::Zero(region_->dimension());
}

void OnlineLinearOracle::feedback(const Eigen::VectorXd& payoff) {
  require(payoff.size() == point_.size(), ErrorKind::kInvalidParameter,
          "payoff dimension mismatch");
  require(payoff.allFinite(), ErrorKind::kInvalidParameter, "payoff is not finite");
  ++rounds_;
  norm_bound_ = std::max(norm_bound_, payoff.norm());
  const double step = scale_ / (norm_bound_ * std::sqrt(static_cast<double>(rounds_)));
  point_ = region_->project(point_ + step * payoff);
}

}  // namespace dsm
