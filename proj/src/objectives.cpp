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

#include "dsm/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "dsm/error.hpp"

namespace dsm {
namespace {

constexpr double kDomainTolerance = 1e-9;

}  // namespace

double facility_set_value(const std::vector<Eigen::VectorXd>& ratings,
                          const std::vector<int>& subset) {
  double total = 0.0;
  for (const auto& user : ratings) {
    double best = 0.0;
    for (int m : subset) {
      require(m >= 0 && m < user.size(), ErrorKind::kInvalidParameter,
              "item index " + std::to_string(m) + " out of range");
      best = std::max(best, user(m));
    }
    total += best;
  }
  return total;
}

FacilityLocationObjective::FacilityLocationObjective(RatingsBlock block)
    : block_(std::move(block)) {
  require(block_.dimension >= 1, ErrorKind::kInvalidParameter,
          "ratings dimension must be positive");
  require(!block_.users.empty(), ErrorKind::kInvalidParameter,
          "a ratings block needs at least one user");
  sorted_.reserve(block_.users.size());
  for (const auto& user : block_.users) {
    require(user.size() == block_.dimension, ErrorKind::kInvalidParameter,
            "user rating vector has wrong length");
    require(user.allFinite() && user.minCoeff() >= 0.0,
            ErrorKind::kInvalidParameter, "ratings must be finite and >= 0");
    std::vector<Entry> entries;
    for (int m = 0; m < block_.dimension; ++m)
      if (user(m) > 0.0) entries.push_back({m, user(m)});
    std::stable_sort(entries.begin(), entries.end(),
                     [](const Entry& a, const Entry& b) { return a.rating > b.rating; });
    sorted_.push_back(std::move(entries));
    // Per user: 0 <= d/dx_m <= r_m, and |d2/dx_m dx_l| <= min(r_m, r_l).
    gradient_bound_ += user.norm();
    smoothness_bound_ += user.lpNorm<1>();
  }
}

void FacilityLocationObjective::check_domain(const Eigen::VectorXd& x) const {
  require(x.size() == block_.dimension, ErrorKind::kInvalidParameter,
          "dimension mismatch: expected " + std::to_string(block_.dimension) +
              ", got " + std::to_string(x.size()));
  require(x.allFinite() && x.minCoeff() >= -kDomainTolerance &&
              x.maxCoeff() <= 1.0 + kDomainTolerance,
          ErrorKind::kInvalidParameter, "multilinear extension needs x in [0,1]^n");
}

double FacilityLocationObjective::value(const Eigen::VectorXd& x) const {
  check_domain(x);
  double total = 0.0;
  for (const auto& entries : sorted_) {
    double none_before = 1.0;
    for (const Entry& e : entries) {
      const double p = std::clamp(x(e.item), 0.0, 1.0);
      total += e.rating * p * none_before;
      none_before *= 1.0 - p;
    }
  }
  return total;
}

Eigen::VectorXd FacilityLocationObjective::gradient(const Eigen::VectorXd& x) const {
  check_domain(x);
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(block_.dimension);
  std::vector<double> prefix;
  for (const auto& entries : sorted_) {
    const std::size_t k = entries.size();
    prefix.assign(k, 1.0);
    for (std::size_t j = 1; j < k; ++j)
      prefix[j] = prefix[j - 1] * (1.0 - std::clamp(x(entries[j - 1].item), 0.0, 1.0));
    // tail = expected rating obtained from items ranked after position j,
    // given none of the items ranked at or before j was selected.
    double tail = 0.0;
    for (std::size_t j = k; j-- > 0;) {
      grad(entries[j].item) += prefix[j] * (entries[j].rating - tail);
      const double p = std::clamp(x(entries[j].item), 0.0, 1.0);
      tail = entries[j].rating * p + (1.0 - p) * tail;
    }
  }
  return grad;
}

double multilinear_value(const std::vector<Eigen::VectorXd>& ratings,
                         const Eigen::VectorXd& x) {
  return FacilityLocationObjective({static_cast<int>(x.size()), ratings}).value(x);
}

Eigen::VectorXd multilinear_gradient(const std::vector<Eigen::VectorXd>& ratings,
                                     const Eigen::VectorXd& x) {
  return FacilityLocationObjective({static_cast<int>(x.size()), ratings}).gradient(x);
}

QuadraticObjective::QuadraticObjective(Eigen::MatrixXd hessian,
                                       Eigen::VectorXd linear,
                                       Eigen::VectorXd upper)
    : hessian_(std::move(hessian)), linear_(std::move(linear)), upper_(std::move(upper)) {
  const Eigen::Index n = linear_.size();
  require(n >= 1 && hessian_.rows() == n && hessian_.cols() == n && upper_.size() == n,
          ErrorKind::kInvalidParameter, "quadratic objective shape mismatch");
  require(hessian_.allFinite() && linear_.allFinite() && upper_.allFinite(),
          ErrorKind::kInvalidParameter, "quadratic objective has non-finite data");
  require((hessian_ - hessian_.transpose()).cwiseAbs().maxCoeff() <= 1e-12,
          ErrorKind::kInvalidParameter, "Hessian must be symmetric");
  require(hessian_.maxCoeff() <= 0.0, ErrorKind::kAssumptionViolated,
          "Hessian entries must be <= 0 for DR-submodularity");
  require(upper_.minCoeff() > 0.0, ErrorKind::kInvalidParameter,
          "box caps must be positive");
  // The smallest gradient over the box is attained at x = upper.
  const Eigen::VectorXd low = linear_ + hessian_ * upper_;
  require(low.minCoeff() >= -1e-12, ErrorKind::kAssumptionViolated,
          "objective is not monotone on the box");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(hessian_, Eigen::EigenvaluesOnly);
  smoothness_ = solver.eigenvalues().cwiseAbs().maxCoeff();
}

QuadraticObjective QuadraticObjective::with_auto_linear(Eigen::MatrixXd hessian,
                                                        Eigen::VectorXd upper) {
  require(hessian.cols() == upper.size(), ErrorKind::kInvalidParameter,
          "quadratic objective shape mismatch");
  Eigen::VectorXd linear =
      (hessian.cwiseAbs() * upper).array() + kAutoMargin;
  return QuadraticObjective(std::move(hessian), std::move(linear), std::move(upper));
}

double QuadraticObjective::value(const Eigen::VectorXd& x) const {
  return linear_.dot(x) + 0.5 * x.dot(hessian_ * x);
}

Eigen::VectorXd QuadraticObjective::gradient(const Eigen::VectorXd& x) const {
  return linear_ + hessian_ * x;
}

Eigen::MatrixXd random_nonpositive_hessian(int dimension, double scale, Rng& rng) {
  Eigen::MatrixXd h(dimension, dimension);
  for (int i = 0; i < dimension; ++i)
    for (int j = i; j < dimension; ++j) {
      h(i, j) = -scale * uniform01(rng);
      h(j, i) = h(i, j);
    }
  return h;
}

ShiftedObjective::ShiftedObjective(ObjectivePtr base)
    : base_(std::move(base)),
      offset_(base_->value(Eigen::VectorXd::Zero(base_->dimension()))) {}

Eigen::VectorXd noisy_gradient(const Objective& f, const Eigen::VectorXd& x,
                               double sigma, Rng& rng) {
  Eigen::VectorXd g = f.gradient(x);
  if (sigma > 0.0) {
    std::normal_distribution<double> normal(0.0, 1.0);
    for (Eigen::Index i = 0; i < g.size(); ++i) g(i) += sigma * normal(rng);
  }
  return g;
}

GradientOracle::GradientOracle(double sigma, Rng rng) : sigma_(sigma), rng_(rng) {
  require(sigma >= 0.0 && std::isfinite(sigma), ErrorKind::kInvalidParameter,
          "noise level must be finite and >= 0");
}

Eigen::VectorXd GradientOracle::query(const Objective& f, const Eigen::VectorXd& x) {
  ++queries_;
  return noisy_gradient(f, x, sigma_, rng_);
}

ObjectiveStream::ObjectiveStream(int rounds, int nodes, std::vector<ObjectivePtr> cells,
                                 double sigma, std::string description)
    : rounds_(rounds), nodes_(nodes), dimension_(0), sigma_(sigma),
      description_(std::move(description)) {
  require(rounds >= 1 && nodes >= 1, ErrorKind::kInvalidParameter,
          "stream needs at least one round and one node");
  require(cells.size() == static_cast<std::size_t>(rounds) * nodes,
          ErrorKind::kInvalidParameter, "stream grid has the wrong number of cells");
  require(sigma >= 0.0 && std::isfinite(sigma), ErrorKind::kInvalidParameter,
          "noise level must be finite and >= 0");
  dimension_ = cells.front()->dimension();
  cells_.reserve(cells.size());
  for (auto& cell : cells) {
    require(cell != nullptr && cell->dimension() == dimension_,
            ErrorKind::kInvalidParameter, "stream cells must share one dimension");
    const double at_zero = cell->value(Eigen::VectorXd::Zero(dimension_));
    if (at_zero != 0.0) cell = std::make_shared<ShiftedObjective>(std::move(cell));
    smoothness_ = std::max(smoothness_, cell->smoothness_bound());
    gradient_bound_ = std::max(gradient_bound_, cell->gradient_bound());
    cells_.push_back(std::move(cell));
  }
}

ObjectiveStream ObjectiveStream::prefix(int rounds) const {
  require(rounds >= 1 && rounds <= rounds_, ErrorKind::kInvalidParameter,
          "prefix length out of range");
  std::vector<ObjectivePtr> cells(cells_.begin(),
                                  cells_.begin() + static_cast<std::ptrdiff_t>(rounds) * nodes_);
  return ObjectiveStream(rounds, nodes_, std::move(cells), sigma_, description_);
}

ObjectiveStream facility_stream(const std::vector<std::vector<RatingsBlock>>& blocks,
                                double sigma) {
  require(!blocks.empty() && !blocks.front().empty(), ErrorKind::kInvalidParameter,
          "facility stream needs at least one round and node");
  const int rounds = static_cast<int>(blocks.size());
  const int nodes = static_cast<int>(blocks.front().size());
  std::vector<ObjectivePtr> cells;
  cells.reserve(static_cast<std::size_t>(rounds) * nodes);
  for (const auto& round : blocks) {
    require(static_cast<int>(round.size()) == nodes, ErrorKind::kInvalidParameter,
            "every round needs one ratings block per node");
    for (const auto& block : round)
      cells.push_back(std::make_shared<FacilityLocationObjective>(block));
  }
  return ObjectiveStream(rounds, nodes, std::move(cells), sigma, "facility_location");
}

ObjectiveStream quadratic_stream(int rounds, int nodes, const Eigen::VectorXd& upper,
                                 double hessian_scale, double sigma,
                                 std::uint64_t seed) {
  require(rounds >= 1 && nodes >= 1, ErrorKind::kInvalidParameter,
          "stream needs at least one round and one node");
  std::vector<ObjectivePtr> cells;
  cells.reserve(static_cast<std::size_t>(rounds) * nodes);
  for (int t = 0; t < rounds; ++t)
    for (int i = 0; i < nodes; ++i) {
      Rng rng = make_stream(seed, StreamPurpose::kQuadraticData,
                            static_cast<std::uint64_t>(t) * nodes + i);
      cells.push_back(std::make_shared<QuadraticObjective>(
          QuadraticObjective::with_auto_linear(
              random_nonpositive_hessian(static_cast<int>(upper.size()), hessian_scale, rng),
              upper)));
    }
  return ObjectiveStream(rounds, nodes, std::move(cells), sigma, "quadratic");
}

}  // namespace dsm
