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

// Monotone continuous DR-submodular reward functions and gradient oracles.

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dsm/rng.hpp"

namespace dsm {

class Objective {
 public:
  virtual ~Objective() = default;

  virtual int dimension() const = 0;
  virtual double value(const Eigen::VectorXd& x) const = 0;
  virtual Eigen::VectorXd gradient(const Eigen::VectorXd& x) const = 0;
  // Certified upper bounds on ||grad f|| and on the gradient's Lipschitz
  // constant over the domain.
  virtual double gradient_bound() const = 0;
  virtual double smoothness_bound() const = 0;
};

using ObjectivePtr = std::shared_ptr<const Objective>;

// Per-user rating vectors for one (round, node) cell. Unrated movies are 0.
struct RatingsBlock {
  int dimension = 0;
  std::vector<Eigen::VectorXd> users;
};

// sum_u max_{m in S} r_{u,m}; the empty set scores 0.
double facility_set_value(const std::vector<Eigen::VectorXd>& ratings,
                          const std::vector<int>& subset);

// Multilinear extension of the facility-location set function, evaluated in
// closed form: for each user, sort ratings in descending order; then
// f_u(x) = sum_j r_(j) x_(j) prod_{l<j} (1 - x_(l)).
class FacilityLocationObjective final : public Objective {
 public:
  explicit FacilityLocationObjective(RatingsBlock block);

  int dimension() const override { return block_.dimension; }
  double value(const Eigen::VectorXd& x) const override;
  // d/dx_m = sum_u E[(r_{u,m} - max rating among the other sampled items)_+].
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const override;
  double gradient_bound() const override { return gradient_bound_; }
  double smoothness_bound() const override { return smoothness_bound_; }

  const RatingsBlock& block() const { return block_; }

 private:
  struct Entry {
    int item;
    double rating;
  };

  void check_domain(const Eigen::VectorXd& x) const;

  RatingsBlock block_;
  // Nonzero ratings per user, descending, ties by ascending item index.
  std::vector<std::vector<Entry>> sorted_;
  double gradient_bound_ = 0.0;
  double smoothness_bound_ = 0.0;
};

double multilinear_value(const std::vector<Eigen::VectorXd>& ratings,
                         const Eigen::VectorXd& x);
Eigen::VectorXd multilinear_gradient(const std::vector<Eigen::VectorXd>& ratings,
                                     const Eigen::VectorXd& x);

// f(x) = <h, x> + x^T H x / 2 on the box [0, upper], with H symmetric and
// entrywise nonpositive and h large enough that grad f >= 0 on the box.
class QuadraticObjective final : public Objective {
 public:
  static constexpr double kAutoMargin = 0.1;

  QuadraticObjective(Eigen::MatrixXd hessian, Eigen::VectorXd linear,
                     Eigen::VectorXd upper);
  // h_i = sum_j |H_ij| u_j + kAutoMargin.
  static QuadraticObjective with_auto_linear(Eigen::MatrixXd hessian,
                                             Eigen::VectorXd upper);

  int dimension() const override { return static_cast<int>(linear_.size()); }
  double value(const Eigen::VectorXd& x) const override;
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const override;
  // 0 <= grad f <= h on the box, so ||h|| is exact.
  double gradient_bound() const override { return linear_.norm(); }
  double smoothness_bound() const override { return smoothness_; }

  const Eigen::MatrixXd& hessian() const { return hessian_; }
  const Eigen::VectorXd& linear() const { return linear_; }
  const Eigen::VectorXd& upper() const { return upper_; }

 private:
  Eigen::MatrixXd hessian_;
  Eigen::VectorXd linear_;
  Eigen::VectorXd upper_;
  double smoothness_ = 0.0;
};

// Random symmetric H <= 0 with entries in [-scale, 0].
Eigen::MatrixXd random_nonpositive_hessian(int dimension, double scale, Rng& rng);

// g(x) = f(x) - f(0).
class ShiftedObjective final : public Objective {
 public:
  explicit ShiftedObjective(ObjectivePtr base);

  int dimension() const override { return base_->dimension(); }
  double value(const Eigen::VectorXd& x) const override {
    return base_->value(x) - offset_;
  }
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const override {
    return base_->gradient(x);
  }
  double gradient_bound() const override { return base_->gradient_bound(); }
  double smoothness_bound() const override { return base_->smoothness_bound(); }
  double offset() const { return offset_; }

 private:
  ObjectivePtr base_;
  double offset_;
};

// Exact gradient plus sigma * N(0, I). Does not count the query.
Eigen::VectorXd noisy_gradient(const Objective& f, const Eigen::VectorXd& x,
                               double sigma, Rng& rng);

// A node's stochastic first-order oracle: owns the node's noise stream and
// counts every query.
class GradientOracle {
 public:
  GradientOracle(double sigma, Rng rng);

  Eigen::VectorXd query(const Objective& f, const Eigen::VectorXd& x);
  std::int64_t queries() const { return queries_; }
  double sigma() const { return sigma_; }

 private:
  double sigma_;
  Rng rng_;
  std::int64_t queries_ = 0;
};

// The T x N grid of local rewards f_{t,i}. Every cell satisfies f(0) = 0:
// cells with a nonzero value at the origin are wrapped in ShiftedObjective.
class ObjectiveStream {
 public:
  ObjectiveStream(int rounds, int nodes, std::vector<ObjectivePtr> cells,
                  double sigma, std::string description);

  int rounds() const { return rounds_; }
  int nodes() const { return nodes_; }
  int dimension() const { return dimension_; }
  double sigma() const { return sigma_; }
  double smoothness() const { return smoothness_; }
  double gradient_bound() const { return gradient_bound_; }
  const std::string& description() const { return description_; }

  // Rounds and nodes are 0-based.
  const Objective& at(int round, int node) const {
    return *cells_[static_cast<std::size_t>(round) * nodes_ + node];
  }
  ObjectivePtr handle(int round, int node) const {
    return cells_[static_cast<std::size_t>(round) * nodes_ + node];
  }

  // The first `rounds` rounds as a new stream.
  ObjectiveStream prefix(int rounds) const;

 private:
  int rounds_;
  int nodes_;
  int dimension_;
  std::vector<ObjectivePtr> cells_;
  double sigma_;
  double smoothness_ = 0.0;
  double gradient_bound_ = 0.0;
  std::string description_;
};

// blocks[t][i] holds the users of node i at round t.
ObjectiveStream facility_stream(const std::vector<std::vector<RatingsBlock>>& blocks,
                                double sigma);

// Independent random quadratic objectives per cell, H entries in
// [-hessian_scale, 0], h auto-completed.
ObjectiveStream quadratic_stream(int rounds, int nodes, const Eigen::VectorXd& upper,
                                 double hessian_scale, double sigma,
                                 std::uint64_t seed);

}  // namespace dsm
