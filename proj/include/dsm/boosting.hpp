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

// Boosting auxiliary function F(x) = int_0^1 (e^{z-1}/z) f(z x) dz and its
// one-query stochastic gradient estimator.

#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "dsm/objectives.hpp"
#include "dsm/rng.hpp"

namespace dsm {

inline constexpr double kOneMinusInvE = 0.63212055882855767;  // 1 - 1/e

// Inverse CDF of Z, where P(Z <= z) = (e^{z-1} - 1/e) / (1 - 1/e).
double z_from_uniform(double u);

// Draws Z by inverse transform from its own stream.
class ZSampler {
 public:
  explicit ZSampler(Rng rng) : rng_(rng) {}
  explicit ZSampler(std::uint64_t seed) : rng_(seed) {}

  double sample();

 private:
  Rng rng_;
};

// (1 - 1/e) * noisy grad f(z x) with z ~ Z. Consumes exactly one query.
Eigen::VectorXd boosted_gradient(const Objective& f, const Eigen::VectorXd& x,
                                 GradientOracle& oracle, ZSampler& sampler);

// Nodes and weights of the `points`-point Gauss-Legendre rule on [0, 1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
QuadratureRule gauss_legendre_unit(int points);

// grad F(x) = int_0^1 e^{z-1} grad f(z x) dz by quadrature (points >= 16).
Eigen::VectorXd reference_boosted_gradient(const Objective& f, const Eigen::VectorXd& x,
                                           int points = 64);

// F(x) by quadrature. Requires |f(0)| <= 1e-9; the z -> 0 limit of the
// integrand, e^{-1} <grad f(0), x>, is used at nodes below 1e-8.
double auxiliary_value(const Objective& f, const Eigen::VectorXd& x, int points = 64);

// <y - x, grad F(x)> - ((1 - 1/e) f(y) - f(x)); nonnegative for monotone
// DR-submodular f with f(0) = 0.
double boosting_inequality_slack(const Objective& f, const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& y, int points = 64);

}  // namespace dsm
