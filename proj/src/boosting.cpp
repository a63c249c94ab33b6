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

#include "dsm/boosting.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dsm/error.hpp"

namespace dsm {
namespace {

constexpr double kInvE = 0.36787944117144233;
constexpr int kMinQuadraturePoints = 16;

}  // namespace

double z_from_uniform(double u) {
  const double z = 1.0 + std::log(kInvE + kOneMinusInvE * u);
  return std::clamp(z, 0.0, 1.0);
}

double ZSampler::sample() { return z_from_uniform(uniform01(rng_)); }

Eigen::VectorXd boosted_gradient(const Objective& f, const Eigen::VectorXd& x,
                                 GradientOracle& oracle, ZSampler& sampler) {
  const double z = sampler.sample();
  return kOneMinusInvE * oracle.query(f, z * x);
}

QuadratureRule gauss_legendre_unit(int points) {
  require(points >= 1, ErrorKind::kInvalidParameter, "quadrature needs >= 1 point");
  QuadratureRule rule;
  rule.nodes.resize(points);
  rule.weights.resize(points);
  // Newton on the Legendre polynomial P_points, symmetric roots on [-1, 1].
  const int half = (points + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double root = std::cos(std::numbers::pi * (i + 0.75) / (points + 0.5));
    double derivative = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = root;
      for (int k = 2; k <= points; ++k) {
        const double p2 = ((2.0 * k - 1.0) * root * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (points == 1) p0 = 1.0;
      derivative = points * (root * p1 - p0) / (root * root - 1.0);
      const double step = p1 / derivative;
      root -= step;
      if (std::abs(step) < 1e-16) break;
    }
    const double weight = 2.0 / ((1.0 - root * root) * derivative * derivative);
    // Map [-1, 1] to [0, 1].
    rule.nodes[i] = 0.5 * (1.0 - root);
    rule.nodes[points - 1 - i] = 0.5 * (1.0 + root);
    rule.weights[i] = 0.5 * weight;
    rule.weights[points - 1 - i] = 0.5 * weight;
  }
  return rule;
}

Eigen::VectorXd reference_boosted_gradient(const Objective& f, const Eigen::VectorXd& x,
                                           int points) {
  require(points >= kMinQuadraturePoints, ErrorKind::kInvalidParameter,
          "reference quadrature needs at least 16 points");
  const QuadratureRule rule = gauss_legendre_unit(points);
  Eigen::VectorXd total = Eigen::VectorXd::Zero(x.size());
  for (int k = 0; k < points; ++k) {
    const double z = rule.nodes[k];
    total += rule.weights[k] * std::exp(z - 1.0) * f.gradient(z * x);
  }
  return total;
}

double auxiliary_value(const Objective& f, const Eigen::VectorXd& x, int points) {
  require(points >= kMinQuadraturePoints, ErrorKind::kInvalidParameter,
          "reference quadrature needs at least 16 points");
  const Eigen::VectorXd origin = Eigen::VectorXd::Zero(x.size());
  require(std::abs(f.value(origin)) <= 1e-9, ErrorKind::kPreconditionViolation,
          "auxiliary function needs f(0) = 0; shift the objective first");
  const QuadratureRule rule = gauss_legendre_unit(points);
  double total = 0.0;
  for (int k = 0; k < points; ++k) {
    const double z = rule.nodes[k];
    const double integrand = z < 1e-8 ? kInvE * f.gradient(origin).dot(x)
                                      : std::exp(z - 1.0) * f.value(z * x) / z;
    total += rule.weights[k] * integrand;
  }
  return total;
}

double boosting_inequality_slack(const Objective& f, const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& y, int points) {
  const Eigen::VectorXd grad = reference_boosted_gradient(f, x, points);
  return (y - x).dot(grad) - (kOneMinusInvE * f.value(y) - f.value(x));
}

}  // namespace dsm
