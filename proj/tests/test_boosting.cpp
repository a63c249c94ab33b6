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

#include <algorithm>
#include <cmath>
#include <vector>

#include <doctest.h>

#include "dsm/boosting.hpp"
#include "support.hpp"

using dsm::kOneMinusInvE;
using dsm::testing::error_kind_of;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

const double kInvE = std::exp(-1.0);

dsm::QuadraticObjective random_quadratic(int n, dsm::Rng& rng) {
  return dsm::QuadraticObjective::with_auto_linear(dsm::random_nonpositive_hessian(n, 1.0, rng),
                                                   VectorXd::Ones(n));
}

}  // namespace

TEST_CASE("z inverse transform endpoints") {
  CHECK(dsm::z_from_uniform(0.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(dsm::z_from_uniform(1.0) == doctest::Approx(1.0));
  // 1 + ln(1/e + (1 - 1/e) / 2).
  CHECK(dsm::z_from_uniform(0.5) == doctest::Approx(0.6201145069582775).epsilon(1e-12));
}

TEST_CASE("z samples follow the boosting distribution") {
  dsm::ZSampler sampler(dsm::Rng(17));
  const int draws = 100000;
  std::vector<double> z(draws);
  for (double& v : z) {
    v = sampler.sample();
    REQUIRE(v >= 0.0);
    REQUIRE(v <= 1.0);
  }
  std::sort(z.begin(), z.end());
  double ks = 0.0;
  for (int k = 0; k < draws; ++k) {
    const double cdf = (std::exp(z[k] - 1.0) - kInvE) / kOneMinusInvE;
    ks = std::max({ks, std::abs(cdf - static_cast<double>(k) / draws),
                   std::abs(cdf - static_cast<double>(k + 1) / draws)});
  }
  CHECK(ks <= 1.5 * 1.63 / std::sqrt(static_cast<double>(draws)));
}

TEST_CASE("boosted gradient of a linear objective is deterministic") {
  const VectorXd h = (VectorXd(3) << 1, 2, 0.5).finished();
  const auto f = dsm::testing::linear_objective(h);
  dsm::GradientOracle oracle(0.0, dsm::Rng(1));
  dsm::ZSampler sampler(dsm::Rng(2));
  for (int k = 0; k < 10; ++k)
    CHECK(dsm::boosted_gradient(*f, VectorXd::Constant(3, 0.3), oracle, sampler)
              .isApprox(kOneMinusInvE * h, 1e-15));
  CHECK(oracle.queries() == 10);
}

TEST_CASE("boosted gradient at the origin is a scaled noisy gradient") {
  dsm::Rng rng(4);
  const auto q = random_quadratic(4, rng);
  dsm::GradientOracle a(0.1, dsm::Rng(9));
  dsm::ZSampler sampler(dsm::Rng(10));
  dsm::Rng noise(9);
  const VectorXd zero = VectorXd::Zero(4);
  CHECK(dsm::boosted_gradient(q, zero, a, sampler) ==
        kOneMinusInvE * dsm::noisy_gradient(q, zero, 0.1, noise));
}

TEST_CASE("boosted gradient is unbiased for the reference") {
  dsm::Rng rng(6);
  const auto q = random_quadratic(5, rng);
  const VectorXd x = dsm::testing::random_vector(5, 0, 1, rng);
  dsm::GradientOracle oracle(0.1, dsm::Rng(7));
  dsm::ZSampler sampler(dsm::Rng(8));
  const int draws = 100000;
  VectorXd sum = VectorXd::Zero(5), sq = VectorXd::Zero(5);
  for (int k = 0; k < draws; ++k) {
    const VectorXd g = dsm::boosted_gradient(q, x, oracle, sampler);
    sum += g;
    sq += g.cwiseProduct(g);
  }
  const VectorXd mean = sum / draws;
  const VectorXd sd = ((sq / draws - mean.cwiseProduct(mean)).array().sqrt()).matrix();
  const VectorXd reference = dsm::reference_boosted_gradient(q, x);
  for (int i = 0; i < 5; ++i) CHECK(std::abs(mean(i) - reference(i)) <= 4 * sd(i) / std::sqrt(draws));
}

TEST_CASE("reference boosted gradient closed forms") {
  dsm::Rng rng(3);
  const auto q = random_quadratic(4, rng);
  const VectorXd x = dsm::testing::random_vector(4, 0, 1, rng);
  const VectorXd analytic = kOneMinusInvE * q.linear() + kInvE * q.hessian() * x;
  CHECK((dsm::reference_boosted_gradient(q, x) - analytic).cwiseAbs().maxCoeff() <= 1e-12);
  const VectorXd h = (VectorXd(2) << 3, 1).finished();
  const auto lin = dsm::testing::linear_objective(h);
  CHECK(dsm::reference_boosted_gradient(*lin, VectorXd::Constant(2, 0.4)).isApprox(kOneMinusInvE * h));
  CHECK(dsm::reference_boosted_gradient(q, VectorXd::Zero(4))
            .isApprox(kOneMinusInvE * q.gradient(VectorXd::Zero(4))));
  CHECK((dsm::reference_boosted_gradient(q, x, 64) - dsm::reference_boosted_gradient(q, x, 128))
            .cwiseAbs()
            .maxCoeff() <= 1e-9);
  CHECK(error_kind_of([&] { dsm::reference_boosted_gradient(q, x, 8); }) ==
        dsm::ErrorKind::kInvalidParameter);
}

TEST_CASE("Gauss-Legendre rule integrates polynomials exactly") {
  const auto rule = dsm::gauss_legendre_unit(16);
  for (int p = 0; p < 32; ++p) {
    double total = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k)
      total += rule.weights[k] * std::pow(rule.nodes[k], p);
    CHECK(total == doctest::Approx(1.0 / (p + 1)).epsilon(1e-13));
  }
}

TEST_CASE("auxiliary value closed forms") {
  dsm::Rng rng(5);
  const auto q = random_quadratic(3, rng);
  const VectorXd x = dsm::testing::random_vector(3, 0, 1, rng);
  CHECK(dsm::auxiliary_value(q, VectorXd::Zero(3)) == doctest::Approx(0.0));
  CHECK(dsm::auxiliary_value(q, x) ==
        doctest::Approx(kOneMinusInvE * q.linear().dot(x) + x.dot(q.hessian() * x) / (2 * std::exp(1.0)))
            .epsilon(1e-12));
  const VectorXd h = (VectorXd(3) << 1, 2, 3).finished();
  CHECK(dsm::auxiliary_value(*dsm::testing::linear_objective(h), x) ==
        doctest::Approx(kOneMinusInvE * h.dot(x)).epsilon(1e-12));
}

TEST_CASE("auxiliary value needs f(0) = 0") {
  struct Offset final : dsm::Objective {
    int dimension() const override { return 1; }
    double value(const VectorXd& x) const override { return 1.0 + x(0); }
    VectorXd gradient(const VectorXd&) const override { return VectorXd::Ones(1); }
    double gradient_bound() const override { return 1.0; }
    double smoothness_bound() const override { return 0.0; }
  };
  CHECK(error_kind_of([] { dsm::auxiliary_value(Offset{}, VectorXd::Ones(1)); }) ==
        dsm::ErrorKind::kPreconditionViolation);
}

TEST_CASE("boosting inequality slack") {
  dsm::Rng rng(13);
  const auto q = random_quadratic(5, rng);
  const VectorXd x = dsm::testing::random_vector(5, 0, 1, rng);
  CHECK(dsm::boosting_inequality_slack(q, x, x) == doctest::Approx(q.value(x) * kInvE).epsilon(1e-10));
  double worst = 1e300;
  for (int trial = 0; trial < 300; ++trial) {
    const VectorXd a = dsm::testing::random_vector(5, 0, 1, rng);
    const VectorXd b = dsm::testing::random_vector(5, 0, 1, rng);
    worst = std::min({worst, dsm::boosting_inequality_slack(q, a, b),
                      dsm::boosting_inequality_slack(q, a, VectorXd::Zero(5))});
  }
  CHECK(worst >= -1e-8);

  const auto ratings = dsm::testing::random_ratings(3, 6, 0.5, rng);
  const dsm::FacilityLocationObjective f({6, ratings});
  worst = 1e300;
  for (int trial = 0; trial < 300; ++trial) {
    worst = std::min(worst, dsm::boosting_inequality_slack(f, dsm::testing::random_vector(6, 0, 1, rng),
                                                           dsm::testing::random_vector(6, 0, 1, rng)));
  }
  CHECK(worst >= -1e-8);
}
