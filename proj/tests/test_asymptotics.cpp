/*
 * Copyright 2026 The binscore Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#include <cmath>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "binscore/asymptotics.hpp"
#include "binscore/evaluation.hpp"
#include "doctest.h"

using namespace binscore;

namespace {

// E[IS] for the interval p +- q sigma when p ~ N(pi, sigma^2), integrated
// numerically over the standardized estimate.
double normal_eis_oracle(double pi, int n, double gamma) {
  const double sigma = std::sqrt(pi * (1 - pi) / n);
  const double alpha = 1 - gamma;
  const boost::math::normal z01;
  const double q = boost::math::quantile(z01, 1 - alpha / 2);
  const auto score = [&](double z) {
    const double l = pi + sigma * (z - q), u = pi + sigma * (z + q);
    return interval_score(l, u, pi, alpha) * boost::math::pdf(z01, z);
  };
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  return GK::integrate(score, -40.0, -q, 15, 1e-14) +
         GK::integrate(score, -q, q, 15, 1e-14) +
         GK::integrate(score, q, 40.0, 15, 1e-14);
}

}  // namespace

TEST_CASE("closed form equals the normal expectation") {
  for (double pi : {0.01, 0.1, 0.37, 0.5, 0.9}) {
    for (int n : {1, 10, 100, 5000}) {
      for (double gamma : {0.8, 0.9, 0.95, 0.99}) {
        CHECK(std::fabs(asym_eis(pi, n, gamma) - normal_eis_oracle(pi, n, gamma)) < 1e-8);
      }
    }
  }
}

TEST_CASE("asymptotic reference fields") {
  const AsymptoticReference r = asymptotic_reference(0.3, 40, 0.95);
  const double sigma = std::sqrt(0.3 * 0.7 / 40);
  CHECK(r.sigma == doctest::Approx(sigma));
  CHECK(r.asym_ew == doctest::Approx(2 * 1.959963984540054 * sigma));
  CHECK(r.asym_ew == asym_ew(0.3, 40, 0.95));
  CHECK(r.asym_eis == asym_eis(0.3, 40, 0.95));
  CHECK(r.asym_eis > r.asym_ew);
  CHECK(asym_eis(0.0, 10, 0.95) == 0.0);
}

TEST_CASE("weighted asymptotic reference is the weighted sum") {
  const LevelWeights lw({{Probability(0.9), 1.0}, {Probability(0.95), 0.5},
                         {Probability(0.99), 2.0}});
  const double want = asym_eis(0.2, 30, 0.9) + 0.5 * asym_eis(0.2, 30, 0.95) +
                      2.0 * asym_eis(0.2, 30, 0.99);
  CHECK(asym_ewis(0.2, 30, lw) == doctest::Approx(want).epsilon(1e-15));
}

TEST_CASE("wilson approaches the reference at one half") {
  double prev = INFINITY;
  for (int n : {100, 1000, 10000}) {
    const double gap = std::fabs(
        expected_interval_score(MethodId::kWilson, BinomialSetting(n, 0.95), 0.5) -
        asym_eis(0.5, n, 0.95));
    CHECK(gap < prev);
    prev = gap;
  }
}
