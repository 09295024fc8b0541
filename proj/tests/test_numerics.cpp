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
#include <random>
#include <vector>

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "binscore/numerics.hpp"
#include "doctest.h"

using namespace binscore;
namespace mp = boost::multiprecision;

namespace {

mp::cpp_int choose(int n, int k) {
  mp::cpp_int r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// pmf in 50-digit arithmetic.
double pmf_oracle(int n, double pi, int x) {
  using F = mp::cpp_bin_float_50;
  F p(pi);
  F v = F(choose(n, x)) * mp::pow(p, x) * mp::pow(F(1) - p, n - x);
  return v.convert_to<double>();
}

double rel_err(double got, double want) {
  if (want == 0.0) return std::fabs(got);
  return std::fabs(got - want) / std::fabs(want);
}

}  // namespace

TEST_CASE("probability validates its range") {
  CHECK(Probability(0.0).value() == 0.0);
  CHECK(Probability(1.0).value() == 1.0);
  CHECK_THROWS(Probability(-1e-12));
  CHECK_THROWS(Probability(1.0 + 1e-12));
  CHECK_THROWS(Probability(std::nan("")));
}

TEST_CASE("log binomial coefficient against exact integers") {
  for (int n : {1, 2, 7, 39, 100, 248, 1000}) {
    for (int k = 0; k <= n; k += std::max(1, n / 17)) {
      const double want =
          mp::log(mp::cpp_bin_float_50(choose(n, k))).convert_to<double>();
      CHECK(std::fabs(log_binom_coeff(n, k) - want) <=
            1e-12 * std::max(1.0, std::fabs(want)));
    }
  }
}

TEST_CASE("binomial pmf against extended precision") {
  for (int n : {1, 5, 10, 39, 248}) {
    for (double pi : {1e-6, 0.01, 0.3, 0.5, 0.77, 0.999}) {
      const std::vector<double> all = binom_pmf_all(n, pi);
      REQUIRE(all.size() == static_cast<std::size_t>(n + 1));
      double sum = 0.0;
      for (int x = 0; x <= n; ++x) {
        const double want = pmf_oracle(n, pi, x);
        if (want > 1e-290) {
          CHECK(rel_err(binom_pmf(n, pi, x), want) < 1e-11);
          CHECK(rel_err(all[x], want) < 1e-11);
        }
        sum += all[x];
      }
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
    }
  }
}

TEST_CASE("binomial pmf at the boundary") {
  CHECK(binom_pmf(5, 0.0, 0) == 1.0);
  CHECK(binom_pmf(5, 0.0, 1) == 0.0);
  CHECK(binom_pmf(5, 1.0, 5) == 1.0);
  CHECK(binom_pmf(5, 1.0, 4) == 0.0);
  CHECK(binom_pmf(0, 0.3, 0) == 1.0);
}

TEST_CASE("pmf symmetry") {
  for (int n : {3, 10, 51}) {
    for (double pi : {0.1, 0.37}) {
      for (int x = 0; x <= n; ++x) {
        CHECK(binom_pmf(n, pi, x) ==
              doctest::Approx(binom_pmf(n, 1.0 - pi, n - x)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("beta density") {
  CHECK(beta_pdf(1, 1, 0.3) == doctest::Approx(1.0));
  CHECK(beta_pdf(2, 3, 0.4) == doctest::Approx(12 * 0.4 * 0.36));
  CHECK(std::isinf(beta_pdf(0.5, 0.5, 0.0)));
  CHECK(std::isinf(beta_pdf(0.5, 2, 0.0)));
  CHECK(beta_pdf(2, 2, 0.0) == 0.0);
  CHECK(log_beta(0.5, 0.5) == doctest::Approx(std::log(kPi)));
}

TEST_CASE("regularized incomplete beta against quadrature of the density") {
  boost::math::quadrature::tanh_sinh<double> ts;
  const double shapes[][2] = {{0.5, 0.5}, {1, 1}, {1.5, 10.5}, {30.5, 9.5},
                              {3, 0.5},   {247.5, 2.5}, {0.5, 40.5}};
  for (const auto& ab : shapes) {
    const double a = ab[0], b = ab[1];
    const double lb = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
    for (double t : {1e-4, 0.05, 0.3, 0.5, 0.8, 0.97, 0.9999}) {
      const double want = ts.integrate(
          [&](double s) {
            return std::exp((a - 1) * std::log(s) + (b - 1) * std::log1p(-s) - lb);
          },
          0.0, t);
      CHECK(std::fabs(reg_inc_beta(a, b, t) - want) < 1e-12);
    }
  }
  CHECK(reg_inc_beta(2, 3, 0.0) == 0.0);
  CHECK(reg_inc_beta(2, 3, 1.0) == 1.0);
}

TEST_CASE("regularized incomplete beta against boost across many shapes") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> shape(0.5, 300.0), unit(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const double a = shape(rng), b = shape(rng), t = unit(rng);
    CHECK(std::fabs(reg_inc_beta(a, b, t) - boost::math::ibeta(a, b, t)) < 1e-12);
  }
}

TEST_CASE("beta quantile inverts the cdf") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> shape(0.5, 250.0), unit(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const double a = shape(rng), b = shape(rng);
    const double p = 1e-6 + (1 - 2e-6) * unit(rng);
    const double q = beta_quantile(a, b, p);
    CHECK(std::fabs(q - boost::math::ibeta_inv(a, b, p)) < 1e-10);
    CHECK(std::fabs(reg_inc_beta(a, b, q) - p) < 1e-10);
  }
  CHECK(beta_quantile(2, 3, 0.0) == 0.0);
  CHECK(beta_quantile(2, 3, 1.0) == 1.0);
  CHECK(beta_quantile(1, 1, 0.25) == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("normal distribution") {
  CHECK(norm_pdf(0) == doctest::Approx(1 / std::sqrt(2 * kPi)));
  for (double z : {-8.0, -3.0, -1.0, 0.0, 0.5, 2.0, 6.0}) {
    CHECK(std::fabs(norm_cdf(z) - 0.5 * std::erfc(-z / std::sqrt(2.0))) < 1e-15);
  }
  // Bisection on erfc as the oracle, on whichever tail is smaller.
  for (double p : {1e-10, 1e-4, 0.025, 0.3, 0.5, 0.9, 0.975, 0.995, 1 - 1e-9}) {
    double lo = -40, hi = 40;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      const bool below = p < 0.5 ? 0.5 * std::erfc(-mid / std::sqrt(2.0)) < p
                                 : 0.5 * std::erfc(mid / std::sqrt(2.0)) > 1 - p;
      (below ? lo : hi) = mid;
    }
    CHECK(norm_quantile(p) == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-12));
  }
  CHECK(norm_quantile(0.975) == doctest::Approx(1.959963984540054));
}

TEST_CASE("chi-square quantile with one degree of freedom") {
  boost::math::chi_squared chi(1.0);
  for (double p : {0.01, 0.5, 0.9, 0.95, 0.99, 0.999}) {
    CHECK(chi2_quantile_df1(p) ==
          doctest::Approx(boost::math::quantile(chi, p)).epsilon(1e-11));
  }
  CHECK(chi2_quantile_df1(0.0) == 0.0);
  CHECK_THROWS(chi2_quantile_df1(1.0));
}

TEST_CASE("root finder") {
  const double r = find_root([](double x) { return std::cos(x) - x; }, 0, 1);
  CHECK(r == doctest::Approx(0.7390851332151607).epsilon(1e-10));
  CHECK(find_root([](double x) { return x - 0.25; }, 0.25, 1) == 0.25);
  CHECK_THROWS_AS(find_root([](double x) { return x * x + 1; }, -1, 1),
                  NumericalError);
}

TEST_CASE("gauss-legendre rule is exact for polynomials up to degree 39") {
  const GaussLegendreRule rule = gauss_legendre(20);
  REQUIRE(rule.nodes.size() == 20);
  double wsum = 0;
  for (double w : rule.weights) wsum += w;
  CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
  for (int k = 0; k <= 39; ++k) {
    double sum = 0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      sum += rule.weights[i] * std::pow(rule.nodes[i], k);
    }
    const double want = (k % 2 == 1) ? 0.0 : 2.0 / (k + 1);
    CHECK(std::fabs(sum - want) < 1e-14);
  }
  QuadratureSpec spec;
  const IntegrationResult r = integrate_piecewise(
      [](double t) { return std::pow(t, 39); }, spec, 0, 1);
  CHECK(r.value == doctest::Approx(1.0 / 40).epsilon(1e-14));
}

TEST_CASE("piecewise quadrature with and without breakpoints") {
  const auto step = [](double t) { return t < 0.3 ? 1.0 : (t < 0.71 ? 2.0 : 0.5); };
  const double want = 0.3 + 2 * 0.41 + 0.5 * 0.29;
  QuadratureSpec cut;
  cut.breakpoints = {0.3, 0.71};
  const IntegrationResult with = integrate_piecewise(step, cut, 0, 1);
  CHECK(with.converged);
  CHECK(with.value == doctest::Approx(want).epsilon(1e-14));
  CHECK(with.panels == 3);
  const IntegrationResult without = integrate_piecewise(step, QuadratureSpec{}, 0, 1);
  // Unannounced jumps are only resolved approximately.
  CHECK(without.panels > with.panels);
  CHECK(std::fabs(without.value - want) < 1e-6);
}

TEST_CASE("quadrature spec validation") {
  QuadratureSpec bad;
  bad.rel_tol = 0;
  CHECK_THROWS(bad.validate());
  QuadratureSpec nodes;
  nodes.nodes = 0;
  CHECK_THROWS(nodes.validate());
}

TEST_CASE("quadrature reports non-convergence") {
  QuadratureSpec tight;
  tight.rel_tol = 1e-15;
  tight.abs_tol = 1e-300;
  tight.max_panels = 4;
  const IntegrationResult r = integrate_piecewise(
      [](double t) { return t < 1.0 / 3.0 ? 0.0 : 1.0; }, tight, 0, 1);
  CHECK_FALSE(r.converged);
  CHECK_FALSE(r.warning.empty());
}
