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
#include <set>
#include <vector>

#include <boost/math/special_functions/beta.hpp>

#include "binscore/evaluation.hpp"
#include "binscore/oracle.hpp"
#include "doctest.h"

using namespace binscore;

TEST_CASE("uniform draws are reproducible and in range") {
  OracleRng a(42), b(42);
  for (int i = 0; i < 10000; ++i) {
    const double u = uniform01(a);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(u == uniform01(b));
  }
}

TEST_CASE("binomial sampler frequencies follow the pmf") {
  const int n = 12;
  const double pi = 0.3;
  const BinomialSampler draw(n, pi);
  OracleRng rng(3);
  const int reps = 400000;
  std::vector<int> counts(n + 1, 0);
  for (int i = 0; i < reps; ++i) {
    const int x = draw(rng);
    REQUIRE(x >= 0);
    REQUIRE(x <= n);
    ++counts[x];
  }
  for (int x = 0; x <= n; ++x) {
    const double p = binom_pmf(n, pi, x);
    const double se = std::sqrt(p * (1 - p) / reps);
    CHECK(std::fabs(counts[x] / static_cast<double>(reps) - p) <= 5 * se + 1e-12);
  }
  const BinomialSampler degenerate(5, 1.0);
  CHECK(degenerate(rng) == 5);
}

TEST_CASE("monte carlo estimates sit near the exact values") {
  const BinomialSetting s(20, 0.95);
  const MethodEvaluator ev(MethodId::kWilson, s);
  const EvaluationPoint exact = ev.evaluate(0.17);
  const auto all = mc_measure_all(MethodId::kWilson, s, 0.17, 200000, 99);
  CHECK(std::fabs(all[0].mean - exact.cp) <= 4 * all[0].std_error + 1e-12);
  CHECK(std::fabs(all[1].mean - exact.ew) <= 4 * all[1].std_error + 1e-12);
  CHECK(std::fabs(all[2].mean - exact.eis) <= 4 * all[2].std_error + 1e-12);
  const McEstimate single = mc_measure(Measure::kEis, MethodId::kWilson, s, 0.17, 200000, 99);
  CHECK(single.mean == all[2].mean);
  CHECK(single.replications == 200000);
  CHECK(measure_name(Measure::kCp) == "cp");
}

TEST_CASE("bisection quantile agrees with the library quantile") {
  for (double a : {0.5, 1.0, 3.5, 40.5}) {
    for (double b : {0.5, 2.0, 17.5}) {
      for (double p : {0.005, 0.05, 0.5, 0.95, 0.995}) {
        const double q = beta_quantile_bisect(a, b, p);
        CHECK(std::fabs(q - boost::math::ibeta_inv(a, b, p)) < 1e-12);
        CHECK(std::fabs(q - beta_quantile(a, b, p)) < 1e-10);
      }
    }
  }
}

TEST_CASE("grid hpd is close to the exact hpd") {
  for (int x : {0, 2, 5, 9}) {
    const BinomialSetting s(10, 0.95);
    const IntervalEstimate exact = hpd(x, s, Prior::kJeffreys);
    const GridInterval g = hpd_grid_search(x + 0.5, 10 - x + 0.5, 0.95, 4000);
    CHECK(g.resolution > 0);
    CHECK(std::fabs(g.lower - exact.lower) < 1e-4);
    CHECK(std::fabs(g.upper - exact.upper) < 1e-4);
    CHECK(exact.width() <= g.upper - g.lower + 1e-12);
  }
}

TEST_CASE("random configurations are reproducible and cover all methods") {
  const auto a = random_mc_configs(1, 22), b = random_mc_configs(1, 22);
  REQUIRE(a.size() == 22);
  std::set<MethodId> seen;
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].method == b[i].method);
    CHECK(a[i].pi == b[i].pi);
    CHECK(a[i].n >= 1);
    CHECK(a[i].n <= 100);
    CHECK(a[i].pi > 0.0);
    CHECK(a[i].pi < 1.0);
    CHECK((a[i].gamma == 0.9 || a[i].gamma == 0.95 || a[i].gamma == 0.99));
    seen.insert(a[i].method);
  }
  CHECK(seen.size() == kAllMethods.size());
}

TEST_CASE("verification passes and the zero-tolerance hook fails it") {
  VerifyOptions opt;
  opt.replications = 20000;
  opt.mc_configs = 3;
  opt.workers = 2;
  const VerifyReport ok = run_verification(opt);
  CHECK(ok.all_passed());
  const std::string text = ok.format();
  CHECK(text.rfind("PASS ", 0) == 0);
  CHECK(text.find("summary: ") != std::string::npos);

  opt.tolerance_scale = 0.0;
  const VerifyReport bad = run_verification(opt);
  CHECK_FALSE(bad.all_passed());
  CHECK(bad.format().find("FAIL ") != std::string::npos);
}
