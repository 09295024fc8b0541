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

#ifndef BINSCORE_ORACLE_HPP_
#define BINSCORE_ORACLE_HPP_

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "binscore/intervals.hpp"

// Independent cross-checks for the exact evaluation path: Monte Carlo
// estimates of CP/EW/EIS, a plain-bisection beta quantile, and a grid-search
// HPD interval.
namespace binscore {

enum class Measure { kCp, kEw, kEis };

std::string_view measure_name(Measure measure);

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t replications = 0;
  std::uint64_t seed = 0;
};

/// The generator behind every Monte Carlo routine here.
using OracleRng = std::mt19937_64;

/// Uniform double in [0, 1) built from the top 53 bits of one draw, so the
/// stream is identical across standard library implementations.
double uniform01(OracleRng& rng);

/// Exact inversion sampler for Bin(n, pi) over a cached cumulative table.
class BinomialSampler {
 public:
  BinomialSampler(int n, double pi);
  int operator()(OracleRng& rng) const;

 private:
  std::vector<double> cdf_;
};

/// Monte Carlo estimate of one measure: draws x ~ Bin(n, pi) and averages
/// the coverage indicator, the width, or the interval score of the cached
/// interval for x.
McEstimate mc_measure(Measure measure, MethodId method,
                      const BinomialSetting& setting, double pi,
                      std::int64_t replications, std::uint64_t seed);

/// All three measures from the same stream of draws, indexed by Measure.
std::array<McEstimate, 3> mc_measure_all(MethodId method,
                                         const BinomialSetting& setting,
                                         double pi, std::int64_t replications,
                                         std::uint64_t seed);

/// Beta quantile by bisection on reg_inc_beta only, bracket below 1e-12.
double beta_quantile_bisect(double a, double b, double p);

struct GridInterval {
  double lower = 0.0;
  double upper = 0.0;
  /// Largest spacing between neighbouring candidate lower limits.
  double resolution = 0.0;
};

/// Shortest interval of posterior mass gamma for Beta(a, b) among
/// `grid_size` + 1 candidates whose lower tail mass runs evenly over
/// [0, 1 - gamma]. Quantiles come from beta_quantile_bisect.
GridInterval hpd_grid_search(double a, double b, double gamma, int grid_size);

struct McConfig {
  MethodId method;
  int n;
  double gamma;
  double pi;
};

/// Reproducible pseudo-random configurations; methods cycle through all
/// eleven in order.
std::vector<McConfig> random_mc_configs(std::uint64_t seed, int count);

struct VerifyOptions {
  std::uint64_t seed = 20240917;
  std::int64_t replications = 1'000'000;
  int mc_configs = 20;
  double se_band = 4.0;
  /// Multiplies every tolerance; 0 turns the suite into an exact-equality
  /// check that is expected to fail.
  double tolerance_scale = 1.0;
  unsigned workers = 1;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool all_passed() const;
  /// One "PASS|FAIL name detail" line per check and a summary line.
  std::string format() const;
};

/// Monte Carlo agreement, quantile cross-checks, HPD grid checks and
/// prior-averaged coverage.
VerifyReport run_verification(const VerifyOptions& options);

}  // namespace binscore

#endif  // BINSCORE_ORACLE_HPP_
