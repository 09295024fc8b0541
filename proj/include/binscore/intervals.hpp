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

#ifndef BINSCORE_INTERVALS_HPP_
#define BINSCORE_INTERVALS_HPP_

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "binscore/numerics.hpp"

namespace binscore {

enum class MethodId {
  kWald,
  kRindskopf,
  kArcsineWald,
  kWilson,
  kAgrestiCoull,
  kLikelihoodRatio,
  kClopperPearson,
  kJeffreysEqualTailed,
  kJeffreysHpd,
  kUniformEqualTailed,
  kUniformHpd,
};

inline constexpr std::array<MethodId, 11> kAllMethods = {
    MethodId::kWald,
    MethodId::kRindskopf,
    MethodId::kArcsineWald,
    MethodId::kWilson,
    MethodId::kAgrestiCoull,
    MethodId::kLikelihoodRatio,
    MethodId::kClopperPearson,
    MethodId::kJeffreysEqualTailed,
    MethodId::kJeffreysHpd,
    MethodId::kUniformEqualTailed,
    MethodId::kUniformHpd,
};

/// Stable lowercase name used on the command line and in CSV output.
std::string_view method_name(MethodId method);
std::optional<MethodId> parse_method(std::string_view name);
/// Comma-separated list of every valid method name.
std::string valid_method_names();

enum class Prior { kUniform, kJeffreys };

/// Sample size and confidence level. The normal quantile q = z_{1 - alpha/2}
/// is computed once here and shared by every normal-theory method.
class BinomialSetting {
 public:
  BinomialSetting(int n, double gamma);

  int n() const { return n_; }
  double gamma() const { return gamma_; }
  double alpha() const { return alpha_; }
  double q_alpha() const { return q_alpha_; }

 private:
  int n_;
  double gamma_;
  double alpha_;
  double q_alpha_;
};

struct IntervalEstimate {
  double lower = 0.0;
  double upper = 0.0;
  /// Limits before truncation to [0, 1]. Equal to lower/upper for methods
  /// that respect the boundary.
  double raw_lower = 0.0;
  double raw_upper = 0.0;
  MethodId method = MethodId::kWald;
  int n = 0;
  double gamma = 0.0;
  int x = 0;

  double width() const { return upper - lower; }
};

IntervalEstimate wald(int x, const BinomialSetting& setting);
IntervalEstimate rindskopf(int x, const BinomialSetting& setting);
IntervalEstimate arcsine_wald(int x, const BinomialSetting& setting);
IntervalEstimate wilson(int x, const BinomialSetting& setting);
IntervalEstimate agresti_coull(int x, const BinomialSetting& setting);
IntervalEstimate likelihood_ratio(int x, const BinomialSetting& setting);
IntervalEstimate clopper_pearson(int x, const BinomialSetting& setting);
IntervalEstimate equal_tailed(int x, const BinomialSetting& setting, Prior prior);
IntervalEstimate hpd(int x, const BinomialSetting& setting, Prior prior);

IntervalEstimate compute_interval(MethodId method, int x,
                                  const BinomialSetting& setting);

/// Intervals for every outcome x = 0..n, indexed by x.
std::vector<IntervalEstimate> compute_all_intervals(
    MethodId method, const BinomialSetting& setting);

/// Sorted unique limits {l(x), u(x) : x = 0..n} lying strictly inside (0, 1).
/// These are the points where coverage jumps and the score has a kink.
std::vector<double> all_endpoints(MethodId method,
                                  const BinomialSetting& setting);
std::vector<double> all_endpoints(const std::vector<IntervalEstimate>& intervals);

/// Likelihood-ratio statistic -2 log(L(pi) / L(x/n)).
double binomial_deviance(int x, int n, double pi);

}  // namespace binscore

#endif  // BINSCORE_INTERVALS_HPP_
