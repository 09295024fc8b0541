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

#ifndef BINSCORE_EVALUATION_HPP_
#define BINSCORE_EVALUATION_HPP_

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "binscore/intervals.hpp"
#include "binscore/numerics.hpp"

// Exact frequentist evaluation by enumerating the n + 1 outcomes. All
// measures use the truncated limits.
namespace binscore {

inline constexpr double kDefaultSmoothingEpsilon = 0.025;

/// 1 when l <= pi <= u.
int coverage(double lower, double upper, double pi);

/// Interval score of [l, u] at pi for a (1 - alpha) interval: the width plus
/// (2 / alpha) times the distance from pi to the interval when it misses.
double interval_score(double lower, double upper, double pi, double alpha);

struct EvaluationPoint {
  double pi = 0.0;
  double cp = 0.0;
  double ew = 0.0;
  double eis = 0.0;
  std::optional<double> smoothed_cp;
  std::optional<double> eis_deficit;
};

/// Holds the n + 1 intervals of one method so that repeated evaluation over
/// a grid of pi only costs the pmf.
class MethodEvaluator {
 public:
  MethodEvaluator(MethodId method, const BinomialSetting& setting);

  MethodId method() const { return method_; }
  const BinomialSetting& setting() const { return setting_; }
  const std::vector<IntervalEstimate>& intervals() const { return intervals_; }
  /// Interior interval limits, the discontinuities of CP in pi.
  const std::vector<double>& endpoints() const { return endpoints_; }

  double coverage_probability(double pi) const;
  double expected_width(double pi) const;
  double expected_interval_score(double pi) const;
  /// CP, EW and EIS from a single pmf evaluation.
  EvaluationPoint evaluate(double pi) const;

  /// Mean of CP over [max(pi - eps, 0), min(pi + eps, 1)] (a boxcar kernel
  /// renormalized to the clipped window).
  double smoothed_cp(double pi, double epsilon = kDefaultSmoothingEpsilon,
                     const QuadratureSpec& quad = {}) const;
  /// As smoothed_cp, keeping the quadrature diagnostics. `value` is already
  /// divided by the window length.
  IntegrationResult smoothed_cp_detail(double pi, double epsilon,
                                       const QuadratureSpec& quad = {}) const;

 private:
  MethodId method_;
  BinomialSetting setting_;
  std::vector<IntervalEstimate> intervals_;
  std::vector<double> endpoints_;
};

double coverage_probability(MethodId method, const BinomialSetting& setting,
                            double pi);
double expected_width(MethodId method, const BinomialSetting& setting,
                      double pi);
double expected_interval_score(MethodId method, const BinomialSetting& setting,
                               double pi);
double smoothed_cp(MethodId method, const BinomialSetting& setting, double pi,
                   double epsilon = kDefaultSmoothingEpsilon);

/// Confidence levels with nonnegative weights for the weighted interval score.
class LevelWeights {
 public:
  struct Level {
    Probability gamma;
    double weight;
  };

  /// Throws std::domain_error on an empty list, a level outside (0, 1), a
  /// repeated level, a negative weight, or all-zero weights.
  explicit LevelWeights(std::vector<Level> levels);
  static LevelWeights single(double gamma);

  const std::vector<Level>& levels() const { return levels_; }
  std::size_t size() const { return levels_.size(); }

 private:
  std::vector<Level> levels_;
};

/// Sum over levels of weight * IS_alpha(l, u, pi). `intervals[k]` belongs to
/// `weights.levels()[k]`.
double weighted_interval_score(std::span<const IntervalEstimate> intervals,
                               double pi, const LevelWeights& weights);

/// Expected weighted interval score, enumerated once over x for all levels.
class WisEvaluator {
 public:
  WisEvaluator(MethodId method, int n, LevelWeights weights);

  MethodId method() const { return method_; }
  int n() const { return n_; }
  const LevelWeights& weights() const { return weights_; }
  /// Union of the interior endpoints across all levels.
  const std::vector<double>& endpoints() const { return endpoints_; }
  double expected(double pi) const;

 private:
  MethodId method_;
  int n_;
  LevelWeights weights_;
  // per_level_[k][x]
  std::vector<std::vector<IntervalEstimate>> per_level_;
  std::vector<double> endpoints_;
};

double expected_wis(MethodId method, int n, const LevelWeights& weights,
                    double pi);

}  // namespace binscore

#endif  // BINSCORE_EVALUATION_HPP_
