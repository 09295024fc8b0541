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

#include "binscore/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace binscore {

namespace {

void check_pi(double pi) {
  if (!(pi >= 0.0 && pi <= 1.0)) {
    throw std::domain_error("pi outside [0, 1]");
  }
}

}  // namespace

int coverage(double lower, double upper, double pi) {
  return (lower <= pi && pi <= upper) ? 1 : 0;
}

double interval_score(double lower, double upper, double pi, double alpha) {
  double score = upper - lower;
  if (pi < lower) score += 2.0 / alpha * (lower - pi);
  if (pi > upper) score += 2.0 / alpha * (pi - upper);
  return score;
}

MethodEvaluator::MethodEvaluator(MethodId method, const BinomialSetting& setting)
    : method_(method),
      setting_(setting),
      intervals_(compute_all_intervals(method, setting)),
      endpoints_(all_endpoints(intervals_)) {}

double MethodEvaluator::coverage_probability(double pi) const {
  return evaluate(pi).cp;
}

double MethodEvaluator::expected_width(double pi) const {
  return evaluate(pi).ew;
}

double MethodEvaluator::expected_interval_score(double pi) const {
  return evaluate(pi).eis;
}

EvaluationPoint MethodEvaluator::evaluate(double pi) const {
  check_pi(pi);
  const std::vector<double> pmf = binom_pmf_all(setting_.n(), pi);
  const double alpha = setting_.alpha();
  EvaluationPoint pt;
  pt.pi = pi;
  for (std::size_t x = 0; x < pmf.size(); ++x) {
    const IntervalEstimate& ci = intervals_[x];
    pt.cp += pmf[x] * coverage(ci.lower, ci.upper, pi);
    pt.ew += pmf[x] * ci.width();
    pt.eis += pmf[x] * interval_score(ci.lower, ci.upper, pi, alpha);
  }
  return pt;
}

double MethodEvaluator::smoothed_cp(double pi, double epsilon,
                                    const QuadratureSpec& quad) const {
  return smoothed_cp_detail(pi, epsilon, quad).value;
}

IntegrationResult MethodEvaluator::smoothed_cp_detail(
    double pi, double epsilon, const QuadratureSpec& quad) const {
  if (!(epsilon > 0.0)) {
    throw std::domain_error("smoothed_cp: epsilon must be positive");
  }
  check_pi(pi);
  const double lo = std::max(pi - epsilon, 0.0);
  const double hi = std::min(pi + epsilon, 1.0);
  QuadratureSpec spec = quad;
  spec.breakpoints.clear();
  for (double e : endpoints_) {
    if (e > lo && e < hi) spec.breakpoints.push_back(e);
  }
  IntegrationResult r = integrate_piecewise(
      [this](double t) { return coverage_probability(t); }, spec, lo, hi);
  r.value /= hi - lo;
  r.error_estimate /= hi - lo;
  return r;
}

double coverage_probability(MethodId method, const BinomialSetting& setting,
                            double pi) {
  return MethodEvaluator(method, setting).coverage_probability(pi);
}

double expected_width(MethodId method, const BinomialSetting& setting,
                      double pi) {
  return MethodEvaluator(method, setting).expected_width(pi);
}

double expected_interval_score(MethodId method, const BinomialSetting& setting,
                               double pi) {
  return MethodEvaluator(method, setting).expected_interval_score(pi);
}

double smoothed_cp(MethodId method, const BinomialSetting& setting, double pi,
                   double epsilon) {
  return MethodEvaluator(method, setting).smoothed_cp(pi, epsilon);
}

LevelWeights::LevelWeights(std::vector<Level> levels)
    : levels_(std::move(levels)) {
  if (levels_.empty()) throw std::domain_error("LevelWeights: no levels");
  bool any_positive = false;
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    const Level& lv = levels_[i];
    if (!(lv.gamma.value() > 0.0 && lv.gamma.value() < 1.0)) {
      throw std::domain_error("LevelWeights: level outside (0, 1)");
    }
    if (!(lv.weight >= 0.0) || !std::isfinite(lv.weight)) {
      throw std::domain_error("LevelWeights: weights must be finite and >= 0");
    }
    any_positive = any_positive || lv.weight > 0.0;
    for (std::size_t j = 0; j < i; ++j) {
      if (levels_[j].gamma.value() == lv.gamma.value()) {
        throw std::domain_error("LevelWeights: repeated level");
      }
    }
  }
  if (!any_positive) {
    throw std::domain_error("LevelWeights: need a strictly positive weight");
  }
}

LevelWeights LevelWeights::single(double gamma) {
  return LevelWeights({{Probability(gamma), 1.0}});
}

double weighted_interval_score(std::span<const IntervalEstimate> intervals,
                               double pi, const LevelWeights& weights) {
  if (intervals.size() != weights.size()) {
    throw std::invalid_argument(
        "weighted_interval_score: need one interval per level");
  }
  double total = 0.0;
  for (std::size_t k = 0; k < intervals.size(); ++k) {
    const auto& lv = weights.levels()[k];
    total += lv.weight * interval_score(intervals[k].lower, intervals[k].upper,
                                        pi, 1.0 - lv.gamma.value());
  }
  return total;
}

WisEvaluator::WisEvaluator(MethodId method, int n, LevelWeights weights)
    : method_(method), n_(n), weights_(std::move(weights)) {
  for (const auto& lv : weights_.levels()) {
    per_level_.push_back(
        compute_all_intervals(method, BinomialSetting(n, lv.gamma.value())));
    for (double e : all_endpoints(per_level_.back())) endpoints_.push_back(e);
  }
  std::sort(endpoints_.begin(), endpoints_.end());
  endpoints_.erase(std::unique(endpoints_.begin(), endpoints_.end()),
                   endpoints_.end());
}

double WisEvaluator::expected(double pi) const {
  check_pi(pi);
  const std::vector<double> pmf = binom_pmf_all(n_, pi);
  std::vector<IntervalEstimate> at_x(per_level_.size());
  double total = 0.0;
  for (std::size_t x = 0; x < pmf.size(); ++x) {
    for (std::size_t k = 0; k < per_level_.size(); ++k) {
      at_x[k] = per_level_[k][x];
    }
    total += pmf[x] * weighted_interval_score(at_x, pi, weights_);
  }
  return total;
}

double expected_wis(MethodId method, int n, const LevelWeights& weights,
                    double pi) {
  return WisEvaluator(method, n, weights).expected(pi);
}

}  // namespace binscore
