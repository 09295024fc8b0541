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

#ifndef BINSCORE_SUMMARIES_HPP_
#define BINSCORE_SUMMARIES_HPP_

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "binscore/asymptotics.hpp"
#include "binscore/evaluation.hpp"
#include "binscore/intervals.hpp"
#include "binscore/numerics.hpp"

// Integral summaries of the EIS deficit over the true proportion, and the
// method rankings derived from them.
namespace binscore {

enum class Scale { kUniform, kVarianceStabilized };

inline constexpr std::array<Scale, 2> kAllScales = {
    Scale::kUniform, Scale::kVarianceStabilized};

std::string_view scale_name(Scale scale);  // "uniform" / "varstab"
std::optional<Scale> parse_scale(std::string_view name);

/// EIS(pi) - asym_eis(pi).
double eis_deficit(MethodId method, const BinomialSetting& setting, double pi);

/// Integral of f over (0, 1), cut at the given breakpoints.
IntegrationResult uniform_integral(const std::function<double(double)>& f,
                                   std::span<const double> breakpoints,
                                   const QuadratureSpec& quad = {});

/// Integral of f(sin^2(phi)) for phi over (0, pi/2). Breakpoints are given
/// on the proportion scale and mapped through phi = asin(sqrt(t)). This is
/// pi/2 times the integral of f against the Beta(1/2, 1/2) density.
IntegrationResult varstab_integral(const std::function<double(double)>& f,
                                   std::span<const double> breakpoints,
                                   const QuadratureSpec& quad = {});

IntegrationResult integrate_on_scale(Scale scale,
                                     const std::function<double(double)>& f,
                                     std::span<const double> breakpoints,
                                     const QuadratureSpec& quad = {});

/// Levels column text: "0.95" for a single level, otherwise
/// "gamma:weight" pairs joined by ';'.
std::string levels_label(const LevelWeights& levels);

/// Integrand for the summaries: expected (weighted) interval score minus its
/// asymptotic reference. A single-level LevelWeights with weight 1 gives
/// exactly the EIS deficit.
class DeficitCurve {
 public:
  DeficitCurve(MethodId method, int n, LevelWeights levels);

  double operator()(double pi) const;
  const std::vector<double>& breakpoints() const { return wis_.endpoints(); }
  MethodId method() const { return wis_.method(); }

 private:
  WisEvaluator wis_;
};

struct SummaryRow {
  MethodId method = MethodId::kWald;
  int n = 0;
  LevelWeights levels = LevelWeights::single(0.95);
  double uniform_integral = 0.0;
  double varstab_integral = 0.0;
  /// Quadrature warnings raised while computing this row.
  std::vector<std::string> warnings;

  double value(Scale scale) const {
    return scale == Scale::kUniform ? uniform_integral : varstab_integral;
  }
};

SummaryRow summarize(MethodId method, int n, const LevelWeights& levels,
                     const QuadratureSpec& quad = {});

struct RankEntry {
  MethodId method = MethodId::kWald;
  double value = 0.0;
  int rank = 0;
  /// Set when the value is within kRankTieTolerance of a neighbour and the
  /// order was decided by method name.
  bool tie = false;
};

inline constexpr double kRankTieTolerance = 1e-12;

struct RankingTable {
  int n = 0;
  LevelWeights levels = LevelWeights::single(0.95);
  Scale scale = Scale::kUniform;
  /// Ascending by value; lower is better.
  std::vector<RankEntry> entries;
  std::vector<std::string> warnings;

  std::vector<MethodId> order() const;
};

/// Sorts (method, value) pairs ascending; near-ties are broken by method
/// name and flagged.
std::vector<RankEntry> rank_values(
    std::vector<std::pair<MethodId, double>> values);

RankingTable rank_methods(std::span<const MethodId> methods, int n,
                          const LevelWeights& levels, Scale scale,
                          const QuadratureSpec& quad = {},
                          unsigned workers = 1);

/// Summary rows for every (n, method) pair, in that nesting order. Work is
/// spread over `workers` threads; the output is identical for any count.
std::vector<SummaryRow> summarize_grid(std::span<const MethodId> methods,
                                       std::span<const int> ns,
                                       const LevelWeights& levels,
                                       const QuadratureSpec& quad = {},
                                       unsigned workers = 1);

/// Integral of CP(pi) against the prior density: the uniform integral for
/// Prior::kUniform, and (2 / pi) times the variance-stabilized integral for
/// Prior::kJeffreys.
IntegrationResult prior_averaged_coverage(MethodId method,
                                          const BinomialSetting& setting,
                                          Prior prior,
                                          const QuadratureSpec& quad = {});

/// Ranking tables for one n from rows produced by summarize_grid.
RankingTable rank_rows(std::span<const SummaryRow> rows, int n, Scale scale);

}  // namespace binscore

#endif  // BINSCORE_SUMMARIES_HPP_
