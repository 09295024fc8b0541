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

#include "binscore/summaries.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "binscore/parallel.hpp"

namespace binscore {

std::string_view scale_name(Scale scale) {
  return scale == Scale::kUniform ? "uniform" : "varstab";
}

std::optional<Scale> parse_scale(std::string_view name) {
  if (name == "uniform") return Scale::kUniform;
  if (name == "varstab") return Scale::kVarianceStabilized;
  return std::nullopt;
}

double eis_deficit(MethodId method, const BinomialSetting& setting, double pi) {
  return expected_interval_score(method, setting, pi) -
         asym_eis(pi, setting.n(), setting.gamma());
}

IntegrationResult uniform_integral(const std::function<double(double)>& f,
                                   std::span<const double> breakpoints,
                                   const QuadratureSpec& quad) {
  QuadratureSpec spec = quad;
  spec.breakpoints.assign(breakpoints.begin(), breakpoints.end());
  return integrate_piecewise(f, spec, 0.0, 1.0);
}

IntegrationResult varstab_integral(const std::function<double(double)>& f,
                                   std::span<const double> breakpoints,
                                   const QuadratureSpec& quad) {
  QuadratureSpec spec = quad;
  spec.breakpoints.clear();
  for (double t : breakpoints) {
    const double phi = std::asin(std::sqrt(t));
    if (spec.breakpoints.empty() || phi > spec.breakpoints.back()) {
      spec.breakpoints.push_back(phi);
    }
  }
  auto g = [&f](double phi) {
    const double s = std::sin(phi);
    return f(s * s);
  };
  return integrate_piecewise(g, spec, 0.0, kPi / 2.0);
}

IntegrationResult integrate_on_scale(Scale scale,
                                     const std::function<double(double)>& f,
                                     std::span<const double> breakpoints,
                                     const QuadratureSpec& quad) {
  return scale == Scale::kUniform ? uniform_integral(f, breakpoints, quad)
                                  : varstab_integral(f, breakpoints, quad);
}

std::string levels_label(const LevelWeights& levels) {
  std::ostringstream out;
  if (levels.size() == 1 && levels.levels().front().weight == 1.0) {
    out << levels.levels().front().gamma.value();
    return out.str();
  }
  bool first = true;
  for (const auto& lv : levels.levels()) {
    if (!first) out << ';';
    first = false;
    out << lv.gamma.value() << ':' << lv.weight;
  }
  return out.str();
}

DeficitCurve::DeficitCurve(MethodId method, int n, LevelWeights levels)
    : wis_(method, n, std::move(levels)) {}

double DeficitCurve::operator()(double pi) const {
  return wis_.expected(pi) - asym_ewis(pi, wis_.n(), wis_.weights());
}

SummaryRow summarize(MethodId method, int n, const LevelWeights& levels,
                     const QuadratureSpec& quad) {
  const DeficitCurve curve(method, n, levels);
  auto f = [&curve](double pi) { return curve(pi); };
  SummaryRow row;
  row.method = method;
  row.n = n;
  row.levels = levels;
  const IntegrationResult u = uniform_integral(f, curve.breakpoints(), quad);
  const IntegrationResult v = varstab_integral(f, curve.breakpoints(), quad);
  row.uniform_integral = u.value;
  row.varstab_integral = v.value;
  for (const IntegrationResult* r : {&u, &v}) {
    if (!r->converged) {
      std::ostringstream msg;
      msg << method_name(method) << " n=" << n << " "
          << (r == &u ? "uniform" : "varstab") << ": " << r->warning;
      row.warnings.push_back(msg.str());
    }
  }
  return row;
}

std::vector<MethodId> RankingTable::order() const {
  std::vector<MethodId> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.method);
  return out;
}

std::vector<RankEntry> rank_values(
    std::vector<std::pair<MethodId, double>> values) {
  std::sort(values.begin(), values.end(), [](const auto& a, const auto& b) {
    if (std::fabs(a.second - b.second) > kRankTieTolerance) {
      return a.second < b.second;
    }
    return method_name(a.first) < method_name(b.first);
  });
  std::vector<RankEntry> out;
  out.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    out.push_back({values[i].first, values[i].second, static_cast<int>(i) + 1,
                   false});
  }
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (std::fabs(out[i].value - out[i - 1].value) <= kRankTieTolerance) {
      out[i].tie = true;
      out[i - 1].tie = true;
    }
  }
  return out;
}

std::vector<SummaryRow> summarize_grid(std::span<const MethodId> methods,
                                       std::span<const int> ns,
                                       const LevelWeights& levels,
                                       const QuadratureSpec& quad,
                                       unsigned workers) {
  std::vector<SummaryRow> rows(methods.size() * ns.size());
  parallel_for(rows.size(), workers, [&](std::size_t i) {
    const int n = ns[i / methods.size()];
    const MethodId method = methods[i % methods.size()];
    rows[i] = summarize(method, n, levels, quad);
  });
  return rows;
}

RankingTable rank_rows(std::span<const SummaryRow> rows, int n, Scale scale) {
  RankingTable table;
  table.n = n;
  table.scale = scale;
  std::vector<std::pair<MethodId, double>> values;
  bool have_levels = false;
  for (const SummaryRow& row : rows) {
    if (row.n != n) continue;
    if (!have_levels) {
      table.levels = row.levels;
      have_levels = true;
    }
    values.emplace_back(row.method, row.value(scale));
    table.warnings.insert(table.warnings.end(), row.warnings.begin(),
                          row.warnings.end());
  }
  if (values.empty()) {
    throw std::invalid_argument("rank_rows: no rows for the requested n");
  }
  table.entries = rank_values(std::move(values));
  return table;
}

IntegrationResult prior_averaged_coverage(MethodId method,
                                          const BinomialSetting& setting,
                                          Prior prior,
                                          const QuadratureSpec& quad) {
  const MethodEvaluator eval(method, setting);
  auto cp = [&eval](double pi) { return eval.coverage_probability(pi); };
  if (prior == Prior::kUniform) {
    return uniform_integral(cp, eval.endpoints(), quad);
  }
  IntegrationResult r = varstab_integral(cp, eval.endpoints(), quad);
  r.value *= 2.0 / kPi;
  r.error_estimate *= 2.0 / kPi;
  return r;
}

RankingTable rank_methods(std::span<const MethodId> methods, int n,
                          const LevelWeights& levels, Scale scale,
                          const QuadratureSpec& quad, unsigned workers) {
  if (methods.empty()) {
    throw std::invalid_argument("rank_methods: no methods given");
  }
  const int ns[] = {n};
  const std::vector<SummaryRow> rows =
      summarize_grid(methods, ns, levels, quad, workers);
  return rank_rows(rows, n, scale);
}

}  // namespace binscore
