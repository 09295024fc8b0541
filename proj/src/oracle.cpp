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

#include "binscore/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "binscore/evaluation.hpp"
#include "binscore/parallel.hpp"
#include "binscore/summaries.hpp"

namespace binscore {

namespace {

std::string format_line(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

std::string_view measure_name(Measure measure) {
  switch (measure) {
    case Measure::kCp:
      return "cp";
    case Measure::kEw:
      return "ew";
    case Measure::kEis:
      return "eis";
  }
  return "?";
}

double uniform01(OracleRng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

BinomialSampler::BinomialSampler(int n, double pi) {
  const std::vector<double> pmf = binom_pmf_all(n, pi);
  cdf_.resize(pmf.size());
  double acc = 0.0;
  for (std::size_t x = 0; x < pmf.size(); ++x) {
    acc += pmf[x];
    cdf_[x] = acc;
  }
  cdf_.back() = 1.0;
}

int BinomialSampler::operator()(OracleRng& rng) const {
  const double u = uniform01(rng);
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  const auto x = std::distance(cdf_.begin(), it);
  return static_cast<int>(std::min<std::ptrdiff_t>(
      x, static_cast<std::ptrdiff_t>(cdf_.size()) - 1));
}

std::array<McEstimate, 3> mc_measure_all(MethodId method,
                                         const BinomialSetting& setting,
                                         double pi, std::int64_t replications,
                                         std::uint64_t seed) {
  if (replications < 1) {
    throw std::domain_error("mc_measure: replications must be >= 1");
  }
  const std::vector<IntervalEstimate> intervals =
      compute_all_intervals(method, setting);
  const BinomialSampler sampler(setting.n(), pi);
  OracleRng rng(seed);

  // The per-draw quantities depend on x only, so counting outcomes gives the
  // exact sample moments.
  std::vector<std::int64_t> counts(intervals.size(), 0);
  for (std::int64_t r = 0; r < replications; ++r) {
    ++counts[static_cast<std::size_t>(sampler(rng))];
  }

  std::array<McEstimate, 3> out{};
  const double reps = static_cast<double>(replications);
  for (Measure m : {Measure::kCp, Measure::kEw, Measure::kEis}) {
    auto value_at = [&](std::size_t x) {
      const IntervalEstimate& ci = intervals[x];
      switch (m) {
        case Measure::kCp:
          return static_cast<double>(coverage(ci.lower, ci.upper, pi));
        case Measure::kEw:
          return ci.width();
        case Measure::kEis:
          return interval_score(ci.lower, ci.upper, pi, setting.alpha());
      }
      return 0.0;
    };
    double sum = 0.0;
    for (std::size_t x = 0; x < counts.size(); ++x) {
      if (counts[x] > 0) sum += static_cast<double>(counts[x]) * value_at(x);
    }
    const double mean = sum / reps;
    double ss = 0.0;
    for (std::size_t x = 0; x < counts.size(); ++x) {
      if (counts[x] == 0) continue;
      const double d = value_at(x) - mean;
      ss += static_cast<double>(counts[x]) * d * d;
    }
    const double var = replications > 1 ? ss / (reps - 1.0) : 0.0;
    McEstimate& est = out[static_cast<std::size_t>(m)];
    est.mean = mean;
    est.std_error = std::sqrt(var / reps);
    est.replications = replications;
    est.seed = seed;
  }
  return out;
}

McEstimate mc_measure(Measure measure, MethodId method,
                      const BinomialSetting& setting, double pi,
                      std::int64_t replications, std::uint64_t seed) {
  return mc_measure_all(method, setting, pi, replications,
                        seed)[static_cast<std::size_t>(measure)];
}

double beta_quantile_bisect(double a, double b, double p) {
  if (!(a > 0.0 && b > 0.0)) {
    throw std::domain_error("beta_quantile_bisect: parameters must be positive");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("beta_quantile_bisect: p outside [0, 1]");
  }
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; i < 200 && hi - lo > 1e-13; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (reg_inc_beta(a, b, mid) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

GridInterval hpd_grid_search(double a, double b, double gamma, int grid_size) {
  if (grid_size < 1) throw std::domain_error("hpd_grid_search: empty grid");
  GridInterval best{0.0, 1.0, 0.0};
  double best_width = std::numeric_limits<double>::infinity();
  double prev_lower = 0.0;
  for (int i = 0; i <= grid_size; ++i) {
    const double tail = (1.0 - gamma) * i / grid_size;
    const double lower = beta_quantile_bisect(a, b, tail);
    const double upper = beta_quantile_bisect(a, b, std::min(tail + gamma, 1.0));
    if (i > 0) best.resolution = std::max(best.resolution, lower - prev_lower);
    prev_lower = lower;
    if (upper - lower < best_width) {
      best_width = upper - lower;
      best.lower = lower;
      best.upper = upper;
    }
  }
  return best;
}

std::vector<McConfig> random_mc_configs(std::uint64_t seed, int count) {
  static constexpr double kLevels[] = {0.9, 0.95, 0.99};
  OracleRng rng(seed);
  std::vector<McConfig> out;
  for (int i = 0; i < count; ++i) {
    McConfig cfg{};
    cfg.method = kAllMethods[static_cast<std::size_t>(i) % kAllMethods.size()];
    cfg.n = 1 + static_cast<int>(rng() % 100);
    cfg.gamma = kLevels[rng() % 3];
    cfg.pi = 0.01 + 0.98 * uniform01(rng);
    out.push_back(cfg);
  }
  return out;
}

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.passed; });
}

std::string VerifyReport::format() const {
  std::string out;
  int passed = 0;
  for (const auto& c : checks) {
    out += c.passed ? "PASS " : "FAIL ";
    out += c.name;
    if (!c.detail.empty()) {
      out += "  ";
      out += c.detail;
    }
    out += '\n';
    passed += c.passed ? 1 : 0;
  }
  out += format_line("summary: %d/%zu checks passed\n", passed, checks.size());
  return out;
}

VerifyReport run_verification(const VerifyOptions& options) {
  VerifyReport report;
  const double scale = options.tolerance_scale;

  // Monte Carlo agreement with the exact enumeration.
  const std::vector<McConfig> configs =
      random_mc_configs(options.seed, options.mc_configs);
  std::vector<std::vector<CheckResult>> mc_checks(configs.size());
  parallel_for(configs.size(), options.workers, [&](std::size_t i) {
    const McConfig& cfg = configs[i];
    const BinomialSetting setting(cfg.n, cfg.gamma);
    const MethodEvaluator eval(cfg.method, setting);
    const EvaluationPoint exact = eval.evaluate(cfg.pi);
    const auto mc = mc_measure_all(cfg.method, setting, cfg.pi,
                                   options.replications,
                                   derive_seed(options.seed, i));
    const double exact_values[] = {exact.cp, exact.ew, exact.eis};
    for (Measure m : {Measure::kCp, Measure::kEw, Measure::kEis}) {
      const auto k = static_cast<std::size_t>(m);
      const double diff = std::fabs(mc[k].mean - exact_values[k]);
      const double band =
          scale * (options.se_band * mc[k].std_error + 1e-12);
      CheckResult c;
      c.name = format_line("mc[%02zu].%s %s n=%d gamma=%.2f pi=%.6f", i,
                           std::string(measure_name(m)).c_str(),
                           std::string(method_name(cfg.method)).c_str(), cfg.n,
                           cfg.gamma, cfg.pi);
      c.passed = diff <= band;
      c.detail = format_line("exact=%.10g mc=%.10g se=%.3g z=%.3f",
                             exact_values[k], mc[k].mean, mc[k].std_error,
                             mc[k].std_error > 0 ? diff / mc[k].std_error : 0.0);
      mc_checks[i].push_back(c);
    }
  });
  for (auto& group : mc_checks) {
    for (auto& c : group) report.checks.push_back(std::move(c));
  }

  // Main-path beta quantile against plain bisection.
  {
    OracleRng rng(derive_seed(options.seed, 1000));
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double a = 0.5 + 100.5 * uniform01(rng);
      const double b = 0.5 + 100.5 * uniform01(rng);
      const double p = 0.001 + 0.998 * uniform01(rng);
      worst = std::max(worst, std::fabs(beta_quantile(a, b, p) -
                                        beta_quantile_bisect(a, b, p)));
    }
    report.checks.push_back(
        {"beta_quantile vs bisection (1000 triples)", worst <= scale * 1e-10,
         format_line("max_abs_diff=%.3g tol=%.1g", worst, scale * 1e-10)});
  }

  // HPD root-finding against grid search.
  for (Prior prior : {Prior::kUniform, Prior::kJeffreys}) {
    const int n = 10;
    const double gamma = 0.95;
    const BinomialSetting setting(n, gamma);
    double worst_excess = 0.0;
    bool ok = true;
    for (int x = 1; x < n; ++x) {
      const double prior_ab = prior == Prior::kUniform ? 1.0 : 0.5;
      const IntervalEstimate ci = hpd(x, setting, prior);
      const GridInterval grid =
          hpd_grid_search(prior_ab + x, prior_ab + n - x, gamma, 2000);
      const double excess =
          std::fabs(ci.lower - grid.lower) - scale * grid.resolution;
      worst_excess = std::max(worst_excess, excess);
      ok = ok && excess <= 0.0 &&
           ci.width() <= grid.upper - grid.lower + scale * 1e-12;
    }
    report.checks.push_back(
        {format_line("hpd vs grid search (%s prior, n=10, gamma=0.95)",
                     prior == Prior::kUniform ? "uniform" : "jeffreys"),
         ok, format_line("worst_excess_over_resolution=%.3g", worst_excess)});
  }

  // Posterior intervals average to gamma coverage under their own prior.
  const std::pair<MethodId, Prior> bayes[] = {
      {MethodId::kUniformEqualTailed, Prior::kUniform},
      {MethodId::kUniformHpd, Prior::kUniform},
      {MethodId::kJeffreysEqualTailed, Prior::kJeffreys},
      {MethodId::kJeffreysHpd, Prior::kJeffreys},
  };
  for (const auto& [method, prior] : bayes) {
    for (int n : {10, 50}) {
      for (double gamma : {0.9, 0.95}) {
        const IntegrationResult r =
            prior_averaged_coverage(method, BinomialSetting(n, gamma), prior);
        const double diff = std::fabs(r.value - gamma);
        report.checks.push_back(
            {format_line("prior-averaged coverage %s n=%d gamma=%.2f",
                         std::string(method_name(method)).c_str(), n, gamma),
             r.converged && diff <= scale * 1e-6,
             format_line("value=%.12f diff=%.3g", r.value, diff)});
      }
    }
  }
  return report;
}

}  // namespace binscore
