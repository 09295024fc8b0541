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

#include "binscore/intervals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace binscore {

namespace {

// Brackets for the likelihood-ratio and HPD solvers are tighter than the
// library default so that mirrored outcomes agree to well below 1e-10.
constexpr double kLimitTolerance = 1e-14;

struct NamedMethod {
  MethodId id;
  std::string_view name;
};

constexpr std::array<NamedMethod, 11> kNames = {{
    {MethodId::kWald, "wald"},
    {MethodId::kRindskopf, "rindskopf"},
    {MethodId::kArcsineWald, "arcsine"},
    {MethodId::kWilson, "wilson"},
    {MethodId::kAgrestiCoull, "agresti-coull"},
    {MethodId::kLikelihoodRatio, "lr"},
    {MethodId::kClopperPearson, "clopper-pearson"},
    {MethodId::kJeffreysEqualTailed, "jeffreys-et"},
    {MethodId::kJeffreysHpd, "jeffreys-hpd"},
    {MethodId::kUniformEqualTailed, "uniform-et"},
    {MethodId::kUniformHpd, "uniform-hpd"},
}};

void check_outcome(int x, const BinomialSetting& setting) {
  if (x < 0 || x > setting.n()) {
    std::ostringstream msg;
    msg << "outcome x = " << x << " outside [0, " << setting.n() << "]";
    throw std::domain_error(msg.str());
  }
}

IntervalEstimate make_estimate(MethodId method, int x,
                               const BinomialSetting& setting, double raw_lower,
                               double raw_upper) {
  IntervalEstimate est;
  est.raw_lower = raw_lower;
  est.raw_upper = raw_upper;
  est.lower = std::clamp(raw_lower, 0.0, 1.0);
  est.upper = std::clamp(raw_upper, 0.0, 1.0);
  est.method = method;
  est.n = setting.n();
  est.gamma = setting.gamma();
  est.x = x;
  return est;
}

// For limits that are inside [0, 1] by construction; rounding noise at the
// boundary is not reported as overshoot.
IntervalEstimate make_bounded(MethodId method, int x,
                              const BinomialSetting& setting, double lower,
                              double upper) {
  lower = std::clamp(lower, 0.0, 1.0);
  upper = std::clamp(upper, 0.0, 1.0);
  return make_estimate(method, x, setting, lower, upper);
}

double expit(double z) { return 1.0 / (1.0 + std::exp(-z)); }

struct BetaPosterior {
  double a;
  double b;
};

BetaPosterior posterior(int x, int n, Prior prior) {
  const double p = prior == Prior::kUniform ? 1.0 : 0.5;
  return {p + x, p + (n - x)};
}

MethodId equal_tailed_id(Prior prior) {
  return prior == Prior::kUniform ? MethodId::kUniformEqualTailed
                                  : MethodId::kJeffreysEqualTailed;
}

MethodId hpd_id(Prior prior) {
  return prior == Prior::kUniform ? MethodId::kUniformHpd
                                  : MethodId::kJeffreysHpd;
}

}  // namespace

std::string_view method_name(MethodId method) {
  for (const auto& entry : kNames) {
    if (entry.id == method) return entry.name;
  }
  throw std::invalid_argument("unknown MethodId");
}

std::optional<MethodId> parse_method(std::string_view name) {
  for (const auto& entry : kNames) {
    if (entry.name == name) return entry.id;
  }
  return std::nullopt;
}

std::string valid_method_names() {
  std::string out;
  for (const auto& entry : kNames) {
    if (!out.empty()) out += ",";
    out += entry.name;
  }
  return out;
}

BinomialSetting::BinomialSetting(int n, double gamma)
    : n_(n), gamma_(gamma), alpha_(1.0 - gamma), q_alpha_(0.0) {
  if (n < 1) throw std::domain_error("BinomialSetting: n must be >= 1");
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw std::domain_error("BinomialSetting: gamma must be in (0, 1)");
  }
  q_alpha_ = norm_quantile(1.0 - alpha_ / 2.0);
}

double binomial_deviance(int x, int n, double pi) {
  // 0 log 0 = 0 for the terms that vanish at x = 0 or x = n.
  double d = 0.0;
  if (x > 0) d += x * std::log(static_cast<double>(x) / (n * pi));
  if (x < n) d += (n - x) * std::log(static_cast<double>(n - x) / (n * (1.0 - pi)));
  return 2.0 * d;
}

IntervalEstimate wald(int x, const BinomialSetting& setting) {
  check_outcome(x, setting);
  const int n = setting.n();
  const double p_hat = static_cast<double>(x) / n;
  const double se = std::sqrt(p_hat * (1.0 - p_hat) / n);
  const double half = setting.q_alpha() * se;
  return make_estimate(MethodId::kWald, x, setting, p_hat - half, p_hat + half);
}

IntervalEstimate rindskopf(int x, const BinomialSetting& setting) {
  check_outcome(x, setting);
  const double successes = x + 0.5;
  const double failures = setting.n() - x + 0.5;
  const double logit_hat = std::log(successes / failures);
  const double se = std::sqrt(1.0 / successes + 1.0 / failures);
  const double half = setting.q_alpha() * se;
  return make_bounded(MethodId::kRindskopf, x, setting,
                      expit(logit_hat - half), expit(logit_hat + half));
}

IntervalEstimate arcsine_wald(int x, const BinomialSetting& setting) {
  check_outcome(x, setting);
  const int n = setting.n();
  const double phi_hat = std::asin(std::sqrt(static_cast<double>(x) / n));
  const double half = setting.q_alpha() / std::sqrt(4.0 * n);
  // Truncation happens on the angle scale, where sin^2 is monotone.
  const double lo = std::max(phi_hat - half, 0.0);
  const double hi = std::min(phi_hat + half, kPi / 2.0);
  const double s_lo = std::sin(lo);
  const double c_hi = std::cos(hi);
  // 1 - cos^2 keeps the upper limit symmetric with the lower one.
  return make_bounded(MethodId::kArcsineWald, x, setting, s_lo * s_lo,
                      1.0 - c_hi * c_hi);
}

IntervalEstimate wilson(int x, const BinomialSetting& setting) {
  check_outcome(x, setting);
  const int n = setting.n();
  const double q = setting.q_alpha();
  const double q2 = q * q;
  const double p_hat = static_cast<double>(x) / n;
  const double center = (x + q2 / 2.0) / (n + q2);
  const double half = q * std::sqrt(static_cast<double>(n)) / (n + q2) *
                      std::sqrt(p_hat * (1.0 - p_hat) + q2 / (4.0 * n));
  // The limits at x = 0 and x = n are exactly 0 and 1; the closed form
  // leaves rounding residue there.
  const double lower = x == 0 ? 0.0 : center - half;
  const double upper = x == n ? 1.0 : center + half;
  return make_bounded(MethodId::kWilson, x, setting, lower, upper);
}

IntervalEstimate agresti_coull(int x, const BinomialSetting& setting) {
  check_outcome(x, setting);
  const double n_tilde = setting.n() + 4.0;
  const double p_tilde = (x + 2.0) / n_tilde;
  const double half =
      setting.q_alpha() * std::sqrt(p_tilde * (1.0 - p_tilde) / n_tilde);
  return make_estimate(MethodId::kAgrestiCoull, x, setting, p_tilde - half,
                       p_tilde + half);
}

IntervalEstimate likelihood_ratio(int x, const BinomialSetting& setting) {
  check_outcome(x, setting);
  const int n = setting.n();
  const double crit = chi2_quantile_df1(setting.gamma());
  // At x = 0 the deviance is -2 n log(1 - pi); at x = n it is -2 n log(pi).
  if (x == 0) {
    return make_bounded(MethodId::kLikelihoodRatio, x, setting, 0.0,
                        -std::expm1(-crit / (2.0 * n)));
  }
  if (x == n) {
    return make_bounded(MethodId::kLikelihoodRatio, x, setting,
                        std::exp(-crit / (2.0 * n)), 1.0);
  }
  const double p_hat = static_cast<double>(x) / n;
  auto excess = [&](double pi) { return binomial_deviance(x, n, pi) - crit; };
  constexpr double kLowEnd = std::numeric_limits<double>::min();
  constexpr double kHighEnd = 1.0 - std::numeric_limits<double>::epsilon() / 2;
  const double lower =
      excess(kLowEnd) <= 0.0
          ? 0.0
          : find_root(excess, kLowEnd, p_hat, kLimitTolerance);
  const double upper =
      excess(kHighEnd) <= 0.0
          ? 1.0
          : find_root(excess, p_hat, kHighEnd, kLimitTolerance);
  return make_bounded(MethodId::kLikelihoodRatio, x, setting, lower, upper);
}

IntervalEstimate clopper_pearson(int x, const BinomialSetting& setting) {
  check_outcome(x, setting);
  const int n = setting.n();
  const double lower_p = (1.0 - setting.gamma()) / 2.0;
  const double upper_p = (1.0 + setting.gamma()) / 2.0;
  const double log_half_alpha = std::log(setting.alpha() / 2.0);
  const double lower =
      x == 0 ? 0.0
      : x == n ? std::exp(log_half_alpha / n)
               : beta_quantile(x, n - x + 1.0, lower_p);
  const double upper =
      x == n ? 1.0
      : x == 0 ? -std::expm1(log_half_alpha / n)
               : beta_quantile(x + 1.0, n - x, upper_p);
  return make_bounded(MethodId::kClopperPearson, x, setting, lower, upper);
}

IntervalEstimate equal_tailed(int x, const BinomialSetting& setting,
                              Prior prior) {
  check_outcome(x, setting);
  const auto [a, b] = posterior(x, setting.n(), prior);
  return make_bounded(equal_tailed_id(prior), x, setting,
                      beta_quantile(a, b, (1.0 - setting.gamma()) / 2.0),
                      beta_quantile(a, b, (1.0 + setting.gamma()) / 2.0));
}

IntervalEstimate hpd(int x, const BinomialSetting& setting, Prior prior) {
  check_outcome(x, setting);
  const int n = setting.n();
  const double gamma = setting.gamma();
  const MethodId id = hpd_id(prior);
  const auto [a, b] = posterior(x, n, prior);

  // Monotone posterior density at the extremes.
  if (x == 0) {
    return make_bounded(id, x, setting, 0.0, beta_quantile(a, b, gamma));
  }
  if (x == n) {
    return make_bounded(id, x, setting, beta_quantile(a, b, 1.0 - gamma), 1.0);
  }
  if (a == b) {
    IntervalEstimate est = equal_tailed(x, setting, prior);
    est.method = id;
    return est;
  }

  // Both posterior parameters exceed 1 here, so the density vanishes at 0
  // and 1 and is unimodal. Parametrize by the lower limit l; the upper
  // limit carries the remaining mass gamma.
  auto upper_for = [&](double l) {
    const double mass = std::min(reg_inc_beta(a, b, l) + gamma, 1.0);
    return beta_quantile(a, b, mass);
  };
  auto density_gap = [&](double l) {
    return beta_pdf(a, b, l) - beta_pdf(a, b, upper_for(l));
  };
  const double l_max = beta_quantile(a, b, 1.0 - gamma);
  const double lower = find_root(density_gap, 0.0, l_max, kLimitTolerance);
  const double upper = upper_for(lower);

  const double mass = reg_inc_beta(a, b, upper) - reg_inc_beta(a, b, lower);
  if (std::fabs(mass - gamma) > 1e-9) {
    std::ostringstream msg;
    msg << "hpd: posterior mass " << mass << " differs from " << gamma;
    throw NumericalError(msg.str());
  }
  return make_bounded(id, x, setting, lower, upper);
}

IntervalEstimate compute_interval(MethodId method, int x,
                                  const BinomialSetting& setting) {
  switch (method) {
    case MethodId::kWald:
      return wald(x, setting);
    case MethodId::kRindskopf:
      return rindskopf(x, setting);
    case MethodId::kArcsineWald:
      return arcsine_wald(x, setting);
    case MethodId::kWilson:
      return wilson(x, setting);
    case MethodId::kAgrestiCoull:
      return agresti_coull(x, setting);
    case MethodId::kLikelihoodRatio:
      return likelihood_ratio(x, setting);
    case MethodId::kClopperPearson:
      return clopper_pearson(x, setting);
    case MethodId::kJeffreysEqualTailed:
      return equal_tailed(x, setting, Prior::kJeffreys);
    case MethodId::kJeffreysHpd:
      return hpd(x, setting, Prior::kJeffreys);
    case MethodId::kUniformEqualTailed:
      return equal_tailed(x, setting, Prior::kUniform);
    case MethodId::kUniformHpd:
      return hpd(x, setting, Prior::kUniform);
  }
  throw std::invalid_argument("compute_interval: unknown method");
}

std::vector<IntervalEstimate> compute_all_intervals(
    MethodId method, const BinomialSetting& setting) {
  std::vector<IntervalEstimate> out;
  out.reserve(static_cast<std::size_t>(setting.n()) + 1);
  for (int x = 0; x <= setting.n(); ++x) {
    out.push_back(compute_interval(method, x, setting));
  }
  return out;
}

std::vector<double> all_endpoints(
    const std::vector<IntervalEstimate>& intervals) {
  std::vector<double> points;
  points.reserve(2 * intervals.size());
  for (const auto& ci : intervals) {
    for (double v : {ci.lower, ci.upper}) {
      if (v > 0.0 && v < 1.0) points.push_back(v);
    }
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

std::vector<double> all_endpoints(MethodId method,
                                  const BinomialSetting& setting) {
  return all_endpoints(compute_all_intervals(method, setting));
}

}  // namespace binscore
