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

#include "binscore/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

namespace binscore {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;
constexpr double kInvSqrt2 = 0.70710678118654752440084436210484903928;
constexpr double kInvSqrt2Pi = 0.39894228040143267793994605993438186848;

// std::lgamma writes the global signgam; the reentrant variant does not.
double log_gamma(double x) {
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

void require(bool condition, const char* what) {
  if (!condition) throw std::domain_error(what);
}

// Continued fraction for the incomplete beta (modified Lentz).
double beta_continued_fraction(double a, double b, double t) {
  constexpr int kMaxIterations = 100000;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * t / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * t / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * t / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 0.5 * kEps) return h;
  }
  throw NumericalError("reg_inc_beta: continued fraction did not converge");
}

// t^a (1-t)^b / (a B(a, b))
double beta_prefix(double a, double b, double t) {
  return std::exp(a * std::log(t) + b * std::log1p(-t) - log_beta(a, b)) / a;
}

}  // namespace

Probability::Probability(double value) : value_(value) {
  require(value >= 0.0 && value <= 1.0, "probability outside [0, 1]");
}

double log_binom_coeff(int n, int x) {
  require(n >= 0, "log_binom_coeff: n < 0");
  require(x >= 0 && x <= n, "log_binom_coeff: x outside [0, n]");
  if (x == 0 || x == n) return 0.0;
  return log_gamma(n + 1.0) - log_gamma(x + 1.0) - log_gamma(n - x + 1.0);
}

double binom_pmf(int n, double pi, int x) {
  require(n >= 0, "binom_pmf: n < 0");
  require(x >= 0 && x <= n, "binom_pmf: x outside [0, n]");
  require(pi >= 0.0 && pi <= 1.0, "binom_pmf: pi outside [0, 1]");
  if (pi == 0.0) return x == 0 ? 1.0 : 0.0;
  if (pi == 1.0) return x == n ? 1.0 : 0.0;
  const double log_p = log_binom_coeff(n, x) + x * std::log(pi) +
                       (n - x) * std::log1p(-pi);
  return std::exp(log_p);
}

std::vector<double> binom_pmf_all(int n, double pi) {
  require(n >= 0, "binom_pmf_all: n < 0");
  require(pi >= 0.0 && pi <= 1.0, "binom_pmf_all: pi outside [0, 1]");
  std::vector<double> pmf(static_cast<std::size_t>(n) + 1, 0.0);
  if (pi == 0.0) {
    pmf.front() = 1.0;
    return pmf;
  }
  if (pi == 1.0) {
    pmf.back() = 1.0;
    return pmf;
  }
  const double log_pi = std::log(pi);
  const double log_1m = std::log1p(-pi);
  const double log_n_fact = log_gamma(n + 1.0);
  for (int x = 0; x <= n; ++x) {
    const double log_c =
        log_n_fact - log_gamma(x + 1.0) - log_gamma(n - x + 1.0);
    pmf[static_cast<std::size_t>(x)] =
        std::exp(log_c + x * log_pi + (n - x) * log_1m);
  }
  return pmf;
}

double log_beta(double a, double b) {
  require(a > 0.0 && b > 0.0, "log_beta: parameters must be positive");
  return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

double beta_pdf(double a, double b, double t) {
  require(a > 0.0 && b > 0.0, "beta_pdf: parameters must be positive");
  if (t < 0.0 || t > 1.0) return 0.0;
  if (t == 0.0) {
    if (a < 1.0) return std::numeric_limits<double>::infinity();
    return a == 1.0 ? std::exp(-log_beta(a, b)) : 0.0;
  }
  if (t == 1.0) {
    if (b < 1.0) return std::numeric_limits<double>::infinity();
    return b == 1.0 ? std::exp(-log_beta(a, b)) : 0.0;
  }
  return std::exp((a - 1.0) * std::log(t) + (b - 1.0) * std::log1p(-t) -
                  log_beta(a, b));
}

double reg_inc_beta(double a, double b, double t) {
  require(a > 0.0 && b > 0.0, "reg_inc_beta: parameters must be positive");
  require(t >= 0.0 && t <= 1.0, "reg_inc_beta: t outside [0, 1]");
  if (t == 0.0) return 0.0;
  if (t == 1.0) return 1.0;
  if (t < (a + 1.0) / (a + b + 2.0)) {
    return beta_prefix(a, b, t) * beta_continued_fraction(a, b, t);
  }
  return 1.0 - beta_prefix(b, a, 1.0 - t) * beta_continued_fraction(b, a, 1.0 - t);
}

double beta_quantile(double a, double b, double p) {
  require(a > 0.0 && b > 0.0, "beta_quantile: parameters must be positive");
  require(p >= 0.0 && p <= 1.0, "beta_quantile: p outside [0, 1]");
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;

  // Starting point from the leading term of the series at either tail.
  const double mean = a / (a + b);
  const double lb = log_beta(a, b);
  double t = mean;
  const double lower_tail = std::exp((std::log(p * a) + lb) / a);
  const double upper_tail = 1.0 - std::exp((std::log((1.0 - p) * b) + lb) / b);
  if (lower_tail < mean) {
    t = lower_tail;
  } else if (upper_tail > mean) {
    t = upper_tail;
  }
  if (!(t > 0.0 && t < 1.0)) t = mean;

  // Safeguarded Newton: every iterate tightens [lo, hi], and a step that
  // leaves the bracket is replaced by bisection.
  double lo = 0.0;
  double hi = 1.0;
  for (int iter = 0; iter < 400; ++iter) {
    const double f = reg_inc_beta(a, b, t) - p;
    if (f == 0.0) return t;
    if (f < 0.0) {
      lo = t;
    } else {
      hi = t;
    }
    const double density = beta_pdf(a, b, t);
    double next = (density > 0.0 && std::isfinite(density)) ? t - f / density
                                                            : lo - 1.0;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::fabs(next - t) <= 2.0 * kEps * t || hi - lo <= 2.0 * kEps * hi) {
      return next;
    }
    t = next;
  }
  throw NumericalError("beta_quantile: iteration budget exhausted");
}

double norm_pdf(double z) { return kInvSqrt2Pi * std::exp(-0.5 * z * z); }

double norm_cdf(double z) { return 0.5 * std::erfc(-z * kInvSqrt2); }

double norm_quantile(double p) {
  require(p > 0.0 && p < 1.0, "norm_quantile: p must be in (0, 1)");
  // Rational approximation (Acklam), relative error ~1e-9, then polished by
  // Halley steps on the erfc-based cdf.
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  double x = 0.0;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
        q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  for (int i = 0; i < 2; ++i) {
    // Work in the smaller tail so the residual keeps its relative precision.
    const double e = x < 0.0 ? 0.5 * std::erfc(-x * kInvSqrt2) - p
                             : (1.0 - p) - 0.5 * std::erfc(x * kInvSqrt2);
    const double u = e / norm_pdf(x);
    x -= u / (1.0 + 0.5 * x * u);
  }
  return x;
}

double chi2_quantile_df1(double p) {
  require(p >= 0.0 && p < 1.0, "chi2_quantile_df1: p must be in [0, 1)");
  if (p == 0.0) return 0.0;
  const double z = norm_quantile(0.5 * (1.0 + p));
  return z * z;
}

double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double tol, int max_iterations) {
  require(lo <= hi, "find_root: lo > hi");
  require(tol > 0.0, "find_root: tol must be positive");
  double a = lo;
  double b = hi;
  double fa = f(a);
  double fb = f(b);
  if (std::isnan(fa) || std::isnan(fb)) {
    throw NumericalError("find_root: NaN at bracket end");
  }
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0)) {
    std::ostringstream msg;
    msg << "find_root: no sign change on [" << lo << ", " << hi << "]";
    throw NumericalError(msg.str());
  }
  double c = b;
  double fc = fb;
  double d = b - a;
  double e = d;
  for (int iter = 0; iter < max_iterations; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
    if (std::fabs(fc) < std::fabs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2.0 * kEps * std::fabs(b) + 0.5 * tol;
    const double xm = 0.5 * (c - b);
    if (std::fabs(xm) <= tol1 || fb == 0.0) return b;
    if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
      // Inverse quadratic interpolation, or secant when only two points.
      const double s = fb / fa;
      double p = 0.0;
      double q = 0.0;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::fabs(p);
      const double min1 = 3.0 * xm * q - std::fabs(tol1 * q);
      const double min2 = std::fabs(e * q);
      if (2.0 * p < std::min(min1, min2)) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += std::fabs(d) > tol1 ? d : std::copysign(tol1, xm);
    fb = f(b);
    if (std::isnan(fb)) throw NumericalError("find_root: NaN inside bracket");
  }
  throw NumericalError("find_root: maximum iterations exceeded");
}

void QuadratureSpec::validate() const {
  require(std::isfinite(rel_tol) && rel_tol > 0.0,
          "QuadratureSpec: rel_tol must be finite and positive");
  require(std::isfinite(abs_tol) && abs_tol > 0.0,
          "QuadratureSpec: abs_tol must be finite and positive");
  require(nodes >= 2, "QuadratureSpec: need at least 2 nodes per panel");
  require(max_panels >= 1, "QuadratureSpec: max_panels must be positive");
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    require(breakpoints[i - 1] < breakpoints[i],
            "QuadratureSpec: breakpoints must be strictly increasing");
  }
}

GaussLegendreRule gauss_legendre(int k) {
  require(k >= 1, "gauss_legendre: need at least one node");
  GaussLegendreRule rule;
  rule.nodes.resize(static_cast<std::size_t>(k));
  rule.weights.resize(static_cast<std::size_t>(k));
  const int half = (k + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (k + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int j = 1; j <= k; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
      }
      dp = k * (z * p0 - p1) / (z * z - 1.0);
      const double z_prev = z;
      z = z_prev - p0 / dp;
      if (std::fabs(z - z_prev) <= 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(k - 1 - i);
    rule.nodes[lo] = -z;
    rule.nodes[hi] = z;
    rule.weights[lo] = w;
    rule.weights[hi] = w;
  }
  return rule;
}

namespace {

struct Panel {
  double a;
  double b;
  double coarse;  // single-rule estimate on [a, b]
  double left;    // rule on [a, m]
  double right;   // rule on [m, b]
  double error() const { return std::fabs(left + right - coarse); }
  double value() const { return left + right; }
};

struct WorstFirst {
  bool operator()(const Panel& x, const Panel& y) const {
    const double ex = x.error();
    const double ey = y.error();
    if (ex != ey) return ex < ey;
    return x.a > y.a;
  }
};

}  // namespace

IntegrationResult integrate_piecewise(const std::function<double(double)>& f,
                                      const QuadratureSpec& spec, double lo,
                                      double hi) {
  spec.validate();
  require(lo < hi, "integrate_piecewise: lo must be < hi");
  const GaussLegendreRule rule = gauss_legendre(spec.nodes);

  auto apply_rule = [&](double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double v = f(mid + half * rule.nodes[i]);
      if (!std::isfinite(v)) {
        throw NumericalError("integrate_piecewise: non-finite integrand value");
      }
      sum += rule.weights[i] * v;
    }
    return half * sum;
  };
  auto make_panel = [&](double a, double b, double coarse) {
    const double m = 0.5 * (a + b);
    return Panel{a, b, coarse, apply_rule(a, m), apply_rule(m, b)};
  };

  std::vector<double> edges{lo};
  for (double bp : spec.breakpoints) {
    if (bp > lo && bp < hi) edges.push_back(bp);
  }
  edges.push_back(hi);

  std::priority_queue<Panel, std::vector<Panel>, WorstFirst> queue;
  std::vector<Panel> finished;  // too narrow to bisect further
  double total_error = 0.0;
  double total_value = 0.0;
  for (std::size_t i = 1; i < edges.size(); ++i) {
    Panel p = make_panel(edges[i - 1], edges[i],
                         apply_rule(edges[i - 1], edges[i]));
    total_error += p.error();
    total_value += p.value();
    queue.push(p);
  }
  const int initial_panels = static_cast<int>(queue.size());

  IntegrationResult result;
  auto target = [&] {
    return std::max(spec.abs_tol, spec.rel_tol * std::fabs(total_value));
  };
  while (!queue.empty() && total_error > target()) {
    if (static_cast<int>(queue.size() + finished.size()) >= spec.max_panels) {
      result.converged = false;
      result.warning = "integrate_piecewise: panel budget exhausted";
      break;
    }
    Panel worst = queue.top();
    queue.pop();
    const double m = 0.5 * (worst.a + worst.b);
    if (!(m > worst.a && m < worst.b) ||
        (worst.b - worst.a) <= 64.0 * kEps * std::max(1.0, std::fabs(m))) {
      finished.push_back(worst);
      continue;
    }
    Panel left = make_panel(worst.a, m, worst.left);
    Panel right = make_panel(m, worst.b, worst.right);
    total_error += left.error() + right.error() - worst.error();
    total_value += left.value() + right.value() - worst.value();
    queue.push(left);
    queue.push(right);
  }

  std::vector<Panel> all = std::move(finished);
  while (!queue.empty()) {
    all.push_back(queue.top());
    queue.pop();
  }
  std::sort(all.begin(), all.end(),
            [](const Panel& x, const Panel& y) { return x.a < y.a; });
  // Neumaier summation in positional order.
  double sum = 0.0;
  double comp = 0.0;
  double err = 0.0;
  for (const Panel& p : all) {
    const double v = p.value();
    const double t = sum + v;
    comp += std::fabs(sum) >= std::fabs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
    err += p.error();
  }
  result.value = sum + comp;
  result.error_estimate = err;
  result.panels = static_cast<int>(all.size());
  result.subdivisions = result.panels - initial_panels;
  if (result.converged &&
      err > std::max(spec.abs_tol, spec.rel_tol * std::fabs(result.value))) {
    result.converged = false;
    result.warning = "integrate_piecewise: tolerance not reached";
  }
  return result;
}

}  // namespace binscore
