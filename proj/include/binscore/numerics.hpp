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

#ifndef BINSCORE_NUMERICS_HPP_
#define BINSCORE_NUMERICS_HPP_

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

// Special functions, root finding and quadrature. Everything here is a pure
// function of its arguments.
namespace binscore {

/// Raised when an iterative method cannot deliver a result (no sign change,
/// iteration budget exhausted on a routine that has no usable fallback).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A real number in [0, 1]. Construction validates the range.
class Probability {
 public:
  constexpr Probability() = default;
  explicit Probability(double value);

  constexpr double value() const { return value_; }
  constexpr operator double() const { return value_; }

 private:
  double value_ = 0.0;
};

inline constexpr double kPi = 3.141592653589793238462643383279502884;

double log_binom_coeff(int n, int x);

/// P(X = x) for X ~ Bin(n, pi), with 0^0 = 1 at pi in {0, 1}.
double binom_pmf(int n, double pi, int x);

/// The whole pmf vector {P(X = 0), ..., P(X = n)}, each term computed in
/// log space and exponentiated.
std::vector<double> binom_pmf_all(int n, double pi);

double log_beta(double a, double b);

/// Density of Beta(a, b) at t. Returns +inf at a boundary where the density
/// is unbounded (a < 1 at t = 0, b < 1 at t = 1).
double beta_pdf(double a, double b, double t);

/// Regularized incomplete beta I_t(a, b), evaluated with a modified Lentz
/// continued fraction. The fraction is applied to I_t(a, b) when
/// t < (a + 1) / (a + b + 2) and to 1 - I_{1-t}(b, a) otherwise.
double reg_inc_beta(double a, double b, double t);

/// The p-quantile of Beta(a, b): the t with I_t(a, b) = p.
double beta_quantile(double a, double b, double p);

double norm_pdf(double z);
double norm_cdf(double z);
double norm_quantile(double p);

/// Quantile of the chi-squared distribution with one degree of freedom,
/// through the identity chi2(1) = Z^2.
double chi2_quantile_df1(double p);

inline constexpr double kRootTolerance = 1e-10;
inline constexpr int kRootMaxIterations = 200;

/// Brent's method on a bracket [lo, hi] with f(lo) * f(hi) <= 0. Terminates
/// when the bracket is narrower than `tol`; bisection steps guarantee
/// convergence. Throws NumericalError when there is no sign change.
double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double tol = kRootTolerance,
                 int max_iterations = kRootMaxIterations);

struct QuadratureSpec {
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  int nodes = 20;
  /// Points where the integrand may have a kink or jump. Must be strictly
  /// increasing; points outside the integration range are ignored.
  std::vector<double> breakpoints;
  /// Upper bound on the number of panels produced by bisection.
  int max_panels = 20000;

  void validate() const;
};

struct IntegrationResult {
  double value = 0.0;
  double error_estimate = 0.0;
  /// Number of panels in the final partition.
  int panels = 0;
  /// Bisections performed beyond the initial breakpoint partition.
  int subdivisions = 0;
  bool converged = true;
  /// Empty when converged.
  std::string warning;
};

/// Nodes and weights of the k-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussLegendreRule gauss_legendre(int k);

/// Adaptive piecewise Gauss-Legendre quadrature of f over [lo, hi]. The range
/// is first cut at every breakpoint; the panel with the largest error
/// estimate is then bisected until the summed error estimate meets
/// max(abs_tol, rel_tol * |value|). Nodes are strictly interior to each
/// panel, so f is never evaluated at lo, hi, or a breakpoint.
IntegrationResult integrate_piecewise(const std::function<double(double)>& f,
                                      const QuadratureSpec& spec, double lo,
                                      double hi);

}  // namespace binscore

#endif  // BINSCORE_NUMERICS_HPP_
