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

#include "binscore/asymptotics.hpp"

#include <cmath>
#include <stdexcept>

namespace binscore {

namespace {

double sigma_of(double pi, int n) {
  if (!(pi >= 0.0 && pi <= 1.0)) throw std::domain_error("pi outside [0, 1]");
  if (n < 1) throw std::domain_error("n must be >= 1");
  return std::sqrt(pi * (1.0 - pi) / n);
}

void check_gamma(double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw std::domain_error("gamma must be in (0, 1)");
  }
}

}  // namespace

double asym_ew(double pi, int n, double gamma) {
  check_gamma(gamma);
  const double alpha = 1.0 - gamma;
  return 2.0 * norm_quantile(1.0 - alpha / 2.0) * sigma_of(pi, n);
}

double asym_eis(double pi, int n, double gamma) {
  check_gamma(gamma);
  const double alpha = 1.0 - gamma;
  const double q = norm_quantile(1.0 - alpha / 2.0);
  // 1 - Phi(q) is alpha / 2 by definition of q.
  return 4.0 * sigma_of(pi, n) * norm_pdf(q) / alpha;
}

AsymptoticReference asymptotic_reference(double pi, int n, double gamma) {
  return {pi, n, gamma, sigma_of(pi, n), asym_ew(pi, n, gamma),
          asym_eis(pi, n, gamma)};
}

double asym_ewis(double pi, int n, const LevelWeights& weights) {
  double total = 0.0;
  for (const auto& lv : weights.levels()) {
    total += lv.weight * asym_eis(pi, n, lv.gamma.value());
  }
  return total;
}

}  // namespace binscore
