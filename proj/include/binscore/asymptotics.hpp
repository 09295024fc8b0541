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

#ifndef BINSCORE_ASYMPTOTICS_HPP_
#define BINSCORE_ASYMPTOTICS_HPP_

#include "binscore/evaluation.hpp"

// Normal-approximation reference curves for expected width and expected
// interval score. For the interval pi_hat -/+ q sigma with
// sigma = sqrt(pi (1 - pi) / n):
//   E[W]  = 2 q sigma
//   E[IS] = 2 sigma phi(q) / (1 - Phi(q)) = 4 sigma phi(q) / alpha.
namespace binscore {

struct AsymptoticReference {
  double pi = 0.0;
  int n = 0;
  double gamma = 0.0;
  double sigma = 0.0;
  double asym_ew = 0.0;
  double asym_eis = 0.0;
};

AsymptoticReference asymptotic_reference(double pi, int n, double gamma);

double asym_ew(double pi, int n, double gamma);
double asym_eis(double pi, int n, double gamma);
/// Weighted sum of asym_eis over the levels.
double asym_ewis(double pi, int n, const LevelWeights& weights);

}  // namespace binscore

#endif  // BINSCORE_ASYMPTOTICS_HPP_
