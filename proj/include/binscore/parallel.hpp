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

#ifndef BINSCORE_PARALLEL_HPP_
#define BINSCORE_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace binscore {

/// std::thread::hardware_concurrency(), or 1 when unknown.
unsigned default_workers();

/// Runs body(i) for i in [0, count) on up to `workers` threads. Items are
/// claimed from a shared counter, so callers must write results into
/// per-index slots. The exception from the lowest failing index, if any, is
/// rethrown after all threads join.
void parallel_for(std::size_t count, unsigned workers,
                  const std::function<void(std::size_t)>& body);

}  // namespace binscore

#endif  // BINSCORE_PARALLEL_HPP_
