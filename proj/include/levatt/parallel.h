// Copyright 2026 The LevAtt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LEVATT_PARALLEL_H_
#define LEVATT_PARALLEL_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>

namespace levatt {

// Worker count: LEVATT_WORKERS if set to a positive integer, otherwise the
// hardware concurrency (at least 1).
int WorkerCount();

// Calls fn(i) for every i in [0, n), statically partitioned into contiguous
// chunks over up to `workers` threads. fn must only write to slots owned by
// index i, which makes results independent of the partitioning.
void ParallelFor(size_t n, const std::function<void(size_t)>& fn,
                 int workers = 0);

// Independent, reproducible random stream for (seed, stream) pairs, e.g. one
// per row or per generated sequence.
std::mt19937_64 StreamRng(uint64_t seed, uint64_t stream);
std::mt19937_64 StreamRng(uint64_t seed, uint64_t stream, uint64_t substream);

}  // namespace levatt

#endif  // LEVATT_PARALLEL_H_
