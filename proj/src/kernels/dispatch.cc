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

#include <cstdlib>
#include <string_view>

#include "levatt/kernels/kernels.h"

namespace levatt::kernels {

std::string_view IsaName(Isa isa) {
  return isa == Isa::kAvx2 ? "avx2" : "scalar";
}

Isa DetectIsa() {
#if defined(__x86_64__) && defined(LEVATT_BUILD_AVX2)
  static const bool has_avx2 = __builtin_cpu_supports("avx2");
  if (has_avx2) return Isa::kAvx2;
#endif
  return Isa::kScalar;
}

Isa ActiveIsa() {
  static const Isa isa = [] {
    const char* forced = std::getenv("LEVATT_SIMD");
    if (forced != nullptr && std::string_view(forced) == "scalar") {
      return Isa::kScalar;
    }
    return DetectIsa();
  }();
  return isa;
}

MinDistance MinEditDistance(Isa isa, const PatternMasks& pattern,
                            const TextCorpus& corpus, int bound) {
  if (isa == Isa::kAvx2 && DetectIsa() == Isa::kAvx2) {
    return MinEditDistanceAvx2(pattern, corpus, bound);
  }
  return MinEditDistanceScalar(pattern, corpus, bound);
}

MinDistance DispatchMinEditDistance(const PatternMasks& pattern,
                                    const TextCorpus& corpus, int bound) {
  return MinEditDistance(ActiveIsa(), pattern, corpus, bound);
}

void SquaredDistances(Isa isa, std::span<const double> query,
                      const double* rows, size_t dim, std::span<double> out) {
  if (isa == Isa::kAvx2 && DetectIsa() == Isa::kAvx2) {
    SquaredDistancesAvx2(query, rows, dim, out);
  } else {
    SquaredDistancesScalar(query, rows, dim, out);
  }
}

void DispatchSquaredDistances(std::span<const double> query, const double* rows,
                              size_t dim, std::span<double> out) {
  SquaredDistances(ActiveIsa(), query, rows, dim, out);
}

}  // namespace levatt::kernels
