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

// Data-parallel inner loops. Every kernel has a portable scalar reference
// and, on x86-64, an AVX2 variant; the Dispatch* entry points pick one at
// runtime. Variants are required to be bit-identical, which is why the
// scalar distance kernel reproduces the SIMD lane-wise summation order.

#ifndef LEVATT_KERNELS_KERNELS_H_
#define LEVATT_KERNELS_KERNELS_H_

#include <climits>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace levatt::kernels {

enum class Isa { kScalar, kAvx2 };

std::string_view IsaName(Isa isa);

// Best ISA supported by this CPU and build.
Isa DetectIsa();

// DetectIsa() unless LEVATT_SIMD=scalar is set in the environment.
Isa ActiveIsa();

// ---------------------------------------------------------------------------
// Edit distance (bit-parallel, Myers/Hyyro block formulation).

using Symbol = uint32_t;

inline constexpr int kNoBound = INT_MAX;

// Match-mask table of a pattern over a dense symbol alphabet [0, alphabet).
struct PatternMasks {
  int length = 0;
  int blocks = 0;
  int alphabet = 0;
  std::vector<uint64_t> peq;  // peq[symbol * blocks + block]

  uint64_t at(Symbol s, int block) const {
    return peq[static_cast<size_t>(s) * blocks + block];
  }
};

// Symbols must be < alphabet.
PatternMasks BuildPatternMasks(std::span<const Symbol> pattern, int alphabet);

// A set of texts stored back to back; text i is
// symbols[offsets[i], offsets[i + 1]).
struct TextCorpus {
  std::vector<Symbol> symbols;
  std::vector<uint32_t> offsets{0};

  size_t size() const { return offsets.size() - 1; }
  std::span<const Symbol> text(size_t i) const {
    return {symbols.data() + offsets[i], symbols.data() + offsets[i + 1]};
  }
  void Add(std::span<const Symbol> text) {
    symbols.insert(symbols.end(), text.begin(), text.end());
    offsets.push_back(static_cast<uint32_t>(symbols.size()));
  }
};

// Exact distance when it is < bound; otherwise some value >= bound.
int EditDistanceScalar(const PatternMasks& pattern,
                       std::span<const Symbol> text, int bound = kNoBound);

struct MinDistance {
  int distance = kNoBound;
  // First corpus index attaining `distance`; size() if nothing beat `bound`.
  size_t index = 0;
};

// Minimum distance from the pattern to any corpus text. Pairs that provably
// cannot beat the running minimum are abandoned early.
MinDistance MinEditDistanceScalar(const PatternMasks& pattern,
                                  const TextCorpus& corpus,
                                  int bound = kNoBound);
MinDistance MinEditDistanceAvx2(const PatternMasks& pattern,
                                const TextCorpus& corpus,
                                int bound = kNoBound);
MinDistance DispatchMinEditDistance(const PatternMasks& pattern,
                                    const TextCorpus& corpus,
                                    int bound = kNoBound);
MinDistance MinEditDistance(Isa isa, const PatternMasks& pattern,
                            const TextCorpus& corpus, int bound = kNoBound);

// ---------------------------------------------------------------------------
// Squared Euclidean distances from one query to each row of a row-major
// matrix with `dim` columns. out.size() rows are read.

void SquaredDistancesScalar(std::span<const double> query, const double* rows,
                            size_t dim, std::span<double> out);
void SquaredDistancesAvx2(std::span<const double> query, const double* rows,
                          size_t dim, std::span<double> out);
void DispatchSquaredDistances(std::span<const double> query, const double* rows,
                              size_t dim, std::span<double> out);
void SquaredDistances(Isa isa, std::span<const double> query,
                      const double* rows, size_t dim, std::span<double> out);

}  // namespace levatt::kernels

#endif  // LEVATT_KERNELS_KERNELS_H_
