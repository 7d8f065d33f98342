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

// String-similarity membership attack. A target record's score is the
// negated smallest Levenshtein distance between its canonical encoding and
// any synthetic record's encoding: verbatim or near-verbatim reproduction of
// a record's digits is evidence that it was in the generator's training set.

#ifndef LEVATT_LEVATT_H_
#define LEVATT_LEVATT_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "levatt/kernels/kernels.h"
#include "levatt/tabular.h"

namespace levatt {

// Decodes UTF-8 into Unicode scalar values; malformed sequences decode to
// U+FFFD one byte at a time.
std::u32string DecodeUtf8(std::string_view text);

// Insertions, deletions and substitutions of Unicode scalar values.
size_t Levenshtein(std::u32string_view a, std::u32string_view b);
size_t Levenshtein(std::string_view a, std::string_view b);

enum class DistanceNormalization {
  kRaw,          // the attack's score: plain edit distance
  kByMaxLength,  // distance / max(|a|, |b|), in [0, 1]
};

struct LevAttOptions {
  DistanceNormalization normalization = DistanceNormalization::kRaw;
  int workers = 0;  // 0: WorkerCount()
  kernels::Isa isa = kernels::ActiveIsa();
};

struct NearestSynthetic {
  double distance = 0;
  size_t index = 0;  // first synthetic record attaining `distance`
};

// Synthetic strings compiled once into a dense symbol alphabet so that every
// target can be scored against all of them with the bit-parallel kernels.
class SyntheticIndex {
 public:
  // EmptySyntheticSet if `synthetic` is empty.
  static absl::StatusOr<SyntheticIndex> Build(
      std::span<const std::string> synthetic);

  size_t size() const { return corpus_.size(); }

  NearestSynthetic Nearest(std::string_view target,
                           const LevAttOptions& options = {}) const;

  // -Nearest(target).distance.
  double Score(std::string_view target,
               const LevAttOptions& options = {}) const;

 private:
  std::vector<kernels::Symbol> ToSymbols(std::u32string_view text) const;

  std::vector<char32_t> alphabet_;  // sorted; symbol = position
  kernels::TextCorpus corpus_;
  std::vector<size_t> lengths_;
};

absl::StatusOr<double> LevAttScore(const EncodedRecord& target,
                                   std::span<const EncodedRecord> synthetic,
                                   const LevAttOptions& options = {});

// One score per target, in order, parallel over targets.
absl::StatusOr<std::vector<double>> LevAttScores(
    std::span<const std::string> targets,
    std::span<const std::string> synthetic, const LevAttOptions& options = {});

// Encodes both datasets with `cfg` and scores every target row.
// SchemaMismatch if the schemas differ.
absl::StatusOr<std::vector<double>> LevAttAttack(
    const Dataset& targets, const Dataset& synthetic, const EncodingConfig& cfg,
    const LevAttOptions& options = {});

// Debug output: the nearest synthetic record for every target.
absl::StatusOr<std::vector<NearestSynthetic>> LevAttNearest(
    const Dataset& targets, const Dataset& synthetic, const EncodingConfig& cfg,
    const LevAttOptions& options = {});

}  // namespace levatt

#endif  // LEVATT_LEVATT_H_
