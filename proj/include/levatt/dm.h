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

// Digit Modifier: a post-processing defense that flips individual digits of
// numeric cells. Each digit of a value x flips with probability
// p_min + (p_max - p_min) |x| / M, where M is the largest |value| in x's
// column, so small (more identifying) magnitudes change least.

#ifndef LEVATT_DM_H_
#define LEVATT_DM_H_

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "json.hpp"
#include "levatt/tabular.h"

namespace levatt {

enum class Substitution {
  kIncrementMod10,    // d -> (d + 1) mod 10
  kUniformExcluding,  // uniform over the nine other digits
};

std::string_view SubstitutionName(Substitution s);
absl::StatusOr<Substitution> ParseSubstitution(std::string_view name);

struct DmConfig {
  double p_min = 0;
  double p_max = 0;
  Substitution substitution = Substitution::kIncrementMod10;
  uint64_t seed = 0;

  // InvalidConfig unless 0 <= p_min <= p_max <= 1.
  absl::Status Validate() const;

  friend bool operator==(const DmConfig&, const DmConfig&) = default;
};

nlohmann::json ToJson(const DmConfig& cfg);
absl::StatusOr<DmConfig> DmConfigFromJson(const nlohmann::json& j);

// Largest |value| per column; zero for columns without numeric cells.
struct ColumnStats {
  std::vector<double> max_abs;

  static ColumnStats Compute(const Dataset& ds);
};

// p_min when max_abs is zero.
double FlipProbability(double value, double max_abs, const DmConfig& cfg);

// Flips each digit of a rendered number with probability p. Sign, decimal
// point and digit count are kept. NotNumericText unless `text` is an
// optional sign, digits and at most one decimal point.
absl::StatusOr<std::string> PerturbDigits(std::string_view text, double p,
                                          Substitution substitution,
                                          std::mt19937_64& rng);

struct DmOutput {
  Dataset data;
  // rendered[row][col]: the perturbed text of every numeric cell, empty for
  // other cells. Leading zeros produced by flips survive here but not in the
  // re-parsed values.
  std::vector<std::vector<std::string>> rendered;
};

// Perturbs continuous columns, and ordinal columns whose tokens are plain
// numbers, after rendering each value at its encoding precision. Cells with
// no flipped digit are returned untouched. Row r draws from
// StreamRng(cfg.seed, r).
absl::StatusOr<DmOutput> DigitModifierDetailed(const Dataset& synthetic,
                                               const DmConfig& cfg,
                                               const EncodingConfig& enc = {},
                                               int workers = 0);

absl::StatusOr<Dataset> DigitModifier(const Dataset& synthetic,
                                      const DmConfig& cfg,
                                      const EncodingConfig& enc = {},
                                      int workers = 0);

}  // namespace levatt

#endif  // LEVATT_DM_H_
