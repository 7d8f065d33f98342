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

// Tendency-based Logit Processor: an inference-time defense that min-max
// scales a logit vector to [0, 1), bends it with the concave curve x^(1/t)
// and maps it back. Token order is preserved while low-probability tokens
// gain mass, so sampling drifts away from verbatim training sequences.

#ifndef LEVATT_TLP_H_
#define LEVATT_TLP_H_

#include <cstddef>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "json.hpp"
#include "levatt/metrics.h"
#include "levatt/tabular.h"

namespace levatt {

// Non-finite entries (-inf, NaN) are masked tokens.
using LogitVector = std::vector<double>;

enum class CurveKind { kPowerRoot };  // x -> x^(1/t)

struct TlpConfig {
  double t = 1;
  double epsilon = 1e-6;
  CurveKind curve = CurveKind::kPowerRoot;

  // InvalidConfig unless t >= 1 and epsilon > 0.
  absl::Status Validate() const;

  friend bool operator==(const TlpConfig&, const TlpConfig&) = default;
};

nlohmann::json ToJson(const TlpConfig& cfg);
absl::StatusOr<TlpConfig> TlpConfigFromJson(const nlohmann::json& j);

struct ScaledLogits {
  std::vector<double> values;  // finite entries in [0, 1)
  double min = 0;              // over finite entries
  double max = 0;
  double epsilon = 1e-6;
};

// AllMasked if no entry is finite.
absl::StatusOr<ScaledLogits> Scale(const LogitVector& logits, double epsilon);
double CurvePoint(double s, const TlpConfig& cfg);
ScaledLogits ApplyCurve(const ScaledLogits& scaled, const TlpConfig& cfg);
LogitVector Unscale(const ScaledLogits& scaled);

// Unscale(ApplyCurve(Scale(l))). Masked entries are copied bit for bit.
absl::StatusOr<LogitVector> TlpTransform(const LogitVector& logits,
                                         const TlpConfig& cfg);

// Max-subtracted softmax; masked entries get probability 0.
std::vector<double> Softmax(const LogitVector& logits);

// Index drawn from `probs` with one uniform variate.
size_t SampleCategorical(const std::vector<double>& probs,
                         std::mt19937_64& rng);

// Autoregressive logit stream: the logits for the token after `prefix`, or
// nullopt once the source decides the sequence is complete.
class LogitSource {
 public:
  virtual ~LogitSource() = default;
  virtual std::optional<LogitVector> Next(std::span<const size_t> prefix) = 0;
};

// Samples one sequence. With cfg unset the raw logits are used (vanilla
// sampling); otherwise every step goes through TlpTransform. AllMasked
// names the failing step.
absl::StatusOr<std::vector<size_t>> TlpSample(
    LogitSource& source, const std::optional<TlpConfig>& cfg,
    std::mt19937_64& rng);

struct TuneCriterion {
  enum class Kind { kAucBelow, kTprBelow };
  Kind kind = Kind::kAucBelow;
  double threshold = 0.55;
  double fpr = 0.1;  // kTprBelow only

  static TuneCriterion AucBelow(double threshold) {
    return {Kind::kAucBelow, threshold, 0.1};
  }
  static TuneCriterion TprBelow(double threshold, double fpr) {
    return {Kind::kTprBelow, threshold, fpr};
  }

  bool Met(const AttackResult& levatt) const;
  std::string ToString() const;  // "auc:0.55" or "tpr:0.125@0.1"
};

// Parses the ToString() form.
absl::StatusOr<TuneCriterion> ParseTuneCriterion(std::string_view text);

// 1, 2, ..., 20.
std::vector<double> DefaultTendencyGrid();

struct TuneStep {
  double t = 0;
  double auc = 0;
  double tpr = 0;
};

struct TuneResult {
  double t = 0;
  bool reached = false;
  Dataset synthetic;  // output at the returned t
  AuditReport report;
  std::vector<TuneStep> trace;
};

// Produces a synthetic dataset at tendency t.
using TendencyGenerator = std::function<absl::StatusOr<Dataset>(double t)>;

// Walks `t_grid` in order, auditing each generated set with LevAtt (members
// against non-members) and stopping at the first t whose report meets
// `criterion`. When none does, returns the last t with reached = false.
// Reports carry LevAtt metrics, fidelity against `members` and the trace.
absl::StatusOr<TuneResult> TuneTendency(const TendencyGenerator& generate,
                                        const Dataset& members,
                                        const Dataset& nonmembers,
                                        const EncodingConfig& enc,
                                        const TuneCriterion& criterion,
                                        std::span<const double> t_grid);

}  // namespace levatt

#endif  // LEVATT_TLP_H_
