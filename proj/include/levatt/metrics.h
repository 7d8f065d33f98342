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

// Audit metrics over membership scorings (AUC, TPR at a fixed FPR, ROC),
// fidelity distances between real and synthetic data, and a ridge-regression
// utility probe. Everything here is a pure function of its inputs.

#ifndef LEVATT_METRICS_H_
#define LEVATT_METRICS_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "levatt/tabular.h"

namespace levatt {

// Scores paired with ground-truth membership labels; higher score means
// "more likely a member".
struct AttackScoring {
  std::vector<double> scores;
  std::vector<bool> members;

  static AttackScoring FromGroups(std::span<const double> member_scores,
                                  std::span<const double> nonmember_scores);
};

// Mann-Whitney U over (members x non-members), ties counted one half.
// DegenerateLabels unless both classes are present.
absl::StatusOr<double> AucRoc(const AttackScoring& scoring);

// Best TPR over thresholds "score >= g" whose empirical FPR is <= level.
absl::StatusOr<double> TprAtFpr(const AttackScoring& scoring, double level);

struct RocPoint {
  double fpr = 0;
  double tpr = 0;

  friend bool operator==(const RocPoint&, const RocPoint&) = default;
};
using RocCurve = std::vector<RocPoint>;

// Staircase from (0,0) to (1,1), one vertex per distinct score.
absl::StatusOr<RocCurve> ComputeRocCurve(const AttackScoring& scoring);
double TrapezoidArea(const RocCurve& curve);
std::string RocCsv(const RocCurve& curve);

// Exact 1-Wasserstein distance between two empirical distributions
// (integral of |F_a - F_b|). Either sample may be empty only if both are.
double Wasserstein1D(std::span<const double> a, std::span<const double> b);

// Mean over continuous columns of Wasserstein1D after min-max scaling each
// column by the real data's range.
absl::StatusOr<double> WassersteinFidelity(const Dataset& real,
                                           const Dataset& synthetic);

// Gaussian-kernel bandwidth; unset means the median pairwise distance of the
// pooled sample.
struct MmdBandwidth {
  std::optional<double> sigma;
};

// Biased squared MMD with k(x,y) = exp(-|x-y|^2 / (2 sigma^2)) over one-hot
// features scaled by the real data. Clamped at zero.
absl::StatusOr<double> MmdFidelity(const Dataset& real,
                                   const Dataset& synthetic,
                                   MmdBandwidth bandwidth = {});

// Ridge regression of `target` on the other columns (intercept unpenalized),
// fit on train, RMSE on test.
absl::StatusOr<double> UtilityRmse(const Dataset& train, const Dataset& test,
                                   const std::string& target,
                                   double lambda = 1.0);

// Formats an FPR level as a report key, e.g. 0.1 -> "0.1".
std::string FprKey(double level);

struct AttackResult {
  double auc = 0;
  std::map<std::string, double> tpr_at_fpr;
  RocCurve roc;
  nlohmann::json params = nlohmann::json::object();

  friend bool operator==(const AttackResult&, const AttackResult&) = default;
};

// Runs AUC, TPR at every level and the ROC curve.
absl::StatusOr<AttackResult> EvaluateAttack(
    const AttackScoring& scoring, std::span<const double> fpr_levels);

struct Fidelity {
  double wasserstein_mean = 0;
  double mmd = 0;

  friend bool operator==(const Fidelity&, const Fidelity&) = default;
};

struct Utility {
  double rmse_real = 0;
  double rmse_synth = 0;

  friend bool operator==(const Utility&, const Utility&) = default;
};

struct AuditReport {
  std::map<std::string, AttackResult> attacks;
  std::optional<Fidelity> fidelity;
  std::optional<Utility> utility;
  nlohmann::json provenance = nlohmann::json::object();

  friend bool operator==(const AuditReport&, const AuditReport&) = default;
};

nlohmann::json ToJson(const AuditReport& report);
absl::StatusOr<AuditReport> AuditReportFromJson(const nlohmann::json& j);

struct RunSummary {
  std::string label;
  double auc = 0;
};

struct TopKSummary {
  size_t k = 0;
  double mean_auc = 0;
  double std_auc = 0;
  std::vector<std::string> labels;
};

// The k highest-AUC runs (ties broken by label) and their mean and
// population standard deviation.
TopKSummary SummarizeTopK(std::vector<RunSummary> runs, size_t k);

}  // namespace levatt

#endif  // LEVATT_METRICS_H_
