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


// Audit pipelines behind the command-line tool: the member/non-member split,
// multi-attack audits, the sweep runner and the command dispatcher.

#ifndef LEVATT_PIPELINE_H_
#define LEVATT_PIPELINE_H_

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "json.hpp"
#include "levatt/metrics.h"
#include "levatt/tabular.h"

namespace levatt {

// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitConfig = 2,  // bad flags, bad config, unreadable input
  kExitSchemaMismatch = 3,
  kExitDegenerateLabels = 4,
  kExitNotReached = 5,  // TLP tuning never met its criterion
  kExitAllCellsFailed = 6,
};

int ExitCodeFor(const absl::Status& status);

// Members are the first n real rows and non-members the first n holdout
// rows, n = min(|real|, |holdout|, 1000).
inline constexpr size_t kMaxTargetsPerSide = 1000;
std::pair<Dataset, Dataset> MembershipSplit(const Dataset& real,
                                            const Dataset& holdout);

// "levatt", "dcr", "mc", "kde".
const std::vector<std::string>& KnownAttacks();
// InvalidConfig on unknown or repeated names, or an empty list.
absl::Status ValidateAttacks(const std::vector<std::string>& attacks);

// False-positive levels reported for every attack.
std::vector<double> ReportedFprLevels();

struct AuditOptions {
  std::vector<std::string> attacks = KnownAttacks();
  EncodingConfig encoding;
  bool fidelity = true;
  int workers = 0;
};

// Scores members and non-members against `synthetic` with every requested
// attack. Fidelity (against the members) is attached when it can be
// computed. SchemaMismatch if the three schemas differ.
absl::StatusOr<AuditReport> RunAudit(const Dataset& members,
                                     const Dataset& nonmembers,
                                     const Dataset& synthetic,
                                     const AuditOptions& options);

// Writes report.json and one ROC CSV per attack next to it
// (<stem>_roc_<attack>.csv).
absl::Status WriteReport(const AuditReport& report, const std::string& path);

struct SweepConfig {
  double mean = 300;
  double std = 5;
  int rows = 200;
  std::vector<int> digits{20};
  std::vector<int> size_multiplier{1};
  std::vector<int> order{1 << 30};
  std::vector<double> alpha{0.01};
  std::vector<double> t{1};
  std::vector<uint64_t> seeds{0};
  std::vector<std::string> attacks{"levatt"};
  bool fidelity = true;
  bool structure_mask = true;
  EncodingConfig encoding;
};

// {"simulation": {mean, std, rows}, "grid": {digits, size_multiplier,
// order, alpha, t, seeds}, "attacks": [...], "fidelity": bool,
// "structure_mask": bool, "encoding": {...}}. Orders are integers or "full". Unknown keys are
// rejected.
absl::StatusOr<SweepConfig> SweepConfigFromJson(const nlohmann::json& j);
nlohmann::json ToJson(const SweepConfig& cfg);

struct SweepCell {
  std::string id;
  int digits = 0;
  int size_multiplier = 1;
  int order = 1;
  double alpha = 0;
  double t = 1;
  uint64_t seed = 0;
};

// Grid in row-major order: digits, size, order, alpha, t, seed.
std::vector<SweepCell> EnumerateCells(const SweepConfig& cfg);

// Simulates, trains, generates and audits one cell.
absl::StatusOr<AuditReport> RunSweepCell(const SweepConfig& cfg,
                                         const SweepCell& cell, int workers);

struct SweepOutcome {
  size_t succeeded = 0;
  size_t failed = 0;
};

// Writes <out>/reports/<cell>.json for every successful cell and
// <out>/summary.csv with one row per cell. Cells run concurrently.
absl::StatusOr<SweepOutcome> RunSweep(const SweepConfig& cfg,
                                      const std::string& out_dir,
                                      std::ostream& progress);

// The command-line tool. args[0] is the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace levatt

#endif  // LEVATT_PIPELINE_H_
