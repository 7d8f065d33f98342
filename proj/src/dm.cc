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


#include "levatt/dm.h"

#include <algorithm>
#include <cmath>
#include <optional>

#include "levatt/parallel.h"
#include "levatt/status.h"

namespace levatt {
namespace {

using nlohmann::json;

bool IsPlainNumber(std::string_view text) {
  size_t i = 0;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
  bool digit = false;
  bool point = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c >= '0' && c <= '9') {
      digit = true;
    } else if (c == '.' && !point) {
      point = true;
    } else {
      return false;
    }
  }
  return digit;
}

// Numeric view of a cell DM may touch: continuous values and plain-number
// ordinal tokens.
std::optional<double> NumericValue(const Cell& cell, ColumnKind kind) {
  if (const auto* v = std::get_if<double>(&cell)) return *v;
  if (kind == ColumnKind::kOrdinal) {
    if (const auto* s = std::get_if<std::string>(&cell);
        s != nullptr && IsPlainNumber(*s)) {
      return ParseNumber(*s);
    }
  }
  return std::nullopt;
}

}  // namespace

std::string_view SubstitutionName(Substitution s) {
  return s == Substitution::kIncrementMod10 ? "increment_mod10"
                                            : "uniform_excluding";
}

absl::StatusOr<Substitution> ParseSubstitution(std::string_view name) {
  if (name == "increment_mod10") return Substitution::kIncrementMod10;
  if (name == "uniform_excluding") return Substitution::kUniformExcluding;
  return MakeError(ErrorKind::kInvalidConfig,
                   "unknown substitution '" + std::string(name) + "'");
}

absl::Status DmConfig::Validate() const {
  if (!(p_min >= 0 && p_min <= p_max && p_max <= 1)) {
    return MakeError(ErrorKind::kInvalidConfig,
                     "need 0 <= p_min <= p_max <= 1, got p_min=" +
                         std::to_string(p_min) +
                         " p_max=" + std::to_string(p_max));
  }
  return absl::OkStatus();
}

json ToJson(const DmConfig& cfg) {
  return {{"p_min", cfg.p_min},
          {"p_max", cfg.p_max},
          {"substitution", SubstitutionName(cfg.substitution)},
          {"seed", cfg.seed}};
}

absl::StatusOr<DmConfig> DmConfigFromJson(const json& j) {
  if (!j.is_object()) {
    return MakeError(ErrorKind::kInvalidConfig, "DM config must be an object");
  }
  DmConfig cfg;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "p_min") {
        cfg.p_min = value.get<double>();
      } else if (key == "p_max") {
        cfg.p_max = value.get<double>();
      } else if (key == "substitution") {
        ASSIGN_OR_RETURN(cfg.substitution,
                         ParseSubstitution(value.get<std::string>()));
      } else if (key == "seed") {
        cfg.seed = value.get<uint64_t>();
      } else {
        return MakeError(ErrorKind::kInvalidConfig,
                         "unknown DM config key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    return MakeError(ErrorKind::kInvalidConfig,
                     std::string("bad DM config: ") + e.what());
  }
  RETURN_IF_ERROR(cfg.Validate());
  return cfg;
}

ColumnStats ColumnStats::Compute(const Dataset& ds) {
  ColumnStats stats;
  stats.max_abs.assign(ds.num_columns(), 0.0);
  for (const Record& r : ds.records()) {
    for (size_t c = 0; c < ds.num_columns(); ++c) {
      if (auto v = NumericValue(r[c], ds.schema().column(c).kind)) {
        stats.max_abs[c] = std::max(stats.max_abs[c], std::abs(*v));
      }
    }
  }
  return stats;
}

double FlipProbability(double value, double max_abs, const DmConfig& cfg) {
  if (max_abs <= 0) return cfg.p_min;
  const double ratio = std::min(std::abs(value) / max_abs, 1.0);
  return cfg.p_min + (cfg.p_max - cfg.p_min) * ratio;
}

absl::StatusOr<std::string> PerturbDigits(std::string_view text, double p,
                                          Substitution substitution,
                                          std::mt19937_64& rng) {
  if (!IsPlainNumber(text)) {
    return MakeError(ErrorKind::kNotNumericText,
                     "'" + std::string(text) + "' is not a plain number");
  }
  std::bernoulli_distribution flip(std::clamp(p, 0.0, 1.0));
  std::uniform_int_distribution<int> other(0, 8);
  std::string out(text);
  for (char& c : out) {
    if (c < '0' || c > '9') continue;
    if (!flip(rng)) continue;
    const int d = c - '0';
    int next;
    if (substitution == Substitution::kIncrementMod10) {
      next = (d + 1) % 10;
    } else {
      next = other(rng);
      if (next >= d) ++next;
    }
    c = static_cast<char>('0' + next);
  }
  return out;
}

absl::StatusOr<DmOutput> DigitModifierDetailed(const Dataset& synthetic,
                                               const DmConfig& cfg,
                                               const EncodingConfig& enc,
                                               int workers) {
  RETURN_IF_ERROR(cfg.Validate());
  const Schema& schema = synthetic.schema();
  const ColumnStats stats = ColumnStats::Compute(synthetic);
  std::vector<Record> records = synthetic.records();
  std::vector<std::vector<std::string>> rendered(
      records.size(), std::vector<std::string>(schema.size()));
  std::vector<absl::Status> row_status(records.size());

  ParallelFor(
      records.size(),
      [&](size_t r) {
        std::mt19937_64 rng = StreamRng(cfg.seed, r);
        for (size_t c = 0; c < schema.size(); ++c) {
          const Column& col = schema.column(c);
          const std::optional<double> value = NumericValue(records[r][c], col.kind);
          if (!value.has_value()) continue;
          const bool token = col.kind != ColumnKind::kContinuous;
          const std::string before =
              token ? std::get<std::string>(records[r][c])
                    : FormatFixed(*value, enc.PrecisionFor(col));
          const double p = FlipProbability(*value, stats.max_abs[c], cfg);
          absl::StatusOr<std::string> after =
              PerturbDigits(before, p, cfg.substitution, rng);
          if (!after.ok()) {
            row_status[r] = Annotate(after.status(),
                                     "row " + std::to_string(r) +
                                         ", column '" + col.name + "'");
            return;
          }
          rendered[r][c] = *after;
          if (*after == before) continue;
          if (token) {
            records[r][c] = *after;
          } else {
            records[r][c] = *ParseNumber(*after);
          }
        }
      },
      workers);
  for (const absl::Status& s : row_status) RETURN_IF_ERROR(s);
  ASSIGN_OR_RETURN(Dataset data, Dataset::Create(schema, std::move(records)));
  return DmOutput{std::move(data), std::move(rendered)};
}

absl::StatusOr<Dataset> DigitModifier(const Dataset& synthetic,
                                      const DmConfig& cfg,
                                      const EncodingConfig& enc, int workers) {
  ASSIGN_OR_RETURN(DmOutput out,
                   DigitModifierDetailed(synthetic, cfg, enc, workers));
  return std::move(out.data);
}

}  // namespace levatt
