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

// Tabular data model, CSV ingestion/emission and the canonical string
// encoding of records. The encoding is the attack surface of the string
// membership attack: every byte it emits is something an edit distance can
// see, so it is fully deterministic and configurable.

#ifndef LEVATT_TABULAR_H_
#define LEVATT_TABULAR_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"

namespace levatt {

enum class ColumnKind { kContinuous, kOrdinal, kCategorical };

std::string_view ColumnKindName(ColumnKind kind);
absl::StatusOr<ColumnKind> ParseColumnKind(std::string_view name);

struct Column {
  std::string name;
  ColumnKind kind = ColumnKind::kContinuous;
  // Fixed-point digits used when rendering; unset means "use the encoding
  // default" (and shortest round-trip form when writing CSV).
  std::optional<int> precision;

  friend bool operator==(const Column&, const Column&) = default;
};

class Schema {
 public:
  Schema() = default;

  // Fails with InvalidConfig on duplicate or empty names, or a negative
  // precision.
  static absl::StatusOr<Schema> Create(std::vector<Column> columns);

  const std::vector<Column>& columns() const { return columns_; }
  const Column& column(size_t i) const { return columns_[i]; }
  size_t size() const { return columns_.size(); }
  std::optional<size_t> IndexOf(std::string_view name) const;

  friend bool operator==(const Schema&, const Schema&) = default;

 private:
  explicit Schema(std::vector<Column> columns) : columns_(std::move(columns)) {}

  std::vector<Column> columns_;
};

struct Missing {
  friend bool operator==(Missing, Missing) { return true; }
};

// Continuous cells hold doubles; ordinal and categorical cells hold tokens.
using Cell = std::variant<Missing, double, std::string>;
using Record = std::vector<Cell>;

inline bool IsMissing(const Cell& cell) {
  return std::holds_alternative<Missing>(cell);
}

class Dataset {
 public:
  Dataset() = default;

  // Validates that every record has one cell per column, continuous cells
  // are finite doubles (or missing) and token columns hold strings.
  static absl::StatusOr<Dataset> Create(Schema schema,
                                        std::vector<Record> records);

  const Schema& schema() const { return schema_; }
  const std::vector<Record>& records() const { return records_; }
  const Record& record(size_t i) const { return records_[i]; }
  size_t num_rows() const { return records_.size(); }
  size_t num_columns() const { return schema_.size(); }
  bool empty() const { return records_.empty(); }

  // First `n` records (all of them if n exceeds the row count).
  Dataset Head(size_t n) const;

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  Dataset(Schema schema, std::vector<Record> records)
      : schema_(std::move(schema)), records_(std::move(records)) {}

  Schema schema_;
  std::vector<Record> records_;
};

enum class EncodingTemplate {
  kNamedPairs,  // "age = 25.0, bmi = 17.5"
  kValuesOnly,  // "25.0, 17.5"
};

struct EncodingConfig {
  int precision_default = 4;
  std::map<std::string, int> per_column_precision;
  std::string missing_token = "NA";
  EncodingTemplate layout = EncodingTemplate::kNamedPairs;

  // Per-column override, then the schema's precision, then the default.
  int PrecisionFor(const Column& column) const;

  friend bool operator==(const EncodingConfig&,
                         const EncodingConfig&) = default;
};

nlohmann::json ToJson(const EncodingConfig& cfg);
// Unknown keys are rejected.
absl::StatusOr<EncodingConfig> EncodingConfigFromJson(const nlohmann::json& j);

// [{"name": ..., "kind": ..., "precision": int or null}, ...]
nlohmann::json ToJson(const Schema& schema);
absl::StatusOr<Schema> SchemaFromJson(const nlohmann::json& j);

struct EncodedRecord {
  std::string text;
  size_t source_index = 0;

  friend bool operator==(const EncodedRecord&, const EncodedRecord&) = default;
};

// Fixed-point rendering, correctly rounded from the binary value; exact ties
// resolve to even.
std::string FormatFixed(double value, int precision);

// Shortest text that parses back to the same double.
std::string FormatShortest(double value);

// Strict number parse: the whole (space-trimmed) text must be a finite
// decimal number.
std::optional<double> ParseNumber(std::string_view text);

absl::StatusOr<EncodedRecord> EncodeRecord(const Record& record,
                                           const Schema& schema,
                                           const EncodingConfig& cfg,
                                           size_t source_index = 0);

absl::StatusOr<std::vector<EncodedRecord>> EncodeDataset(
    const Dataset& ds, const EncodingConfig& cfg);

// Raw value texts of an encoded record, in column order. The last value
// runs to the end of the text.
absl::StatusOr<std::vector<std::string_view>> SplitEncodedRecord(
    std::string_view text, const Schema& schema, const EncodingConfig& cfg);

// Inverse of EncodeRecord up to numeric precision.
absl::StatusOr<Record> DecodeRecord(std::string_view text, const Schema& schema,
                                    const EncodingConfig& cfg);

using KindOverrides = std::map<std::string, ColumnKind>;

absl::StatusOr<Dataset> ParseCsv(std::string_view content,
                                 const KindOverrides& overrides = {});
absl::StatusOr<Dataset> LoadCsv(const std::string& path,
                                const KindOverrides& overrides = {});

std::string FormatCsv(const Dataset& ds);
// Writes to a temporary sibling and renames, so readers never observe a
// partially written file.
absl::Status WriteCsv(const Dataset& ds, const std::string& path);

// Atomic text-file write shared by every on-disk artifact.
absl::Status WriteFileAtomic(const std::string& path, std::string_view content);
absl::StatusOr<std::string> ReadFile(const std::string& path);

}  // namespace levatt

#endif  // LEVATT_TABULAR_H_
