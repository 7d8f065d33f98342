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

#include "levatt/tabular.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "levatt/status.h"

namespace levatt {
namespace {

constexpr double kContinuousShare = 0.99;

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

struct CsvField {
  std::string text;
  bool quoted = false;
};

using CsvRow = std::vector<CsvField>;

// RFC-4180 reader. Returns rows including the header; blank lines are skipped.
absl::StatusOr<std::vector<CsvRow>> SplitCsv(std::string_view content) {
  std::vector<CsvRow> rows;
  CsvRow row;
  CsvField field;
  bool in_quotes = false;
  bool row_has_content = false;
  size_t line = 1;

  auto end_field = [&] {
    row.push_back(std::move(field));
    field = CsvField{};
  };
  auto end_row = [&] {
    if (row_has_content || !row.empty()) {
      end_field();
      rows.push_back(std::move(row));
    }
    row = CsvRow{};
    field = CsvField{};
    row_has_content = false;
  };

  for (size_t i = 0; i < content.size(); ++i) {
    const char c = content[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < content.size() && content[i + 1] == '"') {
          field.text.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.text.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        in_quotes = true;
        field.quoted = true;
        row_has_content = true;
        break;
      case ',':
        end_field();
        row_has_content = true;
        break;
      case '\r':
        break;
      case '\n':
        end_row();
        ++line;
        break;
      default:
        field.text.push_back(c);
        row_has_content = true;
    }
  }
  if (in_quotes) {
    return MakeError(ErrorKind::kRaggedRow,
                     absl::StrCat("unterminated quoted field near line ", line));
  }
  end_row();
  return rows;
}

bool NeedsQuoting(std::string_view token) {
  return token.empty() || token == "NA" ||
         token.find_first_of(",\"\r\n") != std::string_view::npos ||
         token.front() == ' ' || token.back() == ' ';
}

std::string QuoteCsv(std::string_view token) {
  std::string out = "\"";
  for (char c : token) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

bool IsMissingField(const CsvField& f) {
  if (f.quoted) return false;
  std::string_view t = Trim(f.text);
  return t.empty() || t == "NA";
}

absl::StatusOr<std::string> RenderCell(const Cell& cell, const Column& column,
                                       const EncodingConfig& cfg) {
  if (IsMissing(cell)) return cfg.missing_token;
  if (const double* v = std::get_if<double>(&cell)) {
    if (!std::isfinite(*v)) {
      return MakeError(ErrorKind::kInvalidCell,
                       absl::StrCat("non-finite value in column '",
                                    column.name, "'"));
    }
    return FormatFixed(*v, cfg.PrecisionFor(column));
  }
  return std::get<std::string>(cell);
}

absl::StatusOr<Cell> ParseEncodedValue(std::string_view text,
                                       const Column& column,
                                       const EncodingConfig& cfg) {
  if (text == cfg.missing_token) return Cell{Missing{}};
  if (column.kind == ColumnKind::kContinuous) {
    std::optional<double> v = ParseNumber(text);
    if (!v.has_value() || Trim(text).size() != text.size()) {
      return MakeError(ErrorKind::kDecodeFailure,
                       absl::StrCat("'", std::string(text), "' is not a number for column '",
                                    column.name, "'"));
    }
    return Cell{*v};
  }
  return Cell{std::string(text)};
}

}  // namespace

std::string_view ColumnKindName(ColumnKind kind) {
  switch (kind) {
    case ColumnKind::kContinuous:
      return "continuous";
    case ColumnKind::kOrdinal:
      return "ordinal";
    case ColumnKind::kCategorical:
      return "categorical";
  }
  return "continuous";
}

absl::StatusOr<ColumnKind> ParseColumnKind(std::string_view name) {
  if (name == "continuous") return ColumnKind::kContinuous;
  if (name == "ordinal") return ColumnKind::kOrdinal;
  if (name == "categorical") return ColumnKind::kCategorical;
  return MakeError(ErrorKind::kInvalidConfig,
                   absl::StrCat("unknown column kind '", std::string(name), "'"));
}

absl::StatusOr<Schema> Schema::Create(std::vector<Column> columns) {
  std::set<std::string> seen;
  for (const Column& c : columns) {
    if (c.name.empty()) {
      return MakeError(ErrorKind::kInvalidConfig, "empty column name");
    }
    if (!seen.insert(c.name).second) {
      return MakeError(ErrorKind::kInvalidConfig,
                       absl::StrCat("duplicate column name '", c.name, "'"));
    }
    if (c.precision.has_value() && *c.precision < 0) {
      return MakeError(ErrorKind::kInvalidConfig,
                       absl::StrCat("negative precision for '", c.name, "'"));
    }
  }
  return Schema(std::move(columns));
}

std::optional<size_t> Schema::IndexOf(std::string_view name) const {
  for (size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i].name == name) return i;
  }
  return std::nullopt;
}

absl::StatusOr<Dataset> Dataset::Create(Schema schema,
                                        std::vector<Record> records) {
  for (size_t r = 0; r < records.size(); ++r) {
    const Record& rec = records[r];
    if (rec.size() != schema.size()) {
      return MakeError(ErrorKind::kRaggedRow,
                       absl::StrCat("record ", r, " has ", rec.size(),
                                    " cells, schema has ", schema.size()));
    }
    for (size_t c = 0; c < rec.size(); ++c) {
      const Cell& cell = rec[c];
      if (IsMissing(cell)) continue;
      const bool numeric = schema.column(c).kind == ColumnKind::kContinuous;
      const double* v = std::get_if<double>(&cell);
      if (numeric != (v != nullptr) || (v != nullptr && !std::isfinite(*v))) {
        return MakeError(ErrorKind::kInvalidCell,
                         absl::StrCat("record ", r, ", column '",
                                      schema.column(c).name, "'"));
      }
    }
  }
  return Dataset(std::move(schema), std::move(records));
}

Dataset Dataset::Head(size_t n) const {
  n = std::min(n, records_.size());
  return Dataset(schema_, std::vector<Record>(records_.begin(),
                                              records_.begin() + n));
}

int EncodingConfig::PrecisionFor(const Column& column) const {
  if (auto it = per_column_precision.find(column.name);
      it != per_column_precision.end()) {
    return it->second;
  }
  return column.precision.value_or(precision_default);
}

nlohmann::json ToJson(const EncodingConfig& cfg) {
  return nlohmann::json{
      {"precision_default", cfg.precision_default},
      {"per_column_precision", cfg.per_column_precision},
      {"missing_token", cfg.missing_token},
      {"template", cfg.layout == EncodingTemplate::kNamedPairs ? "named_pairs"
                                                               : "values_only"},
  };
}

nlohmann::json ToJson(const Schema& schema) {
  nlohmann::json out = nlohmann::json::array();
  for (const Column& c : schema.columns()) {
    nlohmann::json col{{"name", c.name}, {"kind", std::string(ColumnKindName(c.kind))}};
    col["precision"] = c.precision.has_value() ? nlohmann::json(*c.precision)
                                               : nlohmann::json(nullptr);
    out.push_back(col);
  }
  return out;
}

absl::StatusOr<Schema> SchemaFromJson(const nlohmann::json& j) {
  if (!j.is_array()) {
    return MakeError(ErrorKind::kInvalidConfig, "schema must be an array");
  }
  std::vector<Column> columns;
  try {
    for (const nlohmann::json& col : j) {
      Column c;
      for (const auto& [key, value] : col.items()) {
        if (key == "name") {
          c.name = value.get<std::string>();
        } else if (key == "kind") {
          ASSIGN_OR_RETURN(c.kind, ParseColumnKind(value.get<std::string>()));
        } else if (key == "precision") {
          if (!value.is_null()) c.precision = value.get<int>();
        } else {
          return MakeError(ErrorKind::kInvalidConfig,
                           absl::StrCat("unknown column key '", key, "'"));
        }
      }
      columns.push_back(std::move(c));
    }
  } catch (const nlohmann::json::exception& e) {
    return MakeError(ErrorKind::kInvalidConfig, e.what());
  }
  return Schema::Create(std::move(columns));
}

absl::StatusOr<EncodingConfig> EncodingConfigFromJson(const nlohmann::json& j) {
  if (!j.is_object()) {
    return MakeError(ErrorKind::kInvalidConfig, "encoding must be an object");
  }
  EncodingConfig cfg;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "precision_default") {
        cfg.precision_default = value.get<int>();
      } else if (key == "per_column_precision") {
        cfg.per_column_precision = value.get<std::map<std::string, int>>();
      } else if (key == "missing_token") {
        cfg.missing_token = value.get<std::string>();
      } else if (key == "template") {
        const std::string t = value.get<std::string>();
        if (t == "named_pairs") {
          cfg.layout = EncodingTemplate::kNamedPairs;
        } else if (t == "values_only") {
          cfg.layout = EncodingTemplate::kValuesOnly;
        } else {
          return MakeError(ErrorKind::kInvalidConfig,
                           absl::StrCat("unknown template '", t, "'"));
        }
      } else {
        return MakeError(ErrorKind::kInvalidConfig,
                         absl::StrCat("unknown encoding key '", key, "'"));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    return MakeError(ErrorKind::kInvalidConfig, e.what());
  }
  if (cfg.precision_default < 0) {
    return MakeError(ErrorKind::kInvalidConfig, "negative precision_default");
  }
  for (const auto& [name, p] : cfg.per_column_precision) {
    if (p < 0) {
      return MakeError(ErrorKind::kInvalidConfig,
                       absl::StrCat("negative precision for '", name, "'"));
    }
  }
  return cfg;
}

std::string FormatShortest(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string FormatFixed(double value, int precision) {
  char buf[512];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value,
                                 std::chars_format::fixed, precision);
  if (ec != std::errc()) {
    // Only reachable for absurd magnitudes/precisions.
    std::vector<char> big(4096);
    auto res = std::to_chars(big.data(), big.data() + big.size(), value,
                             std::chars_format::fixed, precision);
    return std::string(big.data(), res.ptr);
  }
  return std::string(buf, ptr);
}

std::optional<double> ParseNumber(std::string_view text) {
  text = Trim(text);
  if (text.empty()) return std::nullopt;
  // from_chars accepts "inf"/"nan"; only plain decimal text is numeric here.
  for (char c : text) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' ||
          c == '.' || c == 'e' || c == 'E' || c == '+')) {
      return std::nullopt;
    }
  }
  double value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() ||
      !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

absl::StatusOr<EncodedRecord> EncodeRecord(const Record& record,
                                           const Schema& schema,
                                           const EncodingConfig& cfg,
                                           size_t source_index) {
  if (record.size() != schema.size()) {
    return MakeError(ErrorKind::kRaggedRow,
                     absl::StrCat("record has ", record.size(),
                                  " cells, schema has ", schema.size()));
  }
  EncodedRecord out;
  out.source_index = source_index;
  for (size_t c = 0; c < record.size(); ++c) {
    if (c > 0) out.text += ", ";
    if (cfg.layout == EncodingTemplate::kNamedPairs) {
      out.text += schema.column(c).name;
      out.text += " = ";
    }
    ASSIGN_OR_RETURN(std::string value,
                     RenderCell(record[c], schema.column(c), cfg));
    out.text += value;
  }
  return out;
}

absl::StatusOr<std::vector<EncodedRecord>> EncodeDataset(
    const Dataset& ds, const EncodingConfig& cfg) {
  std::vector<EncodedRecord> out;
  out.reserve(ds.num_rows());
  for (size_t i = 0; i < ds.num_rows(); ++i) {
    auto encoded = EncodeRecord(ds.record(i), ds.schema(), cfg, i);
    if (!encoded.ok()) {
      return Annotate(encoded.status(), absl::StrCat("record ", i));
    }
    out.push_back(*std::move(encoded));
  }
  return out;
}

absl::StatusOr<std::vector<std::string_view>> SplitEncodedRecord(
    std::string_view text, const Schema& schema, const EncodingConfig& cfg) {
  std::vector<std::string_view> values;
  values.reserve(schema.size());
  size_t pos = 0;
  const bool named = cfg.layout == EncodingTemplate::kNamedPairs;
  for (size_t c = 0; c < schema.size(); ++c) {
    const Column& column = schema.column(c);
    if (named) {
      const std::string key = absl::StrCat(column.name, " = ");
      if (text.compare(pos, key.size(), key) != 0) {
        return MakeError(ErrorKind::kDecodeFailure,
                         absl::StrCat("expected '", key, "' at offset ", pos));
      }
      pos += key.size();
    }
    size_t end = text.size();
    if (c + 1 < schema.size()) {
      const std::string sep =
          named ? absl::StrCat(", ", schema.column(c + 1).name, " = ") : ", ";
      end = text.find(sep, pos);
      if (end == std::string_view::npos) {
        return MakeError(ErrorKind::kDecodeFailure,
                         absl::StrCat("missing separator after column '",
                                      column.name, "'"));
      }
    }
    values.push_back(text.substr(pos, end - pos));
    pos = end;
    if (c + 1 < schema.size()) pos += 2;  // ", "
  }
  return values;
}

absl::StatusOr<Record> DecodeRecord(std::string_view text, const Schema& schema,
                                    const EncodingConfig& cfg) {
  ASSIGN_OR_RETURN(std::vector<std::string_view> values,
                   SplitEncodedRecord(text, schema, cfg));
  Record record;
  record.reserve(schema.size());
  for (size_t c = 0; c < schema.size(); ++c) {
    ASSIGN_OR_RETURN(Cell cell,
                     ParseEncodedValue(values[c], schema.column(c), cfg));
    record.push_back(std::move(cell));
  }
  return record;
}

absl::StatusOr<Dataset> ParseCsv(std::string_view content,
                                 const KindOverrides& overrides) {
  ASSIGN_OR_RETURN(std::vector<CsvRow> rows, SplitCsv(content));
  if (rows.empty()) {
    return MakeError(ErrorKind::kEmptyDataset, "no header row");
  }
  const CsvRow& header = rows.front();
  const size_t d = header.size();
  if (rows.size() == 1) {
    return MakeError(ErrorKind::kEmptyDataset, "no data rows after header");
  }
  for (size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != d) {
      return MakeError(ErrorKind::kRaggedRow,
                       absl::StrCat("data row ", r, " has ", rows[r].size(),
                                    " fields, header has ", d));
    }
  }
  for (const auto& [name, kind] : overrides) {
    bool found = false;
    for (const CsvField& h : header) found |= h.text == name;
    if (!found) {
      return MakeError(ErrorKind::kInvalidConfig,
                       absl::StrCat("override for unknown column '", name, "'"));
    }
  }

  std::vector<Column> columns;
  columns.reserve(d);
  for (size_t c = 0; c < d; ++c) {
    Column column{header[c].text, ColumnKind::kCategorical, std::nullopt};
    if (auto it = overrides.find(column.name); it != overrides.end()) {
      column.kind = it->second;
    } else {
      size_t present = 0;
      size_t numeric = 0;
      for (size_t r = 1; r < rows.size(); ++r) {
        const CsvField& f = rows[r][c];
        if (IsMissingField(f)) continue;
        ++present;
        if (!f.quoted && ParseNumber(f.text).has_value()) ++numeric;
      }
      if (present > 0 &&
          static_cast<double>(numeric) >=
              kContinuousShare * static_cast<double>(present)) {
        column.kind = ColumnKind::kContinuous;
      }
    }
    columns.push_back(std::move(column));
  }
  ASSIGN_OR_RETURN(Schema schema, Schema::Create(std::move(columns)));

  std::vector<Record> records;
  records.reserve(rows.size() - 1);
  for (size_t r = 1; r < rows.size(); ++r) {
    Record rec;
    rec.reserve(d);
    for (size_t c = 0; c < d; ++c) {
      const CsvField& f = rows[r][c];
      if (IsMissingField(f)) {
        rec.emplace_back(Missing{});
      } else if (schema.column(c).kind == ColumnKind::kContinuous) {
        std::optional<double> v = f.quoted ? std::nullopt : ParseNumber(f.text);
        if (v.has_value()) {
          rec.emplace_back(*v);
        } else if (overrides.contains(schema.column(c).name)) {
          return MakeError(ErrorKind::kInvalidCell,
                           absl::StrCat("row ", r, ": '", f.text,
                                        "' is not numeric"));
        } else {
          // Inferred continuous column tolerates a sliver of junk cells.
          rec.emplace_back(Missing{});
        }
      } else {
        rec.emplace_back(f.quoted ? f.text : std::string(Trim(f.text)));
      }
    }
    records.push_back(std::move(rec));
  }
  return Dataset::Create(std::move(schema), std::move(records));
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return MakeError(ErrorKind::kUnreadableFile,
                     absl::StrCat("cannot open '", path, "'"));
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) {
    return MakeError(ErrorKind::kUnreadableFile,
                     absl::StrCat("read error on '", path, "'"));
  }
  return ss.str();
}

absl::StatusOr<Dataset> LoadCsv(const std::string& path,
                                const KindOverrides& overrides) {
  ASSIGN_OR_RETURN(std::string content, ReadFile(path));
  auto ds = ParseCsv(content, overrides);
  if (!ds.ok()) return Annotate(ds.status(), path);
  return ds;
}

std::string FormatCsv(const Dataset& ds) {
  std::string out;
  const Schema& schema = ds.schema();
  for (size_t c = 0; c < schema.size(); ++c) {
    if (c > 0) out.push_back(',');
    const std::string& name = schema.column(c).name;
    out += NeedsQuoting(name) ? QuoteCsv(name) : name;
  }
  out.push_back('\n');
  for (const Record& rec : ds.records()) {
    for (size_t c = 0; c < rec.size(); ++c) {
      if (c > 0) out.push_back(',');
      const Cell& cell = rec[c];
      if (IsMissing(cell)) continue;
      if (const double* v = std::get_if<double>(&cell)) {
        const std::optional<int>& p = schema.column(c).precision;
        out += p.has_value() ? FormatFixed(*v, *p) : FormatShortest(*v);
      } else {
        const std::string& token = std::get<std::string>(cell);
        out += NeedsQuoting(token) || ParseNumber(token).has_value()
                   ? QuoteCsv(token)
                   : token;
      }
    }
    out.push_back('\n');
  }
  return out;
}

absl::Status WriteFileAtomic(const std::string& path, std::string_view content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      return MakeError(ErrorKind::kIoFailure,
                       absl::StrCat("cannot open '", tmp, "' for writing"));
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
      return MakeError(ErrorKind::kIoFailure,
                       absl::StrCat("write failed for '", tmp, "'"));
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    return MakeError(ErrorKind::kIoFailure,
                     absl::StrCat("rename to '", path, "': ", ec.message()));
  }
  return absl::OkStatus();
}

absl::Status WriteCsv(const Dataset& ds, const std::string& path) {
  return WriteFileAtomic(path, FormatCsv(ds));
}

}  // namespace levatt
