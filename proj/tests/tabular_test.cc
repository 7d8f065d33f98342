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

#include <cmath>
#include <filesystem>
#include <random>

#include <unistd.h>

#include "gtest/gtest.h"
#include "levatt/status.h"

namespace levatt {
namespace {

Schema MakeSchema(std::vector<Column> columns) {
  auto schema = Schema::Create(std::move(columns));
  EXPECT_TRUE(schema.ok()) << schema.status();
  return *schema;
}

Dataset MakeDataset(Schema schema, std::vector<Record> records) {
  auto ds = Dataset::Create(std::move(schema), std::move(records));
  EXPECT_TRUE(ds.ok()) << ds.status();
  return *ds;
}

std::string TempPath(const std::string& name) {
  return (std::filesystem::temp_directory_path() /
          ("levatt_tabular_" + std::to_string(::getpid()) + "_" + name))
      .string();
}

TEST(LoadCsv, InfersContinuousAndCategorical) {
  auto ds = ParseCsv("a,b\n1.5,x\n");
  ASSERT_TRUE(ds.ok()) << ds.status();
  ASSERT_EQ(ds->num_columns(), 2);
  EXPECT_EQ(ds->schema().column(0).name, "a");
  EXPECT_EQ(ds->schema().column(0).kind, ColumnKind::kContinuous);
  EXPECT_EQ(ds->schema().column(1).kind, ColumnKind::kCategorical);
  ASSERT_EQ(ds->num_rows(), 1);
  EXPECT_EQ(std::get<double>(ds->record(0)[0]), 1.5);
  EXPECT_EQ(std::get<std::string>(ds->record(0)[1]), "x");
}

TEST(LoadCsv, HeaderOnlyIsEmptyDataset) {
  EXPECT_EQ(GetErrorKind(ParseCsv("a,b\n").status()), ErrorKind::kEmptyDataset);
  EXPECT_EQ(GetErrorKind(ParseCsv("").status()), ErrorKind::kEmptyDataset);
}

TEST(LoadCsv, ShortRowIsRagged) {
  EXPECT_EQ(GetErrorKind(ParseCsv("a,b\n1.5\n").status()),
            ErrorKind::kRaggedRow);
}

TEST(LoadCsv, MissingFileIsUnreadable) {
  EXPECT_EQ(GetErrorKind(LoadCsv("/nonexistent/dir/x.csv").status()),
            ErrorKind::kUnreadableFile);
}

TEST(LoadCsv, ContinuousNeedsNinetyNinePercentNumeric) {
  std::string one_junk = "v\n";
  std::string two_junk = "v\n";
  for (int i = 0; i < 99; ++i) {
    one_junk += std::to_string(i) + "\n";
    two_junk += std::to_string(i) + "\n";
  }
  one_junk += "oops\n";
  two_junk += "oops\nagain\n";
  auto one = ParseCsv(one_junk);
  ASSERT_TRUE(one.ok());
  EXPECT_EQ(one->schema().column(0).kind, ColumnKind::kContinuous);
  EXPECT_TRUE(IsMissing(one->record(99)[0]));
  auto two = ParseCsv(two_junk);
  ASSERT_TRUE(two.ok());
  EXPECT_EQ(two->schema().column(0).kind, ColumnKind::kCategorical);
}

TEST(LoadCsv, OverridesAndMissingMarkers) {
  auto ds = ParseCsv("grade,score\n1,\n2,NA\n3,4.5\n",
                     {{"grade", ColumnKind::kOrdinal}});
  ASSERT_TRUE(ds.ok()) << ds.status();
  EXPECT_EQ(ds->schema().column(0).kind, ColumnKind::kOrdinal);
  EXPECT_EQ(std::get<std::string>(ds->record(0)[0]), "1");
  EXPECT_TRUE(IsMissing(ds->record(0)[1]));
  EXPECT_TRUE(IsMissing(ds->record(1)[1]));
  EXPECT_EQ(GetErrorKind(ParseCsv("a\nx\n", {{"a", ColumnKind::kContinuous}})
                             .status()),
            ErrorKind::kInvalidCell);
  EXPECT_EQ(GetErrorKind(ParseCsv("a\n1\n", {{"zzz", ColumnKind::kOrdinal}})
                             .status()),
            ErrorKind::kInvalidConfig);
}

TEST(Schema, RejectsDuplicateNames) {
  EXPECT_FALSE(Schema::Create({{"a", ColumnKind::kContinuous, {}},
                               {"a", ColumnKind::kCategorical, {}}})
                   .ok());
}

TEST(EncodeRecord, NamedPairsAtColumnPrecision) {
  Schema schema = MakeSchema({{"age", ColumnKind::kContinuous, 1},
                              {"bmi", ColumnKind::kContinuous, 1}});
  auto enc = EncodeRecord({25.0, 17.5}, schema, EncodingConfig{});
  ASSERT_TRUE(enc.ok());
  EXPECT_EQ(enc->text, "age = 25.0, bmi = 17.5");
}

TEST(EncodeRecord, MissingRendersToken) {
  Schema schema = MakeSchema(
      {{"a", ColumnKind::kContinuous, {}}, {"b", ColumnKind::kCategorical, {}}});
  auto enc = EncodeRecord({Missing{}, Missing{}}, schema, EncodingConfig{});
  ASSERT_TRUE(enc.ok());
  EXPECT_EQ(enc->text, "a = NA, b = NA");
}

TEST(EncodeRecord, DefaultPrecisionFourRoundsHalfEven) {
  Schema schema = MakeSchema({{"x", ColumnKind::kContinuous, {}}});
  auto enc = EncodeRecord({3.14159}, schema, EncodingConfig{});
  ASSERT_TRUE(enc.ok());
  EXPECT_EQ(enc->text, "x = 3.1416");
  // Exactly representable ties go to the even neighbour.
  EXPECT_EQ(FormatFixed(0.125, 2), "0.12");
  EXPECT_EQ(FormatFixed(0.375, 2), "0.38");
  EXPECT_EQ(FormatFixed(2.5, 0), "2");
  EXPECT_EQ(FormatFixed(3.5, 0), "4");
}

TEST(EncodeRecord, NonFiniteIsInvalidCell) {
  Schema schema = MakeSchema({{"x", ColumnKind::kContinuous, {}}});
  auto enc = EncodeRecord({std::nan("")}, schema, EncodingConfig{});
  EXPECT_EQ(GetErrorKind(enc.status()), ErrorKind::kInvalidCell);
}

TEST(EncodeRecord, PrecisionPrecedence) {
  Schema schema = MakeSchema({{"x", ColumnKind::kContinuous, 2},
                              {"y", ColumnKind::kContinuous, {}}});
  EncodingConfig cfg;
  cfg.precision_default = 1;
  cfg.per_column_precision["x"] = 3;
  auto enc = EncodeRecord({1.0, 2.0}, schema, cfg);
  ASSERT_TRUE(enc.ok());
  EXPECT_EQ(enc->text, "x = 1.000, y = 2.0");
}

TEST(EncodeRecord, ValuesOnlyTemplate) {
  Schema schema = MakeSchema({{"age", ColumnKind::kContinuous, 1},
                              {"city", ColumnKind::kCategorical, {}}});
  EncodingConfig cfg;
  cfg.layout = EncodingTemplate::kValuesOnly;
  auto enc = EncodeRecord({25.0, std::string("Oslo")}, schema, cfg);
  ASSERT_TRUE(enc.ok());
  EXPECT_EQ(enc->text, "25.0, Oslo");
  auto back = DecodeRecord(enc->text, schema, cfg);
  ASSERT_TRUE(back.ok()) << back.status();
  EXPECT_EQ(std::get<double>((*back)[0]), 25.0);
  EXPECT_EQ(std::get<std::string>((*back)[1]), "Oslo");
}

TEST(EncodeDataset, EmptyAndOrdered) {
  Schema schema = MakeSchema({{"x", ColumnKind::kContinuous, 0}});
  Dataset empty = MakeDataset(schema, {});
  auto none = EncodeDataset(empty, EncodingConfig{});
  ASSERT_TRUE(none.ok());
  EXPECT_TRUE(none->empty());

  Dataset three = MakeDataset(schema, {{1.0}, {2.0}, {1.0}});
  auto enc = EncodeDataset(three, EncodingConfig{});
  ASSERT_TRUE(enc.ok());
  ASSERT_EQ(enc->size(), 3);
  for (size_t i = 0; i < 3; ++i) EXPECT_EQ((*enc)[i].source_index, i);
  EXPECT_EQ((*enc)[0].text, (*enc)[2].text);
}

TEST(EncodeDataset, ErrorsCarryRecordIndex) {
  Schema schema = MakeSchema({{"x", ColumnKind::kContinuous, 0}});
  // Records with NaN can't be built through Dataset::Create.
  EXPECT_EQ(GetErrorKind(Dataset::Create(schema, {{1.0}, {std::nan("")}})
                             .status()),
            ErrorKind::kInvalidCell);
}

TEST(DecodeRecord, RoundTripsEncoding) {
  Schema schema = MakeSchema({{"a", ColumnKind::kContinuous, 2},
                              {"b", ColumnKind::kCategorical, {}},
                              {"c", ColumnKind::kContinuous, 0}});
  EncodingConfig cfg;
  Record rec = {-1.25, std::string("red, green"), Missing{}};
  auto enc = EncodeRecord(rec, schema, cfg);
  ASSERT_TRUE(enc.ok());
  auto back = DecodeRecord(enc->text, schema, cfg);
  ASSERT_TRUE(back.ok()) << back.status();
  EXPECT_EQ(*back, rec);
  EXPECT_EQ(GetErrorKind(DecodeRecord("a = x, b = y, c = 1", schema, cfg).status()),
            ErrorKind::kDecodeFailure);
  EXPECT_FALSE(DecodeRecord("a = 1.00, b = y", schema, cfg).ok());
  EXPECT_FALSE(DecodeRecord("a = 1.00, b = y, c = 1 extra", schema, cfg).ok());
}

TEST(EncodeRecord, PrecisionLawProperty) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> mag(-6, 6);
  std::uniform_int_distribution<int> prec(0, 7);
  std::bernoulli_distribution neg(0.3);
  for (int trial = 0; trial < 5000; ++trial) {
    const double v = (neg(rng) ? -1 : 1) * std::pow(10.0, mag(rng));
    const int p = prec(rng);
    const std::string once = FormatFixed(v, p);
    auto parsed = ParseNumber(once);
    ASSERT_TRUE(parsed.has_value()) << once;
    EXPECT_EQ(FormatFixed(*parsed, p), once) << v << " @" << p;
  }
}

TEST(EncodingConfig, JsonRoundTripAndUnknownKeys) {
  EncodingConfig cfg;
  cfg.precision_default = 2;
  cfg.per_column_precision = {{"x", 5}};
  cfg.missing_token = "?";
  cfg.layout = EncodingTemplate::kValuesOnly;
  auto back = EncodingConfigFromJson(ToJson(cfg));
  ASSERT_TRUE(back.ok());
  EXPECT_EQ(*back, cfg);
  nlohmann::json bad = ToJson(cfg);
  bad["colour"] = 1;
  EXPECT_EQ(GetErrorKind(EncodingConfigFromJson(bad).status()),
            ErrorKind::kInvalidConfig);
}

TEST(WriteCsv, RoundTripsSmallDataset) {
  Schema schema = MakeSchema(
      {{"x", ColumnKind::kContinuous, {}}, {"c", ColumnKind::kCategorical, {}}});
  Dataset ds = MakeDataset(schema, {{1.5, std::string("a,b")},
                                    {-2.25, std::string("say \"hi\"")}});
  const std::string path = TempPath("rt.csv");
  ASSERT_TRUE(WriteCsv(ds, path).ok());
  auto back = LoadCsv(path);
  ASSERT_TRUE(back.ok()) << back.status();
  EXPECT_EQ(*back, ds);
  EXPECT_NE(FormatCsv(ds).find("\"a,b\""), std::string::npos);
  std::filesystem::remove(path);
}

TEST(WriteCsv, ColumnPrecisionIsStableAcrossRoundTrips) {
  Schema schema = MakeSchema({{"x", ColumnKind::kContinuous, 4}});
  Dataset ds = MakeDataset(schema, {{1.00005}});
  const std::string first = FormatCsv(ds);
  EXPECT_TRUE(first == "x\n1.0000\n" || first == "x\n1.0001\n") << first;
  auto back = ParseCsv(first);
  ASSERT_TRUE(back.ok());
  auto reparsed = Dataset::Create(schema, back->records());
  ASSERT_TRUE(reparsed.ok());
  EXPECT_EQ(FormatCsv(*reparsed), first);
}

// Write -> load reproduces random datasets with awkward tokens exactly
// (numeric columns are written in shortest round-trip form).
TEST(WriteCsv, RoundTripProperty) {
  std::mt19937_64 rng(99);
  const std::string alphabet = "ab,\" xyz\n7.-";
  std::uniform_int_distribution<int> len(0, 6);
  std::uniform_int_distribution<size_t> pick(0, alphabet.size() - 1);
  std::normal_distribution<double> value(0, 1e3);
  std::bernoulli_distribution missing(0.1);
  for (int trial = 0; trial < 50; ++trial) {
    Schema schema = MakeSchema({{"n", ColumnKind::kContinuous, {}},
                                {"t", ColumnKind::kCategorical, {}}});
    std::vector<Record> records;
    // At least one non-missing numeric cell so inference sees the column.
    records.push_back({1.0, std::string("seed")});
    for (int r = 0; r < 20; ++r) {
      std::string token(static_cast<size_t>(len(rng)), 'a');
      for (char& c : token) c = alphabet[pick(rng)];
      records.push_back({missing(rng) ? Cell{Missing{}} : Cell{value(rng)},
                         missing(rng) ? Cell{Missing{}} : Cell{token}});
    }
    Dataset ds = MakeDataset(schema, records);
    auto back = ParseCsv(FormatCsv(ds));
    ASSERT_TRUE(back.ok()) << back.status();
    EXPECT_EQ(*back, ds) << FormatCsv(ds);
  }
}

}  // namespace
}  // namespace levatt
