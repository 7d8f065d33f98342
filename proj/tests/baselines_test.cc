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


#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "levatt/baselines.h"
#include "levatt/status.h"
#include "oracles.h"

namespace levatt {
namespace {

FeatureMatrix Matrix(const oracle::Rows& rows,
                     CategoricalMode mode = CategoricalMode::kOneHot) {
  FeatureMatrix m;
  m.rows = rows.size();
  m.cols = rows.empty() ? 0 : rows[0].size();
  m.mode = mode;
  for (const auto& r : rows) m.values.insert(m.values.end(), r.begin(), r.end());
  return m;
}

oracle::Rows RandomRows(std::mt19937_64& rng, size_t n, size_t d) {
  std::normal_distribution<double> v(0, 1);
  oracle::Rows rows(n, std::vector<double>(d));
  for (auto& r : rows) {
    for (double& x : r) x = v(rng);
  }
  return rows;
}

Dataset Mixed(std::vector<std::pair<double, std::string>> rows) {
  auto schema = Schema::Create({{"x", ColumnKind::kContinuous, 2},
                                {"c", ColumnKind::kCategorical, std::nullopt}});
  std::vector<Record> records;
  for (auto& [x, c] : rows) records.push_back({x, c});
  return *Dataset::Create(*schema, std::move(records));
}

TEST(Preprocess, MinMaxFromSyntheticRange) {
  Dataset synthetic = Mixed({{0, "a"}, {10, "b"}});
  Dataset targets = Mixed({{5, "b"}, {20, "z"}});
  auto out = Preprocess(targets, synthetic, CategoricalMode::kOneHot);
  ASSERT_TRUE(out.ok());
  const auto& [t, s] = *out;
  ASSERT_EQ(t.cols, 3u);
  EXPECT_DOUBLE_EQ(t.at(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(t.at(1, 0), 2.0);
  EXPECT_EQ(t.at(0, 1), 0.0);
  EXPECT_EQ(t.at(0, 2), 1.0);
  // Unseen category: reserved all-zeros row.
  EXPECT_EQ(t.at(1, 1), 0.0);
  EXPECT_EQ(t.at(1, 2), 0.0);
  // One-hot blocks of seen categories sum to one.
  for (size_t i = 0; i < s.rows; ++i) EXPECT_EQ(s.at(i, 1) + s.at(i, 2), 1.0);
}

TEST(Preprocess, OrdinalUnseenIsMinusOne) {
  Dataset synthetic = Mixed({{0, "a"}, {10, "b"}});
  auto out = Preprocess(Mixed({{1, "b"}, {1, "q"}}), synthetic,
                        CategoricalMode::kOrdinal);
  ASSERT_TRUE(out.ok());
  EXPECT_EQ(out->first.cols, 2u);
  EXPECT_EQ(out->first.at(0, 1), 1.0);
  EXPECT_EQ(out->first.at(1, 1), -1.0);
}

TEST(Preprocess, ZeroVarianceColumnMapsToHalf) {
  Dataset synthetic = Mixed({{3, "a"}, {3, "a"}});
  auto out = Preprocess(Mixed({{3, "a"}, {100, "a"}}), synthetic,
                        CategoricalMode::kOneHot);
  ASSERT_TRUE(out.ok());
  EXPECT_EQ(out->first.at(0, 0), 0.5);
  EXPECT_EQ(out->first.at(1, 0), 0.5);
  EXPECT_EQ(out->second.at(0, 0), 0.5);
}

TEST(Preprocess, SchemaMismatch) {
  auto other = *Dataset::Create(
      *Schema::Create({{"y", ColumnKind::kContinuous, std::nullopt}}), {{1.0}});
  EXPECT_EQ(GetErrorKind(Preprocess(other, Mixed({{0, "a"}}),
                                    CategoricalMode::kOneHot)
                             .status()),
            ErrorKind::kSchemaMismatch);
}

TEST(Dcr, Examples) {
  auto s = DcrScores(Matrix({{0, 0}}), Matrix({{3, 4}}));
  ASSERT_TRUE(s.ok());
  EXPECT_EQ(*s, std::vector<double>{-5});
  auto copy = DcrScores(Matrix({{1, 2}}), Matrix({{7, 7}, {1, 2}}));
  EXPECT_EQ((*copy)[0], 0.0);
}

TEST(Dcr, MatchesPairwiseOracle) {
  std::mt19937_64 rng(1);
  oracle::Rows t = RandomRows(rng, 2, 3);
  oracle::Rows s = RandomRows(rng, 3, 3);
  auto scores = DcrScores(Matrix(t), Matrix(s));
  ASSERT_TRUE(scores.ok());
  ASSERT_EQ(scores->size(), 2u);
  for (size_t i = 0; i < 2; ++i) {
    EXPECT_NEAR((*scores)[i], -oracle::NearestDistance(t[i], s), 1e-12);
  }
}

TEST(Dcr, Errors) {
  EXPECT_EQ(GetErrorKind(DcrScores(Matrix({{0, 0}}), Matrix({})).status()),
            ErrorKind::kEmptySyntheticSet);
  EXPECT_EQ(GetErrorKind(DcrScores(Matrix({{0, 0}}), Matrix({{1}})).status()),
            ErrorKind::kDimensionMismatch);
}

TEST(Mc, Examples) {
  oracle::Rows pts = {{0, 0}, {1, 0}, {0, 1}, {5, 5}, {2, 3}};
  auto all = McScores(Matrix(pts), Matrix(pts), 100);
  for (double v : *all) EXPECT_EQ(v, 1.0);
  auto none = McScores(Matrix({{10, 10}}), Matrix(pts), 0.5);
  EXPECT_EQ((*none)[0], 0.0);
  EXPECT_EQ(GetErrorKind(McScores(Matrix(pts), Matrix(pts), 0).status()),
            ErrorKind::kNonpositiveRadius);
}

TEST(Mc, MatchesCountingOracle) {
  oracle::Rows pts = {{0, 0}, {1, 0}, {0, 1}, {5, 5}, {2, 3}};
  oracle::Rows targets = {{0.5, 0.5}, {3, 3}, {0, 0}};
  const double radius = 1.5;
  auto scores = McScores(Matrix(targets), Matrix(pts), radius);
  ASSERT_TRUE(scores.ok());
  for (size_t i = 0; i < targets.size(); ++i) {
    int inside = 0;
    for (const auto& p : pts) {
      if (std::sqrt(oracle::SqDist(targets[i], p)) <= radius) ++inside;
    }
    EXPECT_DOUBLE_EQ((*scores)[i], inside / 5.0);
  }
}

TEST(Mc, MonotoneInRadiusProperty) {
  std::mt19937_64 rng(9);
  oracle::Rows t = RandomRows(rng, 20, 4);
  oracle::Rows s = RandomRows(rng, 40, 4);
  std::vector<double> previous(t.size(), 0.0);
  for (double r = 0.1; r < 6; r += 0.3) {
    auto scores = McScores(Matrix(t), Matrix(s), r);
    for (size_t i = 0; i < t.size(); ++i) {
      EXPECT_GE((*scores)[i], previous[i]);
      previous[i] = (*scores)[i];
    }
  }
}

TEST(Kde, HandComputedMixtureOracle) {
  oracle::Rows s = {{0}, {1}, {3}};
  oracle::Rows t = {{0.5}, {2}, {-4}};
  auto scores = KdeScores(Matrix(t), Matrix(s), BandwidthSpec::Fixed(1.0));
  ASSERT_TRUE(scores.ok());
  for (size_t i = 0; i < t.size(); ++i) {
    EXPECT_NEAR((*scores)[i], oracle::KdeLogDensity(t[i], s, {1.0}), 1e-12);
  }
  // Target 0.5: (phi(0.5) + phi(-0.5) + phi(-2.5)) / 3.
  const double phi = [](double z) {
    return std::exp(-0.5 * z * z) / std::sqrt(2 * std::acos(-1.0));
  }(0.5);
  const double tail = std::exp(-0.5 * 6.25) / std::sqrt(2 * std::acos(-1.0));
  EXPECT_NEAR((*scores)[0], std::log((2 * phi + tail) / 3), 1e-12);
}

TEST(Kde, ScottBandwidthOracle) {
  std::mt19937_64 rng(4);
  oracle::Rows s = RandomRows(rng, 30, 3);
  for (auto& r : s) r[2] = 7.0;  // zero spread -> floored bandwidth
  oracle::Rows t = RandomRows(rng, 5, 3);
  std::vector<double> h(3);
  for (size_t k = 0; k < 3; ++k) {
    double mean = 0;
    for (const auto& r : s) mean += r[k] / 30;
    double var = 0;
    for (const auto& r : s) var += (r[k] - mean) * (r[k] - mean) / 29;
    h[k] = std::max(std::pow(30.0, -1.0 / 7) * std::sqrt(var), kMinBandwidth);
  }
  const auto got = KdeBandwidths(Matrix(s), BandwidthSpec::Scott());
  for (size_t k = 0; k < 3; ++k) EXPECT_NEAR(got[k], h[k], 1e-12);
  EXPECT_EQ(got[2], kMinBandwidth);
  for (auto& r : t) r[2] = 7.0;
  auto scores = KdeScores(Matrix(t), Matrix(s), BandwidthSpec::Scott());
  for (size_t i = 0; i < t.size(); ++i) {
    EXPECT_NEAR((*scores)[i], oracle::KdeLogDensity(t[i], s, h),
                1e-9 * std::abs((*scores)[i]));
  }
}

TEST(Kde, ClusterCentreBeatsOutlier) {
  std::mt19937_64 rng(6);
  oracle::Rows s = RandomRows(rng, 50, 2);
  for (auto& r : s) {
    r[0] *= 0.1;
    r[1] *= 0.1;
  }
  auto scores = KdeScores(Matrix({{0, 0}, {5, 5}}), Matrix(s), BandwidthSpec::Scott());
  EXPECT_GT((*scores)[0], (*scores)[1]);
}

TEST(Kde, DuplicationInvariantUnderFixedBandwidth) {
  std::mt19937_64 rng(7);
  oracle::Rows s = RandomRows(rng, 10, 2);
  oracle::Rows doubled = s;
  doubled.insert(doubled.end(), s.begin(), s.end());
  oracle::Rows t = RandomRows(rng, 6, 2);
  auto a = KdeScores(Matrix(t), Matrix(s), BandwidthSpec::Fixed(0.7));
  auto b = KdeScores(Matrix(t), Matrix(doubled), BandwidthSpec::Fixed(0.7));
  for (size_t i = 0; i < t.size(); ++i) EXPECT_NEAR((*a)[i], (*b)[i], 1e-12);
}

TEST(Kde, TooFewSyntheticRows) {
  EXPECT_EQ(GetErrorKind(KdeScores(Matrix({{0}}), Matrix({{1}}),
                                   BandwidthSpec::Scott())
                             .status()),
            ErrorKind::kTooFewSyntheticRows);
}

TEST(ChooseMcRadius, Examples) {
  EXPECT_DOUBLE_EQ(*ChooseMcRadius(Matrix({{0, 0}, {2, 0}})), 2.0);
  const double h = std::sqrt(3.0) / 2;
  EXPECT_NEAR(*ChooseMcRadius(Matrix({{0, 0}, {1, 0}, {0.5, h}})), 1.0, 1e-12);
  EXPECT_EQ(GetErrorKind(ChooseMcRadius(Matrix({{0, 0}})).status()),
            ErrorKind::kTooFewSyntheticRows);
}

TEST(ChooseMcRadius, MatchesNearestNeighbourMedianOracle) {
  std::mt19937_64 rng(10);
  for (size_t n : {10, 11}) {
    oracle::Rows s = RandomRows(rng, n, 3);
    EXPECT_NEAR(*ChooseMcRadius(Matrix(s)), oracle::MedianNearestNeighbour(s),
                1e-12);
  }
}

TEST(Baselines, PermutationInvariantOverSyntheticRowsProperty) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    oracle::Rows s = RandomRows(rng, 25, 3);
    oracle::Rows t = RandomRows(rng, 8, 3);
    oracle::Rows shuffled = s;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    EXPECT_EQ(*DcrScores(Matrix(t), Matrix(s)),
              *DcrScores(Matrix(t), Matrix(shuffled)));
    EXPECT_EQ(*McScores(Matrix(t), Matrix(s), 1.2),
              *McScores(Matrix(t), Matrix(shuffled), 1.2));
    auto a = *KdeScores(Matrix(t), Matrix(s), BandwidthSpec::Scott());
    auto b = *KdeScores(Matrix(t), Matrix(shuffled), BandwidthSpec::Scott());
    for (size_t i = 0; i < t.size(); ++i) {
      EXPECT_NEAR(a[i], b[i], 1e-9 * (1 + std::abs(a[i])));
    }
  }
}

TEST(Baselines, IndependentOfWorkerPartitioning) {
  std::mt19937_64 rng(13);
  oracle::Rows s = RandomRows(rng, 60, 5);
  oracle::Rows t = RandomRows(rng, 37, 5);
  EXPECT_EQ(*DcrScores(Matrix(t), Matrix(s), 1), *DcrScores(Matrix(t), Matrix(s), 4));
  EXPECT_EQ(*McScores(Matrix(t), Matrix(s), 2, 1),
            *McScores(Matrix(t), Matrix(s), 2, 3));
  EXPECT_EQ(*KdeScores(Matrix(t), Matrix(s), BandwidthSpec::Scott(), 1),
            *KdeScores(Matrix(t), Matrix(s), BandwidthSpec::Scott(), 4));
}

}  // namespace
}  // namespace levatt
