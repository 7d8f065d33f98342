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

// Feature-space membership baselines: distance to closest record, Monte
// Carlo neighbourhood counting and kernel density scoring. All of them see
// the data through a FeatureEncoder fit on the synthetic set alone.

#ifndef LEVATT_BASELINES_H_
#define LEVATT_BASELINES_H_

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "levatt/tabular.h"

namespace levatt {

enum class CategoricalMode {
  kOneHot,   // one indicator per seen category; unseen -> all zeros
  kOrdinal,  // code in [0, categories); unseen -> -1
};

// Dense row-major matrix.
struct FeatureMatrix {
  size_t rows = 0;
  size_t cols = 0;
  std::vector<double> values;
  CategoricalMode mode = CategoricalMode::kOneHot;

  const double* row(size_t i) const { return values.data() + i * cols; }
  double at(size_t i, size_t k) const { return values[i * cols + k]; }
};

// Per-column transform learned from a reference dataset. Continuous columns
// are min-max scaled to the reference range (constant columns map to 0.5,
// missing cells to the scaled reference mean). Token columns are expanded per
// `mode`; a missing token is a category of its own.
class FeatureEncoder {
 public:
  static FeatureEncoder Fit(const Dataset& reference, CategoricalMode mode,
                            std::vector<std::string> exclude = {});

  // SchemaMismatch unless `ds` has the schema the encoder was fit on.
  absl::StatusOr<FeatureMatrix> Transform(const Dataset& ds) const;

  size_t width() const { return width_; }

 private:
  struct ColumnPlan {
    size_t column = 0;
    bool continuous = false;
    double min = 0;
    double range = 0;
    double fill = 0.5;
    std::vector<std::string> categories;  // sorted
  };

  Schema schema_;
  CategoricalMode mode_ = CategoricalMode::kOneHot;
  std::vector<ColumnPlan> plans_;
  size_t width_ = 0;
};

// Fits on `synthetic` and maps both datasets into the shared feature space.
absl::StatusOr<std::pair<FeatureMatrix, FeatureMatrix>> Preprocess(
    const Dataset& targets, const Dataset& synthetic, CategoricalMode mode);

// -(Euclidean distance to the nearest synthetic row).
absl::StatusOr<std::vector<double>> DcrScores(const FeatureMatrix& targets,
                                              const FeatureMatrix& synthetic,
                                              int workers = 0);

// Fraction of synthetic rows within `radius` of each target.
absl::StatusOr<std::vector<double>> McScores(const FeatureMatrix& targets,
                                             const FeatureMatrix& synthetic,
                                             double radius, int workers = 0);

struct BandwidthSpec {
  enum class Method { kScott, kFixed };
  Method method = Method::kScott;
  double h = 1.0;  // kFixed only

  static BandwidthSpec Scott() { return {}; }
  static BandwidthSpec Fixed(double h) { return {Method::kFixed, h}; }
};

// Per-dimension bandwidths. Scott's rule is n^(-1/(d+4)) times the sample
// standard deviation; every bandwidth is floored at kMinBandwidth.
inline constexpr double kMinBandwidth = 1e-3;
std::vector<double> KdeBandwidths(const FeatureMatrix& synthetic,
                                  const BandwidthSpec& bw);

// Log density of each target under a diagonal Gaussian KDE fit on synthetic.
absl::StatusOr<std::vector<double>> KdeScores(const FeatureMatrix& targets,
                                              const FeatureMatrix& synthetic,
                                              const BandwidthSpec& bw,
                                              int workers = 0);

// Median nearest-neighbour distance within the synthetic set. Falls back to
// the smallest positive neighbour distance when the median is zero, and to
// 1.0 when every row coincides.
absl::StatusOr<double> ChooseMcRadius(const FeatureMatrix& synthetic,
                                      int workers = 0);

}  // namespace levatt

#endif  // LEVATT_BASELINES_H_
