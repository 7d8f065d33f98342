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


#include "levatt/baselines.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "levatt/kernels/kernels.h"
#include "levatt/parallel.h"
#include "levatt/status.h"

namespace levatt {
namespace {

absl::Status CheckPair(const FeatureMatrix& targets,
                       const FeatureMatrix& synthetic) {
  if (synthetic.rows == 0) {
    return MakeError(ErrorKind::kEmptySyntheticSet, "no synthetic rows");
  }
  if (targets.rows > 0 && targets.cols != synthetic.cols) {
    return MakeError(ErrorKind::kDimensionMismatch,
                     "targets have " + std::to_string(targets.cols) +
                         " features, synthetic " +
                         std::to_string(synthetic.cols));
  }
  return absl::OkStatus();
}

std::string TokenOf(const Cell& cell) {
  if (const auto* s = std::get_if<std::string>(&cell)) return *s;
  return {};
}

// Squared distances from targets row i to every synthetic row.
void DistancesTo(const FeatureMatrix& targets, size_t i,
                 const FeatureMatrix& synthetic, std::vector<double>& out) {
  out.resize(synthetic.rows);
  kernels::DispatchSquaredDistances({targets.row(i), targets.cols},
                                    synthetic.values.data(), synthetic.cols,
                                    out);
}

}  // namespace

FeatureEncoder FeatureEncoder::Fit(const Dataset& reference,
                                   CategoricalMode mode,
                                   std::vector<std::string> exclude) {
  FeatureEncoder enc;
  enc.schema_ = reference.schema();
  enc.mode_ = mode;
  for (size_t c = 0; c < reference.num_columns(); ++c) {
    const Column& col = reference.schema().column(c);
    if (std::find(exclude.begin(), exclude.end(), col.name) != exclude.end()) {
      continue;
    }
    ColumnPlan plan;
    plan.column = c;
    plan.continuous = col.kind == ColumnKind::kContinuous;
    if (plan.continuous) {
      double lo = std::numeric_limits<double>::infinity();
      double hi = -lo;
      double sum = 0;
      size_t present = 0;
      for (const Record& r : reference.records()) {
        if (const auto* v = std::get_if<double>(&r[c])) {
          lo = std::min(lo, *v);
          hi = std::max(hi, *v);
          sum += *v;
          ++present;
        }
      }
      if (present > 0 && hi > lo) {
        plan.min = lo;
        plan.range = hi - lo;
        plan.fill = (sum / static_cast<double>(present) - lo) / plan.range;
      }
      enc.width_ += 1;
    } else {
      for (const Record& r : reference.records()) {
        plan.categories.push_back(TokenOf(r[c]));
      }
      std::sort(plan.categories.begin(), plan.categories.end());
      plan.categories.erase(
          std::unique(plan.categories.begin(), plan.categories.end()),
          plan.categories.end());
      enc.width_ +=
          mode == CategoricalMode::kOneHot ? plan.categories.size() : 1;
    }
    enc.plans_.push_back(std::move(plan));
  }
  return enc;
}

absl::StatusOr<FeatureMatrix> FeatureEncoder::Transform(
    const Dataset& ds) const {
  if (!(ds.schema() == schema_)) {
    return MakeError(ErrorKind::kSchemaMismatch,
                     "dataset schema differs from the fitted schema");
  }
  FeatureMatrix m;
  m.rows = ds.num_rows();
  m.cols = width_;
  m.mode = mode_;
  m.values.assign(m.rows * m.cols, 0.0);
  for (size_t i = 0; i < m.rows; ++i) {
    const Record& r = ds.record(i);
    double* out = m.values.data() + i * m.cols;
    size_t k = 0;
    for (const ColumnPlan& plan : plans_) {
      if (plan.continuous) {
        const auto* v = std::get_if<double>(&r[plan.column]);
        if (v == nullptr) {
          out[k] = plan.fill;
        } else if (plan.range > 0) {
          out[k] = (*v - plan.min) / plan.range;
        } else {
          out[k] = 0.5;
        }
        k += 1;
        continue;
      }
      const std::string token = TokenOf(r[plan.column]);
      auto it = std::lower_bound(plan.categories.begin(),
                                 plan.categories.end(), token);
      const bool seen = it != plan.categories.end() && *it == token;
      const size_t code = static_cast<size_t>(it - plan.categories.begin());
      if (mode_ == CategoricalMode::kOneHot) {
        if (seen) out[k + code] = 1.0;
        k += plan.categories.size();
      } else {
        out[k] = seen ? static_cast<double>(code) : -1.0;
        k += 1;
      }
    }
  }
  return m;
}

absl::StatusOr<std::pair<FeatureMatrix, FeatureMatrix>> Preprocess(
    const Dataset& targets, const Dataset& synthetic, CategoricalMode mode) {
  if (!(targets.schema() == synthetic.schema())) {
    return MakeError(ErrorKind::kSchemaMismatch,
                     "targets and synthetic data have different schemas");
  }
  const FeatureEncoder enc = FeatureEncoder::Fit(synthetic, mode);
  ASSIGN_OR_RETURN(FeatureMatrix t, enc.Transform(targets));
  ASSIGN_OR_RETURN(FeatureMatrix s, enc.Transform(synthetic));
  return std::make_pair(std::move(t), std::move(s));
}

absl::StatusOr<std::vector<double>> DcrScores(const FeatureMatrix& targets,
                                              const FeatureMatrix& synthetic,
                                              int workers) {
  RETURN_IF_ERROR(CheckPair(targets, synthetic));
  std::vector<double> scores(targets.rows);
  ParallelFor(
      targets.rows,
      [&](size_t i) {
        thread_local std::vector<double> d2;
        DistancesTo(targets, i, synthetic, d2);
        scores[i] = -std::sqrt(*std::min_element(d2.begin(), d2.end()));
      },
      workers);
  return scores;
}

absl::StatusOr<std::vector<double>> McScores(const FeatureMatrix& targets,
                                             const FeatureMatrix& synthetic,
                                             double radius, int workers) {
  if (!(radius > 0)) {
    return MakeError(ErrorKind::kNonpositiveRadius,
                     "radius must be positive, got " + std::to_string(radius));
  }
  RETURN_IF_ERROR(CheckPair(targets, synthetic));
  std::vector<double> scores(targets.rows);
  const double n = static_cast<double>(synthetic.rows);
  ParallelFor(
      targets.rows,
      [&](size_t i) {
        thread_local std::vector<double> d2;
        DistancesTo(targets, i, synthetic, d2);
        size_t inside = 0;
        for (double v : d2) {
          if (std::sqrt(v) <= radius) ++inside;
        }
        scores[i] = static_cast<double>(inside) / n;
      },
      workers);
  return scores;
}

std::vector<double> KdeBandwidths(const FeatureMatrix& synthetic,
                                  const BandwidthSpec& bw) {
  std::vector<double> h(synthetic.cols, bw.h);
  if (bw.method == BandwidthSpec::Method::kScott) {
    const double n = static_cast<double>(synthetic.rows);
    const double factor =
        std::pow(n, -1.0 / (static_cast<double>(synthetic.cols) + 4));
    for (size_t k = 0; k < synthetic.cols; ++k) {
      double mean = 0;
      for (size_t i = 0; i < synthetic.rows; ++i) mean += synthetic.at(i, k);
      mean /= n;
      double ss = 0;
      for (size_t i = 0; i < synthetic.rows; ++i) {
        const double d = synthetic.at(i, k) - mean;
        ss += d * d;
      }
      h[k] = factor * std::sqrt(ss / (n - 1));
    }
  }
  for (double& v : h) v = std::max(v, kMinBandwidth);
  return h;
}

absl::StatusOr<std::vector<double>> KdeScores(const FeatureMatrix& targets,
                                              const FeatureMatrix& synthetic,
                                              const BandwidthSpec& bw,
                                              int workers) {
  if (synthetic.rows < 2) {
    return MakeError(ErrorKind::kTooFewSyntheticRows,
                     "density estimate needs at least 2 synthetic rows");
  }
  RETURN_IF_ERROR(CheckPair(targets, synthetic));
  if (bw.method == BandwidthSpec::Method::kFixed && !(bw.h > 0)) {
    return MakeError(ErrorKind::kInvalidConfig, "bandwidth must be positive");
  }
  const std::vector<double> h = KdeBandwidths(synthetic, bw);

  // Whitening by the bandwidths turns every kernel exponent into a plain
  // squared distance.
  auto whiten = [&h](const FeatureMatrix& m) {
    FeatureMatrix w = m;
    for (size_t i = 0; i < w.rows; ++i) {
      for (size_t k = 0; k < w.cols; ++k) w.values[i * w.cols + k] /= h[k];
    }
    return w;
  };
  const FeatureMatrix wt = whiten(targets);
  const FeatureMatrix ws = whiten(synthetic);
  double log_norm = std::log(static_cast<double>(synthetic.rows));
  for (double v : h) log_norm += std::log(v * std::sqrt(2 * std::numbers::pi));

  std::vector<double> scores(targets.rows);
  ParallelFor(
      targets.rows,
      [&](size_t i) {
        thread_local std::vector<double> d2;
        DistancesTo(wt, i, ws, d2);
        const double nearest = *std::min_element(d2.begin(), d2.end());
        double sum = 0;
        for (double v : d2) sum += std::exp(-0.5 * (v - nearest));
        scores[i] = -0.5 * nearest + std::log(sum) - log_norm;
      },
      workers);
  return scores;
}

absl::StatusOr<double> ChooseMcRadius(const FeatureMatrix& synthetic,
                                      int workers) {
  if (synthetic.rows < 2) {
    return MakeError(ErrorKind::kTooFewSyntheticRows,
                     "radius heuristic needs at least 2 synthetic rows");
  }
  std::vector<double> nn(synthetic.rows);
  ParallelFor(
      synthetic.rows,
      [&](size_t i) {
        thread_local std::vector<double> d2;
        DistancesTo(synthetic, i, synthetic, d2);
        d2[i] = std::numeric_limits<double>::infinity();
        nn[i] = std::sqrt(*std::min_element(d2.begin(), d2.end()));
      },
      workers);
  std::sort(nn.begin(), nn.end());
  const size_t n = nn.size();
  const double median =
      n % 2 == 1 ? nn[n / 2] : (nn[n / 2 - 1] + nn[n / 2]) / 2;
  if (median > 0) return median;
  auto positive = std::upper_bound(nn.begin(), nn.end(), 0.0);
  return positive != nn.end() ? *positive : 1.0;
}

}  // namespace levatt
