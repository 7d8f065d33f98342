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


#include "levatt/metrics.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "levatt/baselines.h"
#include "levatt/kernels/kernels.h"
#include "levatt/status.h"

namespace levatt {
namespace {

using nlohmann::json;

struct LabelCounts {
  double members = 0;
  double nonmembers = 0;
};

absl::StatusOr<LabelCounts> CountLabels(const AttackScoring& scoring) {
  if (scoring.scores.size() != scoring.members.size()) {
    return MakeError(ErrorKind::kDimensionMismatch,
                     "scores and labels differ in length");
  }
  LabelCounts c;
  for (bool m : scoring.members) (m ? c.members : c.nonmembers) += 1;
  if (c.members == 0 || c.nonmembers == 0) {
    return MakeError(ErrorKind::kDegenerateLabels,
                     "need at least one member and one non-member");
  }
  return c;
}

// Indices ordered by descending score.
std::vector<size_t> DescendingOrder(const std::vector<double>& scores) {
  std::vector<size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&scores](size_t a, size_t b) {
    return scores[a] > scores[b];
  });
  return order;
}

std::string Shortest(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

// Rows of `m` sorted lexicographically, so that sums over them do not depend
// on the input row order.
FeatureMatrix SortedRows(const FeatureMatrix& m) {
  std::vector<size_t> order(m.rows);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&m](size_t a, size_t b) {
    return std::lexicographical_compare(m.row(a), m.row(a) + m.cols, m.row(b),
                                        m.row(b) + m.cols);
  });
  FeatureMatrix out = m;
  for (size_t i = 0; i < m.rows; ++i) {
    std::copy(m.row(order[i]), m.row(order[i]) + m.cols,
              out.values.begin() + static_cast<std::ptrdiff_t>(i * m.cols));
  }
  return out;
}

double KernelSum(const FeatureMatrix& x, const FeatureMatrix& y,
                 double inv_two_sigma2) {
  std::vector<double> d2(y.rows);
  double total = 0;
  for (size_t i = 0; i < x.rows; ++i) {
    kernels::DispatchSquaredDistances({x.row(i), x.cols}, y.values.data(),
                                      y.cols, d2);
    double row = 0;
    for (double v : d2) row += std::exp(-v * inv_two_sigma2);
    total += row;
  }
  return total;
}

double MedianPairwiseDistance(const FeatureMatrix& x, const FeatureMatrix& y) {
  FeatureMatrix pooled = x;
  pooled.rows += y.rows;
  pooled.values.insert(pooled.values.end(), y.values.begin(), y.values.end());
  std::vector<double> all;
  std::vector<double> d2(pooled.rows);
  for (size_t i = 0; i < pooled.rows; ++i) {
    kernels::DispatchSquaredDistances({pooled.row(i), pooled.cols},
                                      pooled.values.data(), pooled.cols, d2);
    for (size_t j = i + 1; j < pooled.rows; ++j) all.push_back(d2[j]);
  }
  if (all.empty()) return 1.0;
  const size_t mid = all.size() / 2;
  std::nth_element(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(mid),
                   all.end());
  double median = all[mid];
  if (all.size() % 2 == 0) {
    median = (median + *std::max_element(
                           all.begin(),
                           all.begin() + static_cast<std::ptrdiff_t>(mid))) /
             2;
  }
  median = std::sqrt(median);
  return median > 0 ? median : 1.0;
}

json RocToJson(const RocCurve& curve) {
  json out = json::array();
  for (const RocPoint& p : curve) out.push_back({p.fpr, p.tpr});
  return out;
}

}  // namespace

AttackScoring AttackScoring::FromGroups(
    std::span<const double> member_scores,
    std::span<const double> nonmember_scores) {
  AttackScoring s;
  s.scores.assign(member_scores.begin(), member_scores.end());
  s.scores.insert(s.scores.end(), nonmember_scores.begin(),
                  nonmember_scores.end());
  s.members.assign(member_scores.size(), true);
  s.members.resize(s.scores.size(), false);
  return s;
}

absl::StatusOr<double> AucRoc(const AttackScoring& scoring) {
  ASSIGN_OR_RETURN(LabelCounts counts, CountLabels(scoring));
  const std::vector<size_t> order = DescendingOrder(scoring.scores);
  // Average ranks, ascending from 1, over tie groups.
  const size_t n = order.size();
  double member_rank_sum = 0;
  size_t i = 0;
  while (i < n) {
    size_t j = i;
    while (j < n && scoring.scores[order[j]] == scoring.scores[order[i]]) ++j;
    // Descending positions i..j-1 hold ascending ranks n-j+1 .. n-i.
    const double rank = (static_cast<double>(n - j + 1) +
                         static_cast<double>(n - i)) /
                        2;
    for (size_t k = i; k < j; ++k) {
      if (scoring.members[order[k]]) member_rank_sum += rank;
    }
    i = j;
  }
  const double u =
      member_rank_sum - counts.members * (counts.members + 1) / 2;
  return u / (counts.members * counts.nonmembers);
}

absl::StatusOr<double> TprAtFpr(const AttackScoring& scoring, double level) {
  ASSIGN_OR_RETURN(LabelCounts counts, CountLabels(scoring));
  const std::vector<size_t> order = DescendingOrder(scoring.scores);
  double tp = 0;
  double fp = 0;
  double best = 0;
  size_t i = 0;
  while (i < order.size()) {
    size_t j = i;
    while (j < order.size() &&
           scoring.scores[order[j]] == scoring.scores[order[i]]) {
      (scoring.members[order[j]] ? tp : fp) += 1;
      ++j;
    }
    if (fp / counts.nonmembers > level + 1e-12) break;
    best = tp / counts.members;
    i = j;
  }
  return best;
}

absl::StatusOr<RocCurve> ComputeRocCurve(const AttackScoring& scoring) {
  ASSIGN_OR_RETURN(LabelCounts counts, CountLabels(scoring));
  const std::vector<size_t> order = DescendingOrder(scoring.scores);
  RocCurve curve{{0, 0}};
  double tp = 0;
  double fp = 0;
  size_t i = 0;
  while (i < order.size()) {
    size_t j = i;
    while (j < order.size() &&
           scoring.scores[order[j]] == scoring.scores[order[i]]) {
      (scoring.members[order[j]] ? tp : fp) += 1;
      ++j;
    }
    curve.push_back({fp / counts.nonmembers, tp / counts.members});
    i = j;
  }
  return curve;
}

double TrapezoidArea(const RocCurve& curve) {
  double area = 0;
  for (size_t i = 1; i < curve.size(); ++i) {
    area += (curve[i].fpr - curve[i - 1].fpr) *
            (curve[i].tpr + curve[i - 1].tpr) / 2;
  }
  return area;
}

std::string RocCsv(const RocCurve& curve) {
  std::string out = "fpr,tpr\n";
  for (const RocPoint& p : curve) {
    out += Shortest(p.fpr) + "," + Shortest(p.tpr) + "\n";
  }
  return out;
}

double Wasserstein1D(std::span<const double> a_in,
                     std::span<const double> b_in) {
  std::vector<double> a(a_in.begin(), a_in.end());
  std::vector<double> b(b_in.begin(), b_in.end());
  if (a.empty() || b.empty()) return 0;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  size_t i = 0;
  size_t j = 0;
  double prev = std::min(a[0], b[0]);
  double total = 0;
  while (i < a.size() || j < b.size()) {
    double cur;
    if (i == a.size()) {
      cur = b[j];
    } else if (j == b.size()) {
      cur = a[i];
    } else {
      cur = std::min(a[i], b[j]);
    }
    total += std::abs(static_cast<double>(i) / na -
                      static_cast<double>(j) / nb) *
             (cur - prev);
    while (i < a.size() && a[i] == cur) ++i;
    while (j < b.size() && b[j] == cur) ++j;
    prev = cur;
  }
  return total;
}

absl::StatusOr<double> WassersteinFidelity(const Dataset& real,
                                           const Dataset& synthetic) {
  if (!(real.schema() == synthetic.schema())) {
    return MakeError(ErrorKind::kSchemaMismatch,
                     "real and synthetic data have different schemas");
  }
  double total = 0;
  size_t columns = 0;
  for (size_t c = 0; c < real.num_columns(); ++c) {
    if (real.schema().column(c).kind != ColumnKind::kContinuous) continue;
    std::vector<double> a;
    std::vector<double> b;
    for (const Record& r : real.records()) {
      if (const auto* v = std::get_if<double>(&r[c])) a.push_back(*v);
    }
    for (const Record& r : synthetic.records()) {
      if (const auto* v = std::get_if<double>(&r[c])) b.push_back(*v);
    }
    if (a.empty() || b.empty()) continue;
    const auto [lo, hi] = std::minmax_element(a.begin(), a.end());
    const double min = *lo;
    const double range = *hi > *lo ? *hi - *lo : 1.0;
    for (double& v : a) v = (v - min) / range;
    for (double& v : b) v = (v - min) / range;
    total += Wasserstein1D(a, b);
    ++columns;
  }
  if (columns == 0) {
    return MakeError(ErrorKind::kNoContinuousColumns,
                     "no continuous column with values on both sides");
  }
  return total / static_cast<double>(columns);
}

absl::StatusOr<double> MmdFidelity(const Dataset& real,
                                   const Dataset& synthetic,
                                   MmdBandwidth bandwidth) {
  if (real.num_rows() < 2 || synthetic.num_rows() < 2) {
    return MakeError(ErrorKind::kTooFewRows,
                     "MMD needs at least 2 rows on each side");
  }
  if (!(real.schema() == synthetic.schema())) {
    return MakeError(ErrorKind::kSchemaMismatch,
                     "real and synthetic data have different schemas");
  }
  if (bandwidth.sigma.has_value() && !(*bandwidth.sigma > 0)) {
    return MakeError(ErrorKind::kInvalidConfig, "bandwidth must be positive");
  }
  const FeatureEncoder enc = FeatureEncoder::Fit(real, CategoricalMode::kOneHot);
  ASSIGN_OR_RETURN(FeatureMatrix x, enc.Transform(real));
  ASSIGN_OR_RETURN(FeatureMatrix y, enc.Transform(synthetic));
  x = SortedRows(x);
  y = SortedRows(y);
  const double sigma = bandwidth.sigma.has_value()
                           ? *bandwidth.sigma
                           : MedianPairwiseDistance(x, y);
  const double g = 1 / (2 * sigma * sigma);
  const double nx = static_cast<double>(x.rows);
  const double ny = static_cast<double>(y.rows);
  const double mmd = KernelSum(x, x, g) / (nx * nx) +
                     KernelSum(y, y, g) / (ny * ny) -
                     2 * (KernelSum(x, y, g) / (nx * ny));
  return std::max(mmd, 0.0);
}

absl::StatusOr<double> UtilityRmse(const Dataset& train, const Dataset& test,
                                   const std::string& target, double lambda) {
  if (!(train.schema() == test.schema())) {
    return MakeError(ErrorKind::kSchemaMismatch,
                     "train and test data have different schemas");
  }
  const std::optional<size_t> col = train.schema().IndexOf(target);
  if (!col.has_value() ||
      train.schema().column(*col).kind != ColumnKind::kContinuous) {
    return MakeError(ErrorKind::kTargetNotContinuous,
                     "target '" + target + "' is not a continuous column");
  }
  auto labelled = [&col](const Dataset& ds) {
    std::vector<Record> rows;
    for (const Record& r : ds.records()) {
      if (std::holds_alternative<double>(r[*col])) rows.push_back(r);
    }
    return *Dataset::Create(ds.schema(), std::move(rows));
  };
  const Dataset tr = labelled(train);
  const Dataset te = labelled(test);
  if (tr.num_rows() < 5) {
    return MakeError(ErrorKind::kTooFewRows,
                     "utility probe needs at least 5 labelled training rows");
  }
  if (te.empty()) {
    return MakeError(ErrorKind::kTooFewRows, "no labelled test rows");
  }
  const FeatureEncoder enc =
      FeatureEncoder::Fit(tr, CategoricalMode::kOneHot, {target});
  ASSIGN_OR_RETURN(FeatureMatrix ftr, enc.Transform(tr));
  ASSIGN_OR_RETURN(FeatureMatrix fte, enc.Transform(te));

  using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                               Eigen::RowMajor>;
  const Eigen::Index n = static_cast<Eigen::Index>(ftr.rows);
  const Eigen::Index d = static_cast<Eigen::Index>(ftr.cols);
  Matrix x = Eigen::Map<const Matrix>(ftr.values.data(), n, d);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    y(i) = std::get<double>(tr.record(static_cast<size_t>(i))[*col]);
  }
  const Eigen::RowVectorXd x_mean = x.colwise().mean();
  const double y_mean = y.mean();
  x.rowwise() -= x_mean;
  Eigen::VectorXd w = Eigen::VectorXd::Zero(d);
  if (d > 0) {
    Eigen::MatrixXd gram = x.transpose() * x;
    gram.diagonal().array() += lambda;
    w = gram.ldlt().solve(x.transpose() * (y.array() - y_mean).matrix());
  }
  const double intercept = y_mean - x_mean.dot(w);

  const Eigen::Index m = static_cast<Eigen::Index>(fte.rows);
  const Matrix xt = Eigen::Map<const Matrix>(fte.values.data(), m, d);
  const Eigen::VectorXd pred = (xt * w).array() + intercept;
  double sse = 0;
  for (Eigen::Index i = 0; i < m; ++i) {
    const double r =
        pred(i) - std::get<double>(te.record(static_cast<size_t>(i))[*col]);
    sse += r * r;
  }
  return std::sqrt(sse / static_cast<double>(m));
}

std::string FprKey(double level) { return Shortest(level); }

absl::StatusOr<AttackResult> EvaluateAttack(
    const AttackScoring& scoring, std::span<const double> fpr_levels) {
  AttackResult result;
  ASSIGN_OR_RETURN(result.auc, AucRoc(scoring));
  for (double level : fpr_levels) {
    ASSIGN_OR_RETURN(result.tpr_at_fpr[FprKey(level)],
                     TprAtFpr(scoring, level));
  }
  ASSIGN_OR_RETURN(result.roc, ComputeRocCurve(scoring));
  return result;
}

json ToJson(const AuditReport& report) {
  json attacks = json::object();
  for (const auto& [name, a] : report.attacks) {
    attacks[name] = {{"auc", a.auc},
                     {"tpr_at_fpr", a.tpr_at_fpr},
                     {"roc", RocToJson(a.roc)},
                     {"params", a.params}};
  }
  json fidelity = nullptr;
  if (report.fidelity.has_value()) {
    fidelity = {{"wasserstein_mean", report.fidelity->wasserstein_mean},
                {"mmd", report.fidelity->mmd}};
  }
  json utility = nullptr;
  if (report.utility.has_value()) {
    utility = {{"rmse_real", report.utility->rmse_real},
               {"rmse_synth", report.utility->rmse_synth}};
  }
  return {{"attacks", attacks},
          {"fidelity", fidelity},
          {"utility", utility},
          {"provenance", report.provenance}};
}

absl::StatusOr<AuditReport> AuditReportFromJson(const json& j) {
  try {
    AuditReport report;
    for (const auto& [name, a] : j.at("attacks").items()) {
      AttackResult r;
      r.auc = a.at("auc").get<double>();
      r.tpr_at_fpr = a.at("tpr_at_fpr").get<std::map<std::string, double>>();
      for (const json& p : a.at("roc")) {
        r.roc.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
      }
      r.params = a.value("params", json::object());
      report.attacks[name] = std::move(r);
    }
    if (const json& f = j.at("fidelity"); !f.is_null()) {
      report.fidelity = Fidelity{f.at("wasserstein_mean").get<double>(),
                                 f.at("mmd").get<double>()};
    }
    if (const json& u = j.at("utility"); !u.is_null()) {
      report.utility = Utility{u.at("rmse_real").get<double>(),
                               u.at("rmse_synth").get<double>()};
    }
    report.provenance = j.at("provenance");
    return report;
  } catch (const json::exception& e) {
    return MakeError(ErrorKind::kDecodeFailure,
                     std::string("malformed audit report: ") + e.what());
  }
}

TopKSummary SummarizeTopK(std::vector<RunSummary> runs, size_t k) {
  std::sort(runs.begin(), runs.end(),
            [](const RunSummary& a, const RunSummary& b) {
              if (a.auc != b.auc) return a.auc > b.auc;
              return a.label < b.label;
            });
  TopKSummary s;
  s.k = std::min(k, runs.size());
  if (s.k == 0) return s;
  for (size_t i = 0; i < s.k; ++i) {
    s.labels.push_back(runs[i].label);
    s.mean_auc += runs[i].auc;
  }
  s.mean_auc /= static_cast<double>(s.k);
  double ss = 0;
  for (size_t i = 0; i < s.k; ++i) {
    ss += (runs[i].auc - s.mean_auc) * (runs[i].auc - s.mean_auc);
  }
  s.std_auc = std::sqrt(ss / static_cast<double>(s.k));
  return s;
}

}  // namespace levatt
