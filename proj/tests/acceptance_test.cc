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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Fixture sizes are fixed so the output is reproducible.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <unistd.h>

#include "absl/status/statusor.h"
#include "levatt/baselines.h"
#include "levatt/dm.h"
#include "levatt/kernels/kernels.h"
#include "levatt/levatt.h"
#include "levatt/metrics.h"
#include "levatt/pipeline.h"
#include "levatt/tabular.h"
#include "levatt/tlp.h"
#include "levatt/toygen.h"
#include "oracles.h"

namespace levatt {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = false;
  std::string detail;
};

template <typename T>
T Must(absl::StatusOr<T> v) {
  if (!v.ok()) throw std::runtime_error(std::string(v.status().message()));
  return *std::move(v);
}

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::string Fmt(const char* format, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, a);
  return buf;
}

std::string Join(const std::vector<double>& xs) {
  std::string out;
  for (double x : xs) out += (out.empty() ? "" : " ") + Fmt("%.4f", x);
  return out;
}

double LevAttAuc(const Dataset& members, const Dataset& nonmembers,
                 const Dataset& synthetic) {
  const auto a = Must(LevAttAttack(members, synthetic, {}));
  const auto b = Must(LevAttAttack(nonmembers, synthetic, {}));
  return Must(AucRoc(AttackScoring::FromGroups(a, b)));
}

// The memorizer fixture: full-order character model with light smoothing.
constexpr double kMemorizerAlpha = 0.01;

struct Fixture {
  Dataset train;
  Dataset holdout;
  CharNgramModel model;
};

Fixture Memorizer(int digits, int rows, uint64_t seed) {
  auto [train, holdout] =
      Must(SimulateGaussian(SimSpec::ForDigits(300, 5, digits, rows, seed)));
  CharNgramModel model =
      Must(CharNgramModel::Train(train, kFullOrder, kMemorizerAlpha, {}));
  return {std::move(train), std::move(holdout), std::move(model)};
}

Dataset Sample(const CharNgramModel& model, size_t n, uint64_t seed,
               double t = 1) {
  GenerateOptions opts;
  opts.seed = seed;
  if (t != 1) opts.tlp = TlpConfig{t, 1e-6, CurveKind::kPowerRoot};
  return Must(Generate(model, n, opts));
}

Verdict LevenshteinOracle() {
  const auto start = Clock::now();
  const std::string alphabet =
      "0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";
  std::mt19937_64 rng(2024);
  constexpr size_t kPairs = 10000;
  std::vector<std::string> a(kPairs);
  std::vector<std::string> b(kPairs);
  for (size_t i = 0; i < kPairs; ++i) {
    a[i] = oracle::RandomString(rng, 64, alphabet);
    b[i] = oracle::RandomString(rng, 64, alphabet);
  }
  std::vector<kernels::Isa> isas{kernels::Isa::kScalar};
  if (kernels::DetectIsa() == kernels::Isa::kAvx2) {
    isas.push_back(kernels::Isa::kAvx2);
  }
  auto kernel = [](const std::string& x, const std::string& y,
                   kernels::Isa isa) {
    const std::vector<std::string> one{y};
    LevAttOptions opts;
    opts.isa = isa;
    return static_cast<size_t>(
        Must(SyntheticIndex::Build(one)).Nearest(x, opts).distance);
  };
  size_t mismatches = 0;
  size_t axiom_failures = 0;
  for (size_t i = 0; i < kPairs; ++i) {
    const size_t want = oracle::LevenshteinMatrix(a[i], b[i]);
    if (Levenshtein(std::string_view(a[i]), std::string_view(b[i])) != want) {
      ++mismatches;
    }
    for (kernels::Isa isa : isas) {
      if (kernel(a[i], b[i], isa) != want) ++mismatches;
    }
    // Triple (x, y, z) = (a_i, b_i, a_{i+1}).
    const std::string& x = a[i];
    const std::string& y = b[i];
    const std::string& z = a[(i + 1) % kPairs];
    const size_t xy = kernel(x, y, isas.back());
    const size_t yx = kernel(y, x, isas.back());
    const size_t xz = kernel(x, z, isas.back());
    const size_t yz = kernel(y, z, isas.back());
    const bool ok = kernel(x, x, isas.back()) == 0 && (xy == 0) == (x == y) &&
                    xy == yx && xz <= xy + yz;
    if (!ok) ++axiom_failures;
  }
  const double secs = Seconds(start);
  std::string isa_names;
  for (kernels::Isa isa : isas) {
    isa_names += (isa_names.empty() ? "" : "+") + std::string(kernels::IsaName(isa));
  }
  return {mismatches == 0 && axiom_failures == 0 && secs < 30,
          std::to_string(kPairs) + " pairs, kernels " + isa_names + ", " +
              std::to_string(mismatches) + " mismatches, " +
              std::to_string(axiom_failures) + " axiom failures, " +
              Fmt("%.1f s", secs)};
}

Verdict PerfectClassifier() {
  auto [train, holdout] =
      Must(SimulateGaussian(SimSpec::ForDigits(300, 5, 100, 500, 1)));
  const auto a = Must(LevAttAttack(train, train, {}));
  const auto b = Must(LevAttAttack(holdout, train, {}));
  const AttackScoring scoring = AttackScoring::FromGroups(a, b);
  const double auc = Must(AucRoc(scoring));
  const double tpr0 = Must(TprAtFpr(scoring, 0));
  return {auc == 1.0 && tpr0 == 1.0,
          "auc=" + Fmt("%.6f", auc) + " tpr@0=" + Fmt("%.6f", tpr0)};
}

Verdict NullCalibration() {
  std::vector<double> aucs;
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    auto [train, holdout] =
        Must(SimulateGaussian(SimSpec::ForDigits(300, 5, 100, 500, seed)));
    Dataset independent =
        Must(SimulateGaussian(SimSpec::ForDigits(300, 5, 100, 500, seed + 1000)))
            .first;
    aucs.push_back(LevAttAuc(train, holdout, independent));
  }
  double mean = 0;
  for (double x : aucs) mean += x / static_cast<double>(aucs.size());
  return {mean >= 0.45 && mean <= 0.55,
          "mean auc=" + Fmt("%.4f", mean) + " per seed " + Join(aucs)};
}

// Copies every member cell with a leading "9" glued on: one edit per column
// away in string space, about 9000 units away in feature space.
Dataset PushFar(const Dataset& members) {
  std::vector<Record> rows;
  for (const Record& r : members.records()) {
    Record out = r;
    for (size_t c = 0; c < r.size(); ++c) {
      const int precision = *members.schema().column(c).precision;
      out[c] = *ParseNumber("9" + FormatFixed(std::get<double>(r[c]), precision));
    }
    rows.push_back(std::move(out));
  }
  return Must(Dataset::Create(members.schema(), std::move(rows)));
}

Verdict Orthogonality() {
  auto [train, holdout] =
      Must(SimulateGaussian(SimSpec::ForDigits(300, 5, 40, 500, 7)));
  const Dataset synthetic = PushFar(train);
  AuditOptions opts;
  opts.fidelity = false;
  const AuditReport report = Must(RunAudit(train, holdout, synthetic, opts));
  const double lev = report.attacks.at("levatt").auc;
  const double dcr = report.attacks.at("dcr").auc;
  const double mc = report.attacks.at("mc").auc;
  const double kde = report.attacks.at("kde").auc;
  return {lev >= 0.9 && dcr <= 0.6 && mc <= 0.6 && kde <= 0.6,
          "levatt=" + Fmt("%.4f", lev) + " dcr=" + Fmt("%.4f", dcr) +
              " mc=" + Fmt("%.4f", mc) + " kde=" + Fmt("%.4f", kde)};
}

Verdict DigitTrend() {
  const std::vector<int> digits{20, 40, 60, 80, 100};
  std::vector<double> means;
  for (int d : digits) {
    double mean = 0;
    for (uint64_t seed : {1, 2, 3}) {
      const Fixture f = Memorizer(d, 500, seed);
      mean += LevAttAuc(f.train, f.holdout, Sample(f.model, 500, seed)) / 3;
    }
    means.push_back(mean);
  }
  double worst_drop = 0;
  for (size_t i = 1; i < means.size(); ++i) {
    worst_drop = std::max(worst_drop, means[i - 1] - means[i]);
  }
  return {worst_drop <= 0.02, "mean auc at 20..100 digits: " + Join(means) +
                                  ", largest step down " +
                                  Fmt("%.4f", worst_drop)};
}

Verdict VolumeTrend() {
  std::vector<double> means;
  for (size_t k : {1, 5, 10}) {
    double mean = 0;
    for (uint64_t seed : {1, 2, 3}) {
      const Fixture f = Memorizer(20, 500, seed);
      mean += LevAttAuc(f.train, f.holdout, Sample(f.model, 500 * k, seed)) / 3;
    }
    means.push_back(mean);
  }
  const bool monotone = std::is_sorted(means.begin(), means.end());
  const double gain = means.back() - means.front();
  return {monotone && gain >= 0.02, "mean auc at 1x/5x/10x: " + Join(means) +
                                        ", total increase " +
                                        Fmt("%.4f", gain)};
}

Verdict DmTradeoff() {
  const std::vector<double> p_max{0, 0.1, 0.3, 0.6};
  std::vector<double> aucs(p_max.size(), 0.0);
  std::vector<double> ws(p_max.size(), 0.0);
  const std::vector<uint64_t> seeds{1, 2, 3};
  for (uint64_t seed : seeds) {
    const Fixture f = Memorizer(100, 500, seed);
    const Dataset synthetic = Sample(f.model, 500, seed);
    for (size_t i = 0; i < p_max.size(); ++i) {
      DmConfig cfg;
      cfg.p_max = p_max[i];
      cfg.seed = seed;
      const Dataset defended = Must(DigitModifier(synthetic, cfg));
      aucs[i] += LevAttAuc(f.train, f.holdout, defended) / 3;
      ws[i] += Must(WassersteinFidelity(f.train, defended)) / 3;
    }
  }
  bool ok = true;
  for (size_t i = 1; i < p_max.size(); ++i) {
    ok = ok && aucs[i] < aucs[i - 1] && ws[i] > ws[i - 1];
  }
  return {ok, "p_max 0/0.1/0.3/0.6 mean auc " + Join(aucs) +
                  "; wasserstein " + Join(ws)};
}

Verdict TlpLaws() {
  std::mt19937_64 rng(88);
  std::normal_distribution<double> logit(0, 3);
  std::uniform_real_distribution<double> tendency(1, 20);
  std::uniform_int_distribution<size_t> width(2, 60);
  auto random_vector = [&] {
    LogitVector v(width(rng));
    for (double& x : v) x = logit(rng);
    return v;
  };
  size_t identity_failures = 0;
  for (int i = 0; i < 1000; ++i) {
    const LogitVector v = random_vector();
    const LogitVector out = Must(TlpTransform(v, TlpConfig{1}));
    for (size_t k = 0; k < v.size(); ++k) {
      if (std::abs(out[k] - v[k]) > 1e-12 * std::max(1.0, std::abs(v[k]))) {
        ++identity_failures;
        break;
      }
    }
  }
  auto argsort = [](const LogitVector& v) {
    std::vector<size_t> idx(v.size());
    for (size_t k = 0; k < idx.size(); ++k) idx[k] = k;
    std::stable_sort(idx.begin(), idx.end(),
                     [&](size_t x, size_t y) { return v[x] < v[y]; });
    return idx;
  };
  size_t order_failures = 0;
  for (int i = 0; i < 1000; ++i) {
    const LogitVector v = random_vector();
    const LogitVector out = Must(TlpTransform(v, TlpConfig{tendency(rng)}));
    if (argsort(out) != argsort(v)) ++order_failures;
  }
  std::uniform_real_distribution<double> unit(0, 1);
  size_t ratio_failures = 0;
  for (int i = 0; i < 10000; ++i) {
    double x = unit(rng);
    double y = unit(rng);
    if (x == 0 || y == 0) continue;
    if (x > y) std::swap(x, y);
    const TlpConfig cfg{tendency(rng)};
    const double rx = CurvePoint(x, cfg) / x;
    const double ry = CurvePoint(y, cfg) / y;
    if (rx < ry * (1 - 1e-12)) ++ratio_failures;
  }
  return {identity_failures == 0 && order_failures == 0 && ratio_failures == 0,
          "identity failures " + std::to_string(identity_failures) +
              "/1000, order failures " + std::to_string(order_failures) +
              "/1000, ratio failures " + std::to_string(ratio_failures) +
              "/10000"};
}

Verdict TlpTuning() {
  const Fixture f = Memorizer(100, 500, 1);
  const TendencyGenerator generate = [&](double t) -> absl::StatusOr<Dataset> {
    GenerateOptions opts;
    opts.seed = 1;
    if (t != 1) opts.tlp = TlpConfig{t, 1e-6, CurveKind::kPowerRoot};
    return Generate(f.model, 500, opts);
  };
  const std::vector<double> grid = DefaultTendencyGrid();
  const Dataset vanilla = Must(generate(1));
  const double vanilla_auc = LevAttAuc(f.train, f.holdout, vanilla);

  const TuneResult by_auc = Must(TuneTendency(generate, f.train, f.holdout, {},
                                              TuneCriterion::AucBelow(0.55), grid));
  const double tuned_auc = by_auc.report.attacks.at("levatt").auc;
  const TuneResult by_tpr =
      Must(TuneTendency(generate, f.train, f.holdout, {},
                        TuneCriterion::TprBelow(0.125, 0.1), grid));
  const double tuned_tpr = by_tpr.report.attacks.at("levatt").tpr_at_fpr.at("0.1");

  const double mmd_vanilla = Must(MmdFidelity(f.train, vanilla));
  const double mmd_tuned = Must(MmdFidelity(f.train, by_auc.synthetic));
  const double mmd_tpr_tuned = Must(MmdFidelity(f.train, by_tpr.synthetic));
  const double mmd_holdout = Must(MmdFidelity(f.train, f.holdout));
  const bool mmd_ok = mmd_tuned <= 2 * mmd_vanilla;

  const bool ok = vanilla_auc >= 0.75 && by_auc.reached && tuned_auc <= 0.55 &&
                  by_tpr.reached && mmd_ok;
  std::string detail =
      "vanilla auc=" + Fmt("%.4f", vanilla_auc) + "; AucBelow(0.55) " +
      (by_auc.reached ? "reached" : "not reached") + " at t=" +
      Fmt("%g", by_auc.t) + " auc=" + Fmt("%.4f", tuned_auc) +
      "; TprBelow(0.125@0.1) " + (by_tpr.reached ? "reached" : "not reached") +
      " at t=" + Fmt("%g", by_tpr.t) + " tpr=" + Fmt("%.4f", tuned_tpr) +
      "; mmd tlp=" + Fmt("%.3g", mmd_tuned) + " vanilla=" +
      Fmt("%.3g", mmd_vanilla) + " (bound " + Fmt("%.3g", 2 * mmd_vanilla) +
      ", tpr-tuned=" + Fmt("%.3g", mmd_tpr_tuned) + ", fresh holdout=" +
      Fmt("%.3g", mmd_holdout) + ")";
  if (!mmd_ok) detail += " mmd bound missed";
  return {ok, detail};
}

Dataset RandomDataset(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> n_cols(1, 5);
  std::uniform_int_distribution<int> n_rows(1, 30);
  std::uniform_int_distribution<int> kind(0, 3);
  std::uniform_int_distribution<int> precision(0, 6);
  std::normal_distribution<double> value(0, 500);
  std::uniform_int_distribution<int> small(0, 999);
  std::bernoulli_distribution missing(0.1);
  const std::vector<std::string> colors{"red", "green", "blue"};
  std::vector<Column> cols;
  const int k = n_cols(rng);
  for (int c = 0; c < k; ++c) {
    const int which = kind(rng);
    Column col;
    col.name = "c" + std::to_string(c);
    col.kind = which <= 1   ? ColumnKind::kContinuous
               : which == 2 ? ColumnKind::kOrdinal
                            : ColumnKind::kCategorical;
    if (col.kind == ColumnKind::kContinuous) col.precision = precision(rng);
    cols.push_back(col);
  }
  const Schema schema = Must(Schema::Create(cols));
  std::vector<Record> rows(n_rows(rng));
  for (Record& r : rows) {
    for (const Column& col : cols) {
      if (missing(rng)) {
        r.push_back(Missing{});
      } else if (col.kind == ColumnKind::kContinuous) {
        r.push_back(*ParseNumber(FormatFixed(value(rng), *col.precision)));
      } else if (col.kind == ColumnKind::kOrdinal) {
        r.push_back(std::to_string(small(rng)));
      } else {
        r.push_back(colors[static_cast<size_t>(small(rng)) % colors.size()]);
      }
    }
  }
  return Must(Dataset::Create(schema, std::move(rows)));
}

std::string IncrementDigits(std::string text) {
  for (char& c : text) {
    if (c >= '0' && c <= '9') c = static_cast<char>('0' + (c - '0' + 1) % 10);
  }
  return text;
}

Verdict DmLaws() {
  std::mt19937_64 rng(31);
  size_t identity_failures = 0;
  size_t replay_failures = 0;
  size_t cells_checked = 0;
  size_t oracle_failures = 0;
  for (int i = 0; i < 100; ++i) {
    const Dataset ds = RandomDataset(rng);
    DmConfig off;
    off.seed = static_cast<uint64_t>(i);
    if (FormatCsv(Must(DigitModifier(ds, off))) != FormatCsv(ds)) {
      ++identity_failures;
    }

    DmConfig half;
    half.p_max = 0.5;
    half.seed = 17;
    const std::string first = FormatCsv(Must(DigitModifier(ds, half, {}, 1)));
    const std::string second = FormatCsv(Must(DigitModifier(ds, half, {}, 3)));
    if (first != second) ++replay_failures;

    DmConfig all;
    all.p_min = 1;
    all.p_max = 1;
    const DmOutput out = Must(DigitModifierDetailed(ds, all));
    const EncodingConfig enc;
    for (size_t r = 0; r < ds.num_rows(); ++r) {
      for (size_t c = 0; c < ds.num_columns(); ++c) {
        const Column& col = ds.schema().column(c);
        const Cell& cell = ds.record(r)[c];
        if (IsMissing(cell) || col.kind == ColumnKind::kCategorical) continue;
        const std::string before =
            col.kind == ColumnKind::kContinuous
                ? FormatFixed(std::get<double>(cell), enc.PrecisionFor(col))
                : std::get<std::string>(cell);
        const std::string want = IncrementDigits(before);
        ++cells_checked;
        bool ok = out.rendered[r][c] == want;
        if (col.kind == ColumnKind::kContinuous) {
          ok = ok && std::get<double>(out.data.record(r)[c]) == *ParseNumber(want);
        } else {
          ok = ok && std::get<std::string>(out.data.record(r)[c]) == want;
        }
        if (!ok) ++oracle_failures;
      }
    }
  }
  return {identity_failures == 0 && replay_failures == 0 && oracle_failures == 0,
          "identity failures " + std::to_string(identity_failures) +
              "/100, replay failures " + std::to_string(replay_failures) +
              "/100, increment oracle failures " +
              std::to_string(oracle_failures) + "/" +
              std::to_string(cells_checked) + " cells"};
}

Dataset TwoColumns(const std::vector<std::pair<double, double>>& rows) {
  const Schema schema = Must(Schema::Create(
      {{"a", ColumnKind::kContinuous, std::nullopt},
       {"b", ColumnKind::kContinuous, std::nullopt}}));
  std::vector<Record> records;
  for (auto [x, y] : rows) records.push_back({x, y});
  return Must(Dataset::Create(schema, std::move(records)));
}

Verdict MetricOracles() {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> size(2, 50);
  std::uniform_int_distribution<int> coarse(0, 9);
  std::bernoulli_distribution coin(0.5);
  size_t auc_failures = 0;
  size_t area_failures = 0;
  size_t monotone_failures = 0;
  for (int i = 0; i < 1000; ++i) {
    AttackScoring s;
    const int n = size(rng);
    for (int k = 0; k < n; ++k) {
      s.scores.push_back(coarse(rng));
      s.members.push_back(k == 0 ? true : k == 1 ? false : coin(rng));
    }
    const double auc = Must(AucRoc(s));
    if (std::abs(auc - oracle::PairwiseAuc(s.scores, s.members)) > 1e-12) {
      ++auc_failures;
    }
    if (std::abs(TrapezoidArea(Must(ComputeRocCurve(s))) - auc) > 1e-9) {
      ++area_failures;
    }
    double previous = -1;
    for (int step = 0; step <= 20; ++step) {
      const double tpr = Must(TprAtFpr(s, step / 20.0));
      if (tpr < previous) ++monotone_failures;
      previous = tpr;
    }
  }

  std::normal_distribution<double> normal(0, 1);
  std::uniform_int_distribution<int> sample_size(1, 30);
  size_t w_failures = 0;
  for (int i = 0; i < 1000; ++i) {
    std::vector<double> a(sample_size(rng));
    std::vector<double> b(sample_size(rng));
    for (double& x : a) x = normal(rng);
    for (double& x : b) x = 2 * normal(rng) + 0.3;
    const double want = oracle::WassersteinSortedMatching(a, b);
    if (std::abs(Wasserstein1D(a, b) - want) > 1e-9 * std::max(1.0, want)) {
      ++w_failures;
    }
  }

  std::uniform_real_distribution<double> sigma(0.2, 2);
  size_t mmd_failures = 0;
  for (int i = 0; i < 100; ++i) {
    std::vector<std::pair<double, double>> x(3 + rng() % 8);
    std::vector<std::pair<double, double>> y(3 + rng() % 8);
    for (auto& [p, q] : x) p = normal(rng), q = normal(rng);
    for (auto& [p, q] : y) p = normal(rng) + 0.5, q = normal(rng);
    double lo[2] = {1e300, 1e300};
    double hi[2] = {-1e300, -1e300};
    for (auto [p, q] : x) {
      lo[0] = std::min(lo[0], p), hi[0] = std::max(hi[0], p);
      lo[1] = std::min(lo[1], q), hi[1] = std::max(hi[1], q);
    }
    auto scale = [&](const std::vector<std::pair<double, double>>& rows) {
      oracle::Rows out;
      for (auto [p, q] : rows) {
        out.push_back({(p - lo[0]) / (hi[0] - lo[0]), (q - lo[1]) / (hi[1] - lo[1])});
      }
      return out;
    };
    const double s = sigma(rng);
    const double want = std::max(oracle::MmdDoubleSum(scale(x), scale(y), s), 0.0);
    if (std::abs(Must(MmdFidelity(TwoColumns(x), TwoColumns(y), {s})) - want) > 1e-9) {
      ++mmd_failures;
    }
  }
  return {auc_failures + area_failures + monotone_failures + w_failures +
                  mmd_failures ==
              0,
          "auc " + std::to_string(auc_failures) + "/1000, trapezoid " +
              std::to_string(area_failures) + "/1000, tpr monotonicity " +
              std::to_string(monotone_failures) + ", wasserstein " +
              std::to_string(w_failures) + "/1000, mmd " +
              std::to_string(mmd_failures) + "/100 failures"};
}

Verdict SweepReproducible() {
  const auto start = Clock::now();
  const fs::path root = fs::temp_directory_path() /
                        ("levatt_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(root);
  const std::string config =
      std::string(LEVATT_SOURCE_DIR) + "/configs/fixture_sweep.json";
  std::vector<std::string> summaries;
  std::vector<int> codes;
  for (const char* run : {"first", "second"}) {
    std::ostringstream out;
    std::ostringstream err;
    codes.push_back(RunCli({"levatt", "sweep", "--config", config, "--out",
                            (root / run).string()},
                           out, err));
    summaries.push_back(
        ReadFile((root / run / "summary.csv").string()).value_or("<missing>"));
  }
  fs::remove_all(root);
  const double secs = Seconds(start);
  const bool ok = codes[0] == 0 && codes[1] == 0 &&
                  summaries[0] != "<missing>" && summaries[0] == summaries[1];
  const size_t lines = static_cast<size_t>(
      std::count(summaries[0].begin(), summaries[0].end(), '\n'));
  return {ok, "exit codes " + std::to_string(codes[0]) + "/" +
                  std::to_string(codes[1]) + ", summary.csv " +
                  (summaries[0] == summaries[1] ? "identical" : "differs") +
                  " (" + std::to_string(lines) + " lines), both runs " +
                  Fmt("%.1f s", secs)};
}

}  // namespace
}  // namespace levatt

int main() {
  using levatt::Verdict;
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"AC01 levenshtein oracle", levatt::LevenshteinOracle},
      {"AC02 perfect classifier", levatt::PerfectClassifier},
      {"AC03 null calibration", levatt::NullCalibration},
      {"AC04 orthogonality", levatt::Orthogonality},
      {"AC05 digit trend", levatt::DigitTrend},
      {"AC06 volume trend", levatt::VolumeTrend},
      {"AC07 dm trade-off", levatt::DmTradeoff},
      {"AC08 tlp laws", levatt::TlpLaws},
      {"AC09 tlp tuning", levatt::TlpTuning},
      {"AC10 dm laws", levatt::DmLaws},
      {"AC11 metric oracles", levatt::MetricOracles},
      {"AC12 sweep reproducible", levatt::SweepReproducible},
  };
  const auto start = levatt::Clock::now();
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    const auto t0 = levatt::Clock::now();
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    if (!v.pass) ++failed;
    std::printf("%s %s: %s [%.1f s]\n", v.pass ? "PASS" : "FAIL", name.c_str(),
                v.detail.c_str(), levatt::Seconds(t0));
    std::fflush(stdout);
  }
  const double total = levatt::Seconds(start);
  std::printf("%d/%zu criteria passed, total %.1f s (budget 600 s)\n",
              static_cast<int>(criteria.size()) - failed, criteria.size(), total);
  return failed == 0 && total <= 600 ? 0 : 1;
}
