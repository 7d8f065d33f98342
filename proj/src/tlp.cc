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


#include "levatt/tlp.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "levatt/levatt.h"
#include "levatt/status.h"

namespace levatt {
namespace {

using nlohmann::json;

constexpr double kReportLevels[] = {0.0, 0.1};

std::string Shortest(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

std::optional<double> ParseDouble(std::string_view text) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return v;
}

}  // namespace

absl::Status TlpConfig::Validate() const {
  if (!(t >= 1) || !std::isfinite(t)) {
    return MakeError(ErrorKind::kInvalidConfig,
                     "tendency must be >= 1, got " + Shortest(t));
  }
  if (!(epsilon > 0)) {
    return MakeError(ErrorKind::kInvalidConfig, "epsilon must be positive");
  }
  return absl::OkStatus();
}

json ToJson(const TlpConfig& cfg) {
  return {{"t", cfg.t}, {"epsilon", cfg.epsilon}, {"curve", "power_root"}};
}

absl::StatusOr<TlpConfig> TlpConfigFromJson(const json& j) {
  if (!j.is_object()) {
    return MakeError(ErrorKind::kInvalidConfig, "TLP config must be an object");
  }
  TlpConfig cfg;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "t") {
        cfg.t = value.get<double>();
      } else if (key == "epsilon") {
        cfg.epsilon = value.get<double>();
      } else if (key == "curve") {
        if (value.get<std::string>() != "power_root") {
          return MakeError(ErrorKind::kInvalidConfig,
                           "unknown curve '" + value.get<std::string>() + "'");
        }
      } else {
        return MakeError(ErrorKind::kInvalidConfig,
                         "unknown TLP config key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    return MakeError(ErrorKind::kInvalidConfig,
                     std::string("bad TLP config: ") + e.what());
  }
  RETURN_IF_ERROR(cfg.Validate());
  return cfg;
}

absl::StatusOr<ScaledLogits> Scale(const LogitVector& logits, double epsilon) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double v : logits) {
    if (!std::isfinite(v)) continue;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (lo > hi) {
    return MakeError(ErrorKind::kAllMasked, "no finite logit");
  }
  ScaledLogits s;
  s.min = lo;
  s.max = hi;
  s.epsilon = epsilon;
  s.values = logits;
  const double denom = hi - lo + epsilon;
  for (double& v : s.values) {
    if (std::isfinite(v)) v = (v - lo) / denom;
  }
  return s;
}

double CurvePoint(double s, const TlpConfig& cfg) {
  if (cfg.t == 1) return s;
  return std::pow(s, 1 / cfg.t);
}

ScaledLogits ApplyCurve(const ScaledLogits& scaled, const TlpConfig& cfg) {
  ScaledLogits out = scaled;
  for (double& v : out.values) {
    if (std::isfinite(v)) v = CurvePoint(v, cfg);
  }
  return out;
}

LogitVector Unscale(const ScaledLogits& scaled) {
  LogitVector out = scaled.values;
  const double width = scaled.max - scaled.min + scaled.epsilon;
  for (double& v : out) {
    if (std::isfinite(v)) v = scaled.min + v * width;
  }
  return out;
}

absl::StatusOr<LogitVector> TlpTransform(const LogitVector& logits,
                                         const TlpConfig& cfg) {
  ASSIGN_OR_RETURN(ScaledLogits s, Scale(logits, cfg.epsilon));
  return Unscale(ApplyCurve(s, cfg));
}

std::vector<double> Softmax(const LogitVector& logits) {
  double hi = -std::numeric_limits<double>::infinity();
  for (double v : logits) {
    if (std::isfinite(v)) hi = std::max(hi, v);
  }
  std::vector<double> p(logits.size(), 0.0);
  double total = 0;
  for (size_t i = 0; i < logits.size(); ++i) {
    if (!std::isfinite(logits[i])) continue;
    p[i] = std::exp(logits[i] - hi);
    total += p[i];
  }
  if (total > 0) {
    for (double& v : p) v /= total;
  }
  return p;
}

size_t SampleCategorical(const std::vector<double>& probs,
                         std::mt19937_64& rng) {
  const double u = std::generate_canonical<double, 53>(rng);
  double cumulative = 0;
  size_t last = 0;
  for (size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0) continue;
    cumulative += probs[i];
    last = i;
    if (u < cumulative) return i;
  }
  return last;
}

absl::StatusOr<std::vector<size_t>> TlpSample(
    LogitSource& source, const std::optional<TlpConfig>& cfg,
    std::mt19937_64& rng) {
  if (cfg.has_value()) RETURN_IF_ERROR(cfg->Validate());
  std::vector<size_t> tokens;
  while (std::optional<LogitVector> logits = source.Next(tokens)) {
    const std::string step = "step " + std::to_string(tokens.size());
    if (cfg.has_value()) {
      absl::StatusOr<LogitVector> bent = TlpTransform(*logits, *cfg);
      if (!bent.ok()) return Annotate(bent.status(), step);
      logits = *std::move(bent);
    } else if (std::none_of(logits->begin(), logits->end(),
                            [](double v) { return std::isfinite(v); })) {
      return Annotate(MakeError(ErrorKind::kAllMasked, "no finite logit"),
                      step);
    }
    tokens.push_back(SampleCategorical(Softmax(*logits), rng));
  }
  return tokens;
}

bool TuneCriterion::Met(const AttackResult& levatt) const {
  if (kind == Kind::kAucBelow) return levatt.auc <= threshold;
  auto it = levatt.tpr_at_fpr.find(FprKey(fpr));
  return it != levatt.tpr_at_fpr.end() && it->second <= threshold;
}

std::string TuneCriterion::ToString() const {
  if (kind == Kind::kAucBelow) return "auc:" + Shortest(threshold);
  return "tpr:" + Shortest(threshold) + "@" + Shortest(fpr);
}

absl::StatusOr<TuneCriterion> ParseTuneCriterion(std::string_view text) {
  auto bad = [&text] {
    return MakeError(ErrorKind::kInvalidConfig,
                     "criterion must look like auc:0.55 or tpr:0.125@0.1, got '" +
                         std::string(text) + "'");
  };
  const size_t colon = text.find(':');
  if (colon == std::string_view::npos) return bad();
  const std::string_view kind = text.substr(0, colon);
  std::string_view rest = text.substr(colon + 1);
  if (kind == "auc") {
    auto v = ParseDouble(rest);
    if (!v.has_value()) return bad();
    return TuneCriterion::AucBelow(*v);
  }
  if (kind == "tpr") {
    double fpr = 0.1;
    if (const size_t at = rest.find('@'); at != std::string_view::npos) {
      auto f = ParseDouble(rest.substr(at + 1));
      if (!f.has_value()) return bad();
      fpr = *f;
      rest = rest.substr(0, at);
    }
    auto v = ParseDouble(rest);
    if (!v.has_value()) return bad();
    return TuneCriterion::TprBelow(*v, fpr);
  }
  return bad();
}

std::vector<double> DefaultTendencyGrid() {
  std::vector<double> grid;
  for (int t = 1; t <= 20; ++t) grid.push_back(t);
  return grid;
}

absl::StatusOr<TuneResult> TuneTendency(const TendencyGenerator& generate,
                                        const Dataset& members,
                                        const Dataset& nonmembers,
                                        const EncodingConfig& enc,
                                        const TuneCriterion& criterion,
                                        std::span<const double> t_grid) {
  if (t_grid.empty()) {
    return MakeError(ErrorKind::kInvalidConfig, "empty tendency grid");
  }
  for (size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] >= 1) || (i > 0 && !(t_grid[i] > t_grid[i - 1]))) {
      return MakeError(ErrorKind::kInvalidConfig,
                       "tendency grid must be strictly ascending and >= 1");
    }
  }
  std::vector<double> levels(std::begin(kReportLevels),
                             std::end(kReportLevels));
  if (criterion.kind == TuneCriterion::Kind::kTprBelow &&
      std::find(levels.begin(), levels.end(), criterion.fpr) == levels.end()) {
    levels.push_back(criterion.fpr);
  }

  TuneResult result;
  for (double t : t_grid) {
    const std::string where = "t=" + Shortest(t);
    absl::StatusOr<Dataset> synthetic = generate(t);
    if (!synthetic.ok()) return Annotate(synthetic.status(), where);
    absl::StatusOr<std::vector<double>> in =
        LevAttAttack(members, *synthetic, enc);
    if (!in.ok()) return Annotate(in.status(), where);
    absl::StatusOr<std::vector<double>> out =
        LevAttAttack(nonmembers, *synthetic, enc);
    if (!out.ok()) return Annotate(out.status(), where);
    absl::StatusOr<AttackResult> levatt =
        EvaluateAttack(AttackScoring::FromGroups(*in, *out), levels);
    if (!levatt.ok()) return Annotate(levatt.status(), where);
    result.trace.push_back({t, levatt->auc,
                            levatt->tpr_at_fpr[FprKey(criterion.fpr)]});
    result.t = t;
    result.synthetic = *std::move(synthetic);
    result.report = AuditReport{};
    result.report.attacks["levatt"] = *std::move(levatt);
    if (criterion.Met(result.report.attacks["levatt"])) {
      result.reached = true;
      break;
    }
  }

  absl::StatusOr<double> w = WassersteinFidelity(members, result.synthetic);
  absl::StatusOr<double> mmd = MmdFidelity(members, result.synthetic);
  if (w.ok() && mmd.ok()) result.report.fidelity = Fidelity{*w, *mmd};
  json trace = json::array();
  for (const TuneStep& s : result.trace) {
    trace.push_back({{"t", s.t}, {"auc", s.auc}, {"tpr", s.tpr}});
  }
  result.report.provenance = {{"criterion", criterion.ToString()},
                              {"t", result.t},
                              {"reached", result.reached},
                              {"trace", trace}};
  return result;
}

}  // namespace levatt
