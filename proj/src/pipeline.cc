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


#include "levatt/pipeline.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <set>

#include "levatt/baselines.h"
#include "levatt/levatt.h"
#include "levatt/parallel.h"
#include "levatt/status.h"
#include "levatt/toygen.h"

namespace levatt {
namespace {

absl::StatusOr<Dataset> Concat(const Dataset& a, const Dataset& b) {
  std::vector<Record> rows = a.records();
  rows.insert(rows.end(), b.records().begin(), b.records().end());
  return Dataset::Create(a.schema(), std::move(rows));
}

std::string OrderName(int order) {
  return order == kFullOrder ? "full" : std::to_string(order);
}

std::string CsvField(const std::string& text) {
  if (text.find_first_of(",\"\n\r") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

absl::StatusOr<int> ParseOrder(const nlohmann::json& v) {
  if (v.is_string()) {
    if (v.get<std::string>() == "full") return kFullOrder;
  } else if (v.is_number_integer()) {
    return v.get<int>();
  }
  return MakeError(ErrorKind::kInvalidConfig,
                   "order must be a positive integer or \"full\", got " + v.dump());
}

absl::Status RejectUnknown(const nlohmann::json& j, const std::set<std::string>& keys,
                           const std::string& where) {
  if (!j.is_object()) {
    return MakeError(ErrorKind::kInvalidConfig, where + " must be an object");
  }
  for (const auto& [key, value] : j.items()) {
    if (!keys.contains(key)) {
      return MakeError(ErrorKind::kInvalidConfig,
                       "unknown key '" + key + "' in " + where);
    }
  }
  return absl::OkStatus();
}

}  // namespace

int ExitCodeFor(const absl::Status& status) {
  if (status.ok()) return kExitOk;
  switch (GetErrorKind(status)) {
    case ErrorKind::kInvalidConfig:
    case ErrorKind::kUnreadableFile:
    case ErrorKind::kEmptyDataset:
    case ErrorKind::kRaggedRow:
    case ErrorKind::kInvalidCell:
      return kExitConfig;
    case ErrorKind::kSchemaMismatch:
    case ErrorKind::kDimensionMismatch:
      return kExitSchemaMismatch;
    case ErrorKind::kDegenerateLabels:
      return kExitDegenerateLabels;
    default:
      return kExitFailure;
  }
}

std::pair<Dataset, Dataset> MembershipSplit(const Dataset& real,
                                            const Dataset& holdout) {
  const size_t n = std::min({real.num_rows(), holdout.num_rows(), kMaxTargetsPerSide});
  return {real.Head(n), holdout.Head(n)};
}

const std::vector<std::string>& KnownAttacks() {
  static const std::vector<std::string> kAttacks = {"levatt", "dcr", "mc", "kde"};
  return kAttacks;
}

absl::Status ValidateAttacks(const std::vector<std::string>& attacks) {
  if (attacks.empty()) {
    return MakeError(ErrorKind::kInvalidConfig, "no attacks requested");
  }
  std::set<std::string> seen;
  for (const std::string& a : attacks) {
    const auto& known = KnownAttacks();
    if (std::find(known.begin(), known.end(), a) == known.end()) {
      return MakeError(ErrorKind::kInvalidConfig,
                       "unknown attack '" + a + "' (expected levatt, dcr, mc or kde)");
    }
    if (!seen.insert(a).second) {
      return MakeError(ErrorKind::kInvalidConfig, "attack '" + a + "' listed twice");
    }
  }
  return absl::OkStatus();
}

std::vector<double> ReportedFprLevels() { return {0.0, 0.1}; }

absl::StatusOr<AuditReport> RunAudit(const Dataset& members,
                                     const Dataset& nonmembers,
                                     const Dataset& synthetic,
                                     const AuditOptions& options) {
  RETURN_IF_ERROR(ValidateAttacks(options.attacks));
  if (!(members.schema() == synthetic.schema()) ||
      !(nonmembers.schema() == synthetic.schema())) {
    return MakeError(ErrorKind::kSchemaMismatch,
                     "real, holdout and synthetic data must share one schema");
  }
  if (members.empty() || nonmembers.empty()) {
    return MakeError(ErrorKind::kDegenerateLabels,
                     "need at least one member and one non-member row");
  }
  const std::vector<double> levels = ReportedFprLevels();
  AuditReport report;
  std::optional<std::pair<FeatureMatrix, FeatureMatrix>> features;
  const size_t n_in = members.num_rows();
  for (const std::string& name : options.attacks) {
    std::vector<double> in;
    std::vector<double> out;
    nlohmann::json params = nlohmann::json::object();
    absl::Status failed;
    if (name == "levatt") {
      LevAttOptions lo;
      lo.workers = options.workers;
      auto a = LevAttAttack(members, synthetic, options.encoding, lo);
      auto b = LevAttAttack(nonmembers, synthetic, options.encoding, lo);
      if (!a.ok()) return Annotate(a.status(), name);
      if (!b.ok()) return Annotate(b.status(), name);
      in = *std::move(a);
      out = *std::move(b);
      params = {{"distance", "levenshtein"}, {"encoding", ToJson(options.encoding)}};
    } else {
      if (!features.has_value()) {
        ASSIGN_OR_RETURN(Dataset targets, Concat(members, nonmembers));
        auto f = Preprocess(targets, synthetic, CategoricalMode::kOneHot);
        if (!f.ok()) return Annotate(f.status(), name);
        features = *std::move(f);
      }
      const FeatureMatrix& t = features->first;
      const FeatureMatrix& s = features->second;
      absl::StatusOr<std::vector<double>> scores;
      if (name == "dcr") {
        scores = DcrScores(t, s, options.workers);
      } else if (name == "mc") {
        auto radius = ChooseMcRadius(s, options.workers);
        if (!radius.ok()) return Annotate(radius.status(), name);
        params = {{"radius", *radius},
                  {"radius_rule", "median_nn_heuristic"}};
        scores = McScores(t, s, *radius, options.workers);
      } else {
        params = {{"bandwidth", "scott"}};
        scores = KdeScores(t, s, BandwidthSpec::Scott(), options.workers);
      }
      if (!scores.ok()) return Annotate(scores.status(), name);
      in.assign(scores->begin(), scores->begin() + static_cast<ptrdiff_t>(n_in));
      out.assign(scores->begin() + static_cast<ptrdiff_t>(n_in), scores->end());
    }
    auto result = EvaluateAttack(AttackScoring::FromGroups(in, out), levels);
    if (!result.ok()) return Annotate(result.status(), name);
    result->params = std::move(params);
    report.attacks[name] = *std::move(result);
  }
  if (options.fidelity) {
    auto w = WassersteinFidelity(members, synthetic);
    auto m = MmdFidelity(members, synthetic);
    if (w.ok() && m.ok()) report.fidelity = Fidelity{*w, *m};
  }
  return report;
}

absl::Status WriteReport(const AuditReport& report, const std::string& path) {
  RETURN_IF_ERROR(WriteFileAtomic(path, ToJson(report).dump(2) + "\n"));
  std::filesystem::path stem(path);
  stem.replace_extension();
  for (const auto& [name, result] : report.attacks) {
    RETURN_IF_ERROR(WriteFileAtomic(stem.string() + "_roc_" + name + ".csv",
                                    RocCsv(result.roc)));
  }
  return absl::OkStatus();
}

absl::StatusOr<SweepConfig> SweepConfigFromJson(const nlohmann::json& j) {
  SweepConfig cfg;
  RETURN_IF_ERROR(RejectUnknown(
      j, {"simulation", "grid", "attacks", "fidelity", "structure_mask", "encoding"},
      "sweep config"));
  try {
    if (j.contains("simulation")) {
      const nlohmann::json& sim = j.at("simulation");
      RETURN_IF_ERROR(RejectUnknown(sim, {"mean", "std", "rows"}, "simulation"));
      cfg.mean = sim.value("mean", cfg.mean);
      cfg.std = sim.value("std", cfg.std);
      cfg.rows = sim.value("rows", cfg.rows);
    }
    if (j.contains("grid")) {
      const nlohmann::json& grid = j.at("grid");
      RETURN_IF_ERROR(RejectUnknown(
          grid, {"digits", "size_multiplier", "order", "alpha", "t", "seeds"}, "grid"));
      if (grid.contains("digits")) cfg.digits = grid.at("digits").get<std::vector<int>>();
      if (grid.contains("size_multiplier")) {
        cfg.size_multiplier = grid.at("size_multiplier").get<std::vector<int>>();
      }
      if (grid.contains("order")) {
        cfg.order.clear();
        for (const nlohmann::json& v : grid.at("order")) {
          ASSIGN_OR_RETURN(int order, ParseOrder(v));
          cfg.order.push_back(order);
        }
      }
      if (grid.contains("alpha")) cfg.alpha = grid.at("alpha").get<std::vector<double>>();
      if (grid.contains("t")) cfg.t = grid.at("t").get<std::vector<double>>();
      if (grid.contains("seeds")) cfg.seeds = grid.at("seeds").get<std::vector<uint64_t>>();
    }
    if (j.contains("attacks")) cfg.attacks = j.at("attacks").get<std::vector<std::string>>();
    if (j.contains("fidelity")) cfg.fidelity = j.at("fidelity").get<bool>();
    if (j.contains("structure_mask")) cfg.structure_mask = j.at("structure_mask").get<bool>();
    if (j.contains("encoding")) {
      ASSIGN_OR_RETURN(cfg.encoding, EncodingConfigFromJson(j.at("encoding")));
    }
  } catch (const nlohmann::json::exception& e) {
    return MakeError(ErrorKind::kInvalidConfig, e.what());
  }
  auto bad = [](const std::string& what) {
    return MakeError(ErrorKind::kInvalidConfig, what);
  };
  if (cfg.rows < 2) return bad("simulation.rows must be at least 2");
  if (!(cfg.std >= 0)) return bad("simulation.std must be >= 0");
  if (cfg.digits.empty() || cfg.size_multiplier.empty() || cfg.order.empty() ||
      cfg.alpha.empty() || cfg.t.empty() || cfg.seeds.empty()) {
    return bad("every grid axis needs at least one value");
  }
  for (int d : cfg.digits) {
    if (d < 1) return bad("digits must be >= 1");
  }
  for (int m : cfg.size_multiplier) {
    if (m < 1) return bad("size_multiplier must be >= 1");
  }
  for (int o : cfg.order) {
    if (o < 1) return bad("order must be >= 1");
  }
  for (double a : cfg.alpha) {
    if (!(a >= 0)) return bad("alpha must be >= 0");
  }
  for (double t : cfg.t) {
    if (!(t >= 1)) return bad("t must be >= 1");
  }
  RETURN_IF_ERROR(ValidateAttacks(cfg.attacks));
  return cfg;
}

nlohmann::json ToJson(const SweepConfig& cfg) {
  nlohmann::json orders = nlohmann::json::array();
  for (int o : cfg.order) {
    orders.push_back(o == kFullOrder ? nlohmann::json("full") : nlohmann::json(o));
  }
  return nlohmann::json{
      {"simulation", {{"mean", cfg.mean}, {"std", cfg.std}, {"rows", cfg.rows}}},
      {"grid",
       {{"digits", cfg.digits},
        {"size_multiplier", cfg.size_multiplier},
        {"order", orders},
        {"alpha", cfg.alpha},
        {"t", cfg.t},
        {"seeds", cfg.seeds}}},
      {"attacks", cfg.attacks},
      {"fidelity", cfg.fidelity},
      {"structure_mask", cfg.structure_mask},
      {"encoding", ToJson(cfg.encoding)},
  };
}

std::vector<SweepCell> EnumerateCells(const SweepConfig& cfg) {
  std::vector<SweepCell> cells;
  for (int digits : cfg.digits) {
    for (int mult : cfg.size_multiplier) {
      for (int order : cfg.order) {
        for (double alpha : cfg.alpha) {
          for (double t : cfg.t) {
            for (uint64_t seed : cfg.seeds) {
              char id[32];
              std::snprintf(id, sizeof(id), "cell_%04zu", cells.size());
              cells.push_back({id, digits, mult, order, alpha, t, seed});
            }
          }
        }
      }
    }
  }
  return cells;
}

absl::StatusOr<AuditReport> RunSweepCell(const SweepConfig& cfg,
                                         const SweepCell& cell, int workers) {
  const SimSpec spec = SimSpec::ForDigits(cfg.mean, cfg.std, cell.digits, cfg.rows, cell.seed);
  ASSIGN_OR_RETURN(auto data, SimulateGaussian(spec));
  const auto& [train, holdout] = data;
  ASSIGN_OR_RETURN(CharNgramModel model,
                   CharNgramModel::Train(train, cell.order, cell.alpha, cfg.encoding));
  GenerateOptions gen;
  gen.seed = cell.seed;
  gen.workers = workers;
  gen.structure_mask = cfg.structure_mask;
  if (cell.t != 1) gen.tlp = TlpConfig{cell.t, 1e-6, CurveKind::kPowerRoot};
  const size_t n = static_cast<size_t>(cfg.rows) * static_cast<size_t>(cell.size_multiplier);
  ASSIGN_OR_RETURN(Dataset synthetic, Generate(model, n, gen));
  auto [members, nonmembers] = MembershipSplit(train, holdout);
  AuditOptions audit;
  audit.attacks = cfg.attacks;
  audit.encoding = cfg.encoding;
  audit.fidelity = cfg.fidelity;
  audit.workers = workers;
  ASSIGN_OR_RETURN(AuditReport report, RunAudit(members, nonmembers, synthetic, audit));
  report.provenance = {
      {"command", "sweep"},
      {"cell",
       {{"id", cell.id},
        {"digits", cell.digits},
        {"size_multiplier", cell.size_multiplier},
        {"order", OrderName(cell.order)},
        {"alpha", cell.alpha},
        {"t", cell.t},
        {"seed", cell.seed}}},
      {"simulation",
       {{"mean", spec.mean},
        {"std", spec.std},
        {"rows", spec.n_rows},
        {"columns", spec.n_columns},
        {"precision", spec.precision},
        {"seed", spec.seed}}},
      {"synthetic_rows", n},
      {"generation_seed", gen.seed},
      {"config", ToJson(cfg)},
  };
  return report;
}

absl::StatusOr<SweepOutcome> RunSweep(const SweepConfig& cfg,
                                      const std::string& out_dir,
                                      std::ostream& progress) {
  const std::filesystem::path root(out_dir);
  std::error_code ec;
  std::filesystem::create_directories(root / "reports", ec);
  if (ec) {
    return MakeError(ErrorKind::kIoFailure,
                     "cannot create '" + (root / "reports").string() + "': " + ec.message());
  }
  const std::vector<SweepCell> cells = EnumerateCells(cfg);
  const int total = WorkerCount();
  const int concurrent = static_cast<int>(std::min<size_t>(static_cast<size_t>(total), cells.size()));
  const int inner = std::max(1, total / std::max(1, concurrent));
  std::vector<absl::StatusOr<AuditReport>> results(
      cells.size(), absl::StatusOr<AuditReport>(absl::UnknownError("not run")));
  ParallelFor(
      cells.size(),
      [&](size_t i) {
        results[i] = RunSweepCell(cfg, cells[i], inner);
        if (results[i].ok()) {
          absl::Status written = WriteReport(
              *results[i], (root / "reports" / (cells[i].id + ".json")).string());
          if (!written.ok()) results[i] = written;
        }
      },
      concurrent);

  std::string csv = "cell,digits,size_multiplier,order,alpha,t,seed,status,error";
  for (const std::string& a : cfg.attacks) {
    csv += "," + a + "_auc";
    for (double level : ReportedFprLevels()) csv += "," + a + "_tpr_at_fpr_" + FprKey(level);
  }
  if (cfg.fidelity) csv += ",wasserstein_mean,mmd";
  csv += "\n";
  SweepOutcome outcome;
  for (size_t i = 0; i < cells.size(); ++i) {
    const SweepCell& c = cells[i];
    const absl::StatusOr<AuditReport>& r = results[i];
    csv += c.id + "," + std::to_string(c.digits) + "," + std::to_string(c.size_multiplier) +
           "," + OrderName(c.order) + "," + FormatShortest(c.alpha) + "," +
           FormatShortest(c.t) + "," + std::to_string(c.seed) + ",";
    if (r.ok()) {
      ++outcome.succeeded;
      csv += "ok,";
      std::string line = c.id + " ok";
      for (const std::string& a : cfg.attacks) {
        const AttackResult& res = r->attacks.at(a);
        csv += "," + FormatShortest(res.auc);
        for (double level : ReportedFprLevels()) {
          csv += "," + FormatShortest(res.tpr_at_fpr.at(FprKey(level)));
        }
        line += " " + a + "_auc=" + FormatShortest(res.auc);
      }
      if (cfg.fidelity) {
        csv += r->fidelity.has_value() ? "," + FormatShortest(r->fidelity->wasserstein_mean) +
                                             "," + FormatShortest(r->fidelity->mmd)
                                       : ",,";
      }
      progress << line << "\n";
    } else {
      ++outcome.failed;
      const std::string message(r.status().message());
      csv += "failed," + CsvField(message);
      csv += std::string(cfg.attacks.size() * (1 + ReportedFprLevels().size()), ',');
      if (cfg.fidelity) csv += ",,";
      progress << c.id << " failed: " << message << "\n";
    }
    csv += "\n";
  }
  RETURN_IF_ERROR(WriteFileAtomic((root / "summary.csv").string(), csv));
  return outcome;
}

}  // namespace levatt
