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


#include <filesystem>
#include <functional>

#include "CLI11.hpp"
#include "levatt/dm.h"
#include "levatt/levatt.h"
#include "levatt/pipeline.h"
#include "levatt/status.h"
#include "levatt/tlp.h"
#include "levatt/toygen.h"

namespace levatt {
namespace {

// Flags shared by every command that reads CSV files.
struct InputFlags {
  std::string encoding_path;
  std::optional<int> precision;
  std::string layout;
  std::vector<std::string> kinds;  // name=kind

  void Register(CLI::App* cmd) {
    cmd->add_option("--encoding", encoding_path, "EncodingConfig JSON file");
    cmd->add_option("--precision", precision, "default numeric precision")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--template", layout, "named_pairs or values_only")
        ->check(CLI::IsMember({"named_pairs", "values_only"}));
    cmd->add_option("--kind", kinds, "column kind override, name=continuous|ordinal|categorical");
  }

  absl::StatusOr<EncodingConfig> Encoding() const {
    EncodingConfig cfg;
    if (!encoding_path.empty()) {
      ASSIGN_OR_RETURN(std::string text, ReadFile(encoding_path));
      nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
      if (j.is_discarded()) {
        return MakeError(ErrorKind::kInvalidConfig, encoding_path + " is not valid JSON");
      }
      ASSIGN_OR_RETURN(cfg, EncodingConfigFromJson(j));
    }
    if (precision.has_value()) cfg.precision_default = *precision;
    if (layout == "named_pairs") cfg.layout = EncodingTemplate::kNamedPairs;
    if (layout == "values_only") cfg.layout = EncodingTemplate::kValuesOnly;
    return cfg;
  }

  absl::StatusOr<KindOverrides> Overrides() const {
    KindOverrides out;
    for (const std::string& k : kinds) {
      const size_t eq = k.find('=');
      if (eq == std::string::npos || eq == 0) {
        return MakeError(ErrorKind::kInvalidConfig, "--kind expects name=kind, got '" + k + "'");
      }
      ASSIGN_OR_RETURN(out[k.substr(0, eq)], ParseColumnKind(k.substr(eq + 1)));
    }
    return out;
  }

  absl::StatusOr<Dataset> Load(const std::string& path) const {
    ASSIGN_OR_RETURN(KindOverrides overrides, Overrides());
    return LoadCsv(path, overrides);
  }
};

absl::StatusOr<nlohmann::json> LoadJson(const std::string& path) {
  ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    return MakeError(ErrorKind::kInvalidConfig, path + " is not valid JSON");
  }
  return j;
}

absl::Status WriteJson(const std::string& path, const nlohmann::json& j) {
  return WriteFileAtomic(path, j.dump(2) + "\n");
}

absl::StatusOr<int> ParseOrderFlag(const std::string& text) {
  if (text == "full") return kFullOrder;
  try {
    size_t used = 0;
    const int order = std::stoi(text, &used);
    if (used == text.size() && order >= 1) return order;
  } catch (const std::exception&) {
  }
  return MakeError(ErrorKind::kInvalidConfig,
                   "--order must be a positive integer or 'full', got '" + text + "'");
}

using Action = std::function<absl::StatusOr<int>()>;

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Membership-inference audits for synthetic tabular data", "levatt"};
  app.require_subcommand(1);
  Action action;

  // simulate
  SimSpec sim;
  int sim_digits = 0;
  std::string sim_out = ".";
  CLI::App* simulate = app.add_subcommand("simulate", "simulate Gaussian train and holdout CSVs");
  simulate->add_option("--mean", sim.mean, "column mean")->capture_default_str();
  simulate->add_option("--std", sim.std, "column standard deviation")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  simulate->add_option("--digits", sim_digits, "digits per record")
      ->required()
      ->check(CLI::PositiveNumber);
  simulate->add_option("--rows", sim.n_rows, "rows per split")
      ->required()
      ->check(CLI::NonNegativeNumber);
  simulate->add_option("--seed", sim.seed, "seed")->capture_default_str();
  simulate->add_option("--out-dir", sim_out, "output directory")->capture_default_str();
  simulate->callback([&] {
    action = [&]() -> absl::StatusOr<int> {
      const SimSpec spec = SimSpec::ForDigits(sim.mean, sim.std, sim_digits, sim.n_rows, sim.seed);
      ASSIGN_OR_RETURN(auto data, SimulateGaussian(spec));
      std::error_code ec;
      std::filesystem::create_directories(sim_out, ec);
      const std::filesystem::path dir(sim_out);
      RETURN_IF_ERROR(WriteCsv(data.first, (dir / "train.csv").string()));
      RETURN_IF_ERROR(WriteCsv(data.second, (dir / "holdout.csv").string()));
      EncodingConfig enc;
      enc.precision_default = spec.precision;
      RETURN_IF_ERROR(WriteJson((dir / "encoding.json").string(), ToJson(enc)));
      out << "wrote " << spec.n_rows << " x " << spec.n_columns << " columns (precision "
          << spec.precision << ") to " << (dir / "train.csv").string() << " and "
          << (dir / "holdout.csv").string() << "\n";
      return kExitOk;
    };
  });

  // encode
  InputFlags encode_flags;
  std::string encode_data;
  std::string encode_out;
  CLI::App* encode = app.add_subcommand("encode", "write the string encoding of every row");
  encode->add_option("--data", encode_data, "input CSV")->required();
  encode->add_option("--out", encode_out, "output text file, one encoding per line")->required();
  encode_flags.Register(encode);
  encode->callback([&] {
    action = [&]() -> absl::StatusOr<int> {
      ASSIGN_OR_RETURN(EncodingConfig enc, encode_flags.Encoding());
      ASSIGN_OR_RETURN(Dataset ds, encode_flags.Load(encode_data));
      ASSIGN_OR_RETURN(std::vector<EncodedRecord> encoded, EncodeDataset(ds, enc));
      std::string text;
      for (const EncodedRecord& r : encoded) text += r.text + "\n";
      RETURN_IF_ERROR(WriteFileAtomic(encode_out, text));
      out << "encoded " << encoded.size() << " rows to " << encode_out << "\n";
      return kExitOk;
    };
  });

  // train-toygen
  InputFlags train_flags;
  std::string train_data;
  std::string train_order = "full";
  double train_alpha = 0;
  std::string train_out;
  CLI::App* train = app.add_subcommand("train-toygen", "fit the character n-gram generator");
  train->add_option("--train", train_data, "training CSV")->required();
  train->add_option("--order", train_order, "n-gram order or 'full'")->capture_default_str();
  train->add_option("--alpha", train_alpha, "additive smoothing")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  train->add_option("--out", train_out, "model JSON")->required();
  train_flags.Register(train);
  train->callback([&] {
    action = [&]() -> absl::StatusOr<int> {
      ASSIGN_OR_RETURN(int order, ParseOrderFlag(train_order));
      ASSIGN_OR_RETURN(EncodingConfig enc, train_flags.Encoding());
      ASSIGN_OR_RETURN(Dataset ds, train_flags.Load(train_data));
      ASSIGN_OR_RETURN(CharNgramModel model, CharNgramModel::Train(ds, order, train_alpha, enc));
      RETURN_IF_ERROR(WriteJson(train_out, model.ToJson()));
      out << "trained on " << ds.num_rows() << " rows (" << model.counts().size()
          << " distinct encodings, vocabulary " << model.vocab_size() << ") -> " << train_out
          << "\n";
      return kExitOk;
    };
  });

  // generate
  std::string gen_model;
  size_t gen_rows = 0;
  GenerateOptions gen;
  double gen_t = 1;
  bool gen_greedy = false;
  bool gen_no_mask = false;
  std::string gen_out;
  CLI::App* generate = app.add_subcommand("generate", "sample synthetic rows from a model");
  generate->add_option("--model", gen_model, "model JSON")->required();
  generate->add_option("--rows", gen_rows, "rows to sample")->required();
  generate->add_option("--seed", gen.seed, "seed")->capture_default_str();
  generate->add_option("--t", gen_t, "tendency; values above 1 enable the logit processor")
      ->check(CLI::Range(1.0, 1e9))
      ->capture_default_str();
  generate->add_flag("--greedy", gen_greedy, "argmax decoding");
  generate->add_flag("--no-mask", gen_no_mask, "sample without the structure mask");
  generate->add_option("--max-retries", gen.max_retries, "retries per malformed row")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  generate->add_option("--out", gen_out, "output CSV")->required();
  generate->callback([&] {
    action = [&]() -> absl::StatusOr<int> {
      ASSIGN_OR_RETURN(nlohmann::json j, LoadJson(gen_model));
      ASSIGN_OR_RETURN(CharNgramModel model, CharNgramModel::FromJson(j));
      if (gen_t != 1) gen.tlp = TlpConfig{gen_t, 1e-6, CurveKind::kPowerRoot};
      gen.decoding = gen_greedy ? Decoding::kGreedy : Decoding::kSample;
      gen.structure_mask = !gen_no_mask;
      ASSIGN_OR_RETURN(Dataset synthetic, Generate(model, gen_rows, gen));
      RETURN_IF_ERROR(WriteCsv(synthetic, gen_out));
      out << "generated " << synthetic.num_rows() << " rows -> " << gen_out << "\n";
      return kExitOk;
    };
  });

  // attack
  InputFlags attack_flags;
  std::string attack_real;
  std::string attack_synth;
  std::string attack_holdout;
  std::vector<std::string> attack_names = KnownAttacks();
  std::string attack_out;
  std::string utility_target;
  bool no_fidelity = false;
  CLI::App* attack = app.add_subcommand("attack", "audit a synthetic CSV");
  attack->add_option("--real", attack_real, "training CSV (members)")->required();
  attack->add_option("--synthetic", attack_synth, "synthetic CSV")->required();
  attack->add_option("--holdout", attack_holdout, "holdout CSV (non-members)")->required();
  attack->add_option("--attacks", attack_names, "comma-separated subset of levatt,dcr,mc,kde")
      ->delimiter(',')
      ->capture_default_str();
  attack->add_option("--out", attack_out, "report JSON")->required();
  attack->add_option("--utility-target", utility_target, "continuous column for the RMSE check");
  attack->add_flag("--no-fidelity", no_fidelity, "skip Wasserstein and MMD");
  attack_flags.Register(attack);
  attack->callback([&] {
    action = [&]() -> absl::StatusOr<int> {
      RETURN_IF_ERROR(ValidateAttacks(attack_names));
      ASSIGN_OR_RETURN(EncodingConfig enc, attack_flags.Encoding());
      ASSIGN_OR_RETURN(Dataset real, attack_flags.Load(attack_real));
      ASSIGN_OR_RETURN(Dataset synthetic, attack_flags.Load(attack_synth));
      ASSIGN_OR_RETURN(Dataset holdout, attack_flags.Load(attack_holdout));
      auto [members, nonmembers] = MembershipSplit(real, holdout);
      AuditOptions audit;
      audit.attacks = attack_names;
      audit.encoding = enc;
      audit.fidelity = !no_fidelity;
      ASSIGN_OR_RETURN(AuditReport report, RunAudit(members, nonmembers, synthetic, audit));
      if (!utility_target.empty()) {
        ASSIGN_OR_RETURN(double r, UtilityRmse(real, holdout, utility_target));
        ASSIGN_OR_RETURN(double s, UtilityRmse(synthetic, holdout, utility_target));
        report.utility = Utility{r, s};
      }
      report.provenance = {
          {"command", "attack"},
          {"real", attack_real},
          {"synthetic", attack_synth},
          {"holdout", attack_holdout},
          {"attacks", attack_names},
          {"encoding", ToJson(enc)},
          {"members", members.num_rows()},
          {"nonmembers", nonmembers.num_rows()},
          {"fpr_levels", ReportedFprLevels()},
          {"fidelity", !no_fidelity},
          {"utility_target", utility_target},
      };
      RETURN_IF_ERROR(WriteReport(report, attack_out));
      for (const auto& [name, r] : report.attacks) {
        out << name << ": auc " << FormatShortest(r.auc) << ", tpr@fpr=0 "
            << FormatShortest(r.tpr_at_fpr.at(FprKey(0))) << ", tpr@fpr=0.1 "
            << FormatShortest(r.tpr_at_fpr.at(FprKey(0.1))) << "\n";
      }
      out << "report -> " << attack_out << "\n";
      return kExitOk;
    };
  });

  // defend
  CLI::App* defend = app.add_subcommand("defend", "apply a defense");
  defend->require_subcommand(1);

  InputFlags dm_flags;
  std::string dm_synth;
  std::string dm_config_path;
  DmConfig dm;
  std::string dm_substitution = "increment_mod10";
  std::string dm_out;
  CLI::App* dm_cmd = defend->add_subcommand("dm", "digit modifier");
  dm_cmd->add_option("--synthetic", dm_synth, "synthetic CSV")->required();
  dm_cmd->add_option("--config", dm_config_path, "DM config JSON; flags override it");
  CLI::Option* pmin_opt = dm_cmd->add_option("--pmin", dm.p_min, "flip probability floor");
  CLI::Option* pmax_opt = dm_cmd->add_option("--pmax", dm.p_max, "flip probability ceiling");
  CLI::Option* sub_opt = dm_cmd->add_option("--substitution", dm_substitution,
                                            "increment_mod10 or uniform_excluding");
  CLI::Option* seed_opt = dm_cmd->add_option("--seed", dm.seed, "seed");
  dm_cmd->add_option("--out", dm_out, "output CSV")->required();
  dm_flags.Register(dm_cmd);
  dm_cmd->callback([&] {
    action = [&]() -> absl::StatusOr<int> {
      DmConfig cfg;
      if (!dm_config_path.empty()) {
        ASSIGN_OR_RETURN(nlohmann::json j, LoadJson(dm_config_path));
        ASSIGN_OR_RETURN(cfg, DmConfigFromJson(j));
      }
      if (pmin_opt->count() > 0) cfg.p_min = dm.p_min;
      if (pmax_opt->count() > 0) cfg.p_max = dm.p_max;
      if (seed_opt->count() > 0) cfg.seed = dm.seed;
      if (sub_opt->count() > 0) {
        ASSIGN_OR_RETURN(cfg.substitution, ParseSubstitution(dm_substitution));
      }
      RETURN_IF_ERROR(cfg.Validate());
      ASSIGN_OR_RETURN(EncodingConfig enc, dm_flags.Encoding());
      ASSIGN_OR_RETURN(Dataset synthetic, dm_flags.Load(dm_synth));
      ASSIGN_OR_RETURN(Dataset defended, DigitModifier(synthetic, cfg, enc));
      RETURN_IF_ERROR(WriteCsv(defended, dm_out));
      out << "digit modifier " << ToJson(cfg).dump() << " -> " << dm_out << "\n";
      return kExitOk;
    };
  });

  InputFlags tlp_flags;
  std::string tlp_model;
  std::string tlp_real;
  std::string tlp_holdout;
  std::string tlp_criterion = "auc:0.55";
  std::vector<double> tlp_grid = DefaultTendencyGrid();
  std::optional<size_t> tlp_rows;
  uint64_t tlp_seed = 0;
  std::string tlp_out;
  std::string tlp_report;
  CLI::App* tlp_cmd = defend->add_subcommand("tlp", "tune the tendency-based logit processor");
  tlp_cmd->add_option("--model", tlp_model, "model JSON")->required();
  tlp_cmd->add_option("--real", tlp_real, "training CSV (members)")->required();
  tlp_cmd->add_option("--holdout", tlp_holdout, "holdout CSV (non-members)")->required();
  tlp_cmd->add_option("--criterion", tlp_criterion, "auc:X or tpr:X@FPR")->capture_default_str();
  tlp_cmd->add_option("--t-grid", tlp_grid, "comma-separated ascending tendencies")
      ->delimiter(',');
  tlp_cmd->add_option("--rows", tlp_rows, "rows per candidate (default: member count)");
  tlp_cmd->add_option("--seed", tlp_seed, "seed")->capture_default_str();
  tlp_cmd->add_option("--out", tlp_out, "defended synthetic CSV")->required();
  tlp_cmd->add_option("--report", tlp_report, "report JSON")->required();
  tlp_flags.Register(tlp_cmd);
  tlp_cmd->callback([&] {
    action = [&]() -> absl::StatusOr<int> {
      ASSIGN_OR_RETURN(TuneCriterion criterion, ParseTuneCriterion(tlp_criterion));
      ASSIGN_OR_RETURN(nlohmann::json j, LoadJson(tlp_model));
      ASSIGN_OR_RETURN(CharNgramModel model, CharNgramModel::FromJson(j));
      ASSIGN_OR_RETURN(Dataset real, tlp_flags.Load(tlp_real));
      ASSIGN_OR_RETURN(Dataset holdout, tlp_flags.Load(tlp_holdout));
      auto [members, nonmembers] = MembershipSplit(real, holdout);
      const size_t rows = tlp_rows.value_or(members.num_rows());
      TendencyGenerator make = [&](double t) {
        GenerateOptions g;
        g.seed = tlp_seed;
        if (t != 1) g.tlp = TlpConfig{t, 1e-6, CurveKind::kPowerRoot};
        return Generate(model, rows, g);
      };
      ASSIGN_OR_RETURN(TuneResult result, TuneTendency(make, members, nonmembers,
                                                       model.encoding(), criterion, tlp_grid));
      result.report.provenance["command"] = "defend tlp";
      result.report.provenance["model"] = tlp_model;
      result.report.provenance["real"] = tlp_real;
      result.report.provenance["holdout"] = tlp_holdout;
      result.report.provenance["t_grid"] = tlp_grid;
      result.report.provenance["rows"] = rows;
      result.report.provenance["seed"] = tlp_seed;
      result.report.provenance["members"] = members.num_rows();
      result.report.provenance["nonmembers"] = nonmembers.num_rows();
      RETURN_IF_ERROR(WriteCsv(result.synthetic, tlp_out));
      RETURN_IF_ERROR(WriteReport(result.report, tlp_report));
      for (const TuneStep& s : result.trace) {
        out << "t=" << FormatShortest(s.t) << " auc " << FormatShortest(s.auc) << " tpr "
            << FormatShortest(s.tpr) << "\n";
      }
      if (!result.reached) {
        err << "criterion " << criterion.ToString() << " not reached; wrote the output at t="
            << FormatShortest(result.t) << "\n";
        return kExitNotReached;
      }
      out << "criterion " << criterion.ToString() << " reached at t=" << FormatShortest(result.t)
          << " -> " << tlp_out << "\n";
      return kExitOk;
    };
  });

  // sweep
  std::string sweep_config;
  std::string sweep_out;
  CLI::App* sweep = app.add_subcommand("sweep", "run a grid of simulate/train/generate/attack cells");
  sweep->add_option("--config", sweep_config, "sweep config JSON")->required();
  sweep->add_option("--out", sweep_out, "output directory")->required();
  sweep->callback([&] {
    action = [&]() -> absl::StatusOr<int> {
      ASSIGN_OR_RETURN(nlohmann::json j, LoadJson(sweep_config));
      ASSIGN_OR_RETURN(SweepConfig cfg, SweepConfigFromJson(j));
      ASSIGN_OR_RETURN(SweepOutcome outcome, RunSweep(cfg, sweep_out, out));
      out << outcome.succeeded << " cells ok, " << outcome.failed << " failed -> " << sweep_out
          << "/summary.csv\n";
      return outcome.succeeded > 0 ? kExitOk : kExitAllCellsFailed;
    };
  });

  // report
  std::vector<std::string> report_inputs;
  std::string report_attack = "levatt";
  size_t report_k = 20;
  std::string report_out;
  CLI::App* report = app.add_subcommand("report", "summarize the top-k runs of several reports");
  report->add_option("inputs", report_inputs, "report JSON files")->required();
  report->add_option("--attack", report_attack, "attack to rank by")->capture_default_str();
  report->add_option("--top-k", report_k, "runs to keep")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  report->add_option("--out", report_out, "summary JSON");
  report->callback([&] {
    action = [&]() -> absl::StatusOr<int> {
      std::vector<RunSummary> runs;
      for (const std::string& path : report_inputs) {
        ASSIGN_OR_RETURN(nlohmann::json j, LoadJson(path));
        auto parsed = AuditReportFromJson(j);
        if (!parsed.ok()) return Annotate(parsed.status(), path);
        auto it = parsed->attacks.find(report_attack);
        if (it == parsed->attacks.end()) {
          return MakeError(ErrorKind::kInvalidConfig,
                           path + " has no '" + report_attack + "' attack");
        }
        runs.push_back({std::filesystem::path(path).stem().string(), it->second.auc});
      }
      const TopKSummary top = SummarizeTopK(std::move(runs), report_k);
      const nlohmann::json summary{{"attack", report_attack},
                                   {"k", top.k},
                                   {"mean_auc", top.mean_auc},
                                   {"std_auc", top.std_auc},
                                   {"runs", top.labels}};
      if (!report_out.empty()) RETURN_IF_ERROR(WriteJson(report_out, summary));
      out << report_attack << " top-" << top.k << " auc " << FormatShortest(top.mean_auc)
          << " +/- " << FormatShortest(top.std_auc) << "\n";
      return kExitOk;
    };
  });

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }
  if (!action) return kExitConfig;
  absl::StatusOr<int> code = action();
  if (!code.ok()) {
    err << "error: " << std::string(code.status().message()) << "\n";
    return ExitCodeFor(code.status());
  }
  return *code;
}

}  // namespace levatt
