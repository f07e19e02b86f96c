// Copyright 2026 The tandem-metrics Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "tandem/cli.hpp"

namespace {

using namespace tandem;
using namespace tandem::cli;

struct GlobalFlags {
  std::string config;
  int precision = 6;
};

std::optional<std::filesystem::path> config_path(const GlobalFlags& g) {
  if (g.config.empty()) return std::nullopt;
  return std::filesystem::path(g.config);
}

ScoreKind parse_kind(const std::string& token) {
  if (token == "asv") return ScoreKind::AsvScores;
  if (token == "cm") return ScoreKind::CmScores;
  throw UsageError("unknown kind '" + token + "' (expected asv or cm)");
}

void add_cost_overrides(CLI::App* sub, CostConfig& overrides) {
  auto opt = [&](const char* name, std::optional<double>& slot, const char* desc) {
    sub->add_option_function<double>(
        name, [&slot](double v) { slot = v; }, desc);
  };
  opt("--c-miss-asv", overrides.c_miss_asv, "ASV miss cost (default 1)");
  opt("--c-fa-asv", overrides.c_fa_asv, "ASV false-alarm cost (default 10)");
  opt("--c-miss-cm", overrides.c_miss_cm, "CM miss cost (default 1)");
  opt("--c-fa-cm", overrides.c_fa_cm, "CM false-alarm cost (default 10)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Detection metrics for spoofing countermeasures evaluated in tandem "
               "with speaker verification: EER, detection cost, and the tandem "
               "detection cost function over per-trial score files."};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags global;
  app.add_option("--config", global.config, "Cost model config file (key = value)");
  app.add_option("--precision", global.precision, "Decimal places in output (default 6)")
      ->check(CLI::Range(0, 17));

  // eer
  std::string eer_scores, eer_kind = "cm", eer_method = "rocch";
  auto* eer = app.add_subcommand("eer", "Equal error rate of one score file");
  eer->add_option("--scores", eer_scores, "Score file")->required();
  eer->add_option("--kind", eer_kind, "asv|cm (default cm)");
  eer->add_option("--method", eer_method, "rocch|linear (default rocch)");

  // det
  std::string det_scores, det_kind = "cm";
  auto* det = app.add_subcommand("det", "Error-rate profile as TSV for DET plotting");
  det->add_option("--scores", det_scores, "Score file")->required();
  det->add_option("--kind", det_kind, "asv|cm (default cm)");

  // dcf
  std::string dcf_scores;
  std::optional<double> dcf_threshold;
  bool dcf_min = false;
  CostConfig dcf_overrides;
  auto* dcf = app.add_subcommand("dcf", "Two-class detection cost of an ASV score file");
  dcf->add_option("--scores", dcf_scores, "ASV score file")->required();
  dcf->add_option_function<double>(
      "--threshold", [&dcf_threshold](double v) { dcf_threshold = v; },
      "Evaluate at this threshold");
  dcf->add_flag("--min", dcf_min, "Minimize over observed thresholds");
  dcf->add_option_function<double>(
      "--pi-tar", [&dcf_overrides](double v) { dcf_overrides.pi_tar = v; },
      "Target prior override");
  add_cost_overrides(dcf, dcf_overrides);

  // tdcf
  TdcfCommand tdcf_cmd;
  std::string tdcf_asv, tdcf_cm, tdcf_arch = "cm-asv", tdcf_mode = "auto",
              tdcf_threshold = "0";
  std::optional<double> tdcf_s;
  auto* tdcf = app.add_subcommand("tdcf", "Tandem detection cost of a CM+ASV pair");
  tdcf->add_option("--asv-scores", tdcf_asv, "ASV score file")->required();
  tdcf->add_option("--cm-scores", tdcf_cm, "CM score file")->required();
  tdcf->add_option("--pi-spoof", tdcf_cmd.pi_spoof,
                   "Spoof priors, comma separated; one output row each")
      ->delimiter(',');
  tdcf->add_option("--arch", tdcf_arch, "cm-asv|asv-cm|parallel (default cm-asv)");
  tdcf->add_option("--spoof-mode", tdcf_mode, "worst|empirical|auto (default auto)");
  tdcf->add_option("--asv-threshold", tdcf_threshold,
                   "ASV threshold value or 'auto-calibrate' (default 0)");
  tdcf->add_option_function<double>(
      "--cm-threshold", [&tdcf_s](double v) { tdcf_s = v; }, "CM threshold");
  tdcf->add_flag("--min", tdcf_cmd.min_sweep, "Minimize over the CM threshold");
  tdcf->add_flag("--breakdown", tdcf_cmd.breakdown, "Emit the four cost terms");
  add_cost_overrides(tdcf, tdcf_cmd.overrides);

  // rank
  RankCommand rank_cmd;
  std::string rank_asv, rank_dir, rank_arch = "cm-asv", rank_mode = "auto",
              rank_threshold = "0";
  auto* rank = app.add_subcommand(
      "rank", "EER and minimum t-DCF table for a directory of CM systems");
  rank->add_option("--asv-scores", rank_asv, "ASV score file")->required();
  rank->add_option("--cm-scores-dir", rank_dir, "Directory with one CM score file per system")
      ->required();
  rank->add_option("--pi-spoof", rank_cmd.pi_spoof,
                   "Spoof priors, comma separated; one t-DCF column each")
      ->delimiter(',');
  rank->add_option("--arch", rank_arch, "cm-asv|asv-cm|parallel (default cm-asv)");
  rank->add_option("--spoof-mode", rank_mode, "worst|empirical|auto (default auto)");
  rank->add_option("--asv-threshold", rank_threshold,
                   "ASV threshold value or 'auto-calibrate' (default 0)");
  add_cost_overrides(rank, rank_cmd.overrides);

  // simulate
  SimulateCommand sim_cmd;
  std::string sim_kind = "asv", sim_out;
  auto* sim = app.add_subcommand(
      "simulate", "Sample a Gaussian score model into a score file");
  sim->add_option("--mu-tar", sim_cmd.model.mu_tar, "Target mean (default 1)");
  sim->add_option("--mu-non", sim_cmd.model.mu_non, "Nontarget mean (default -1)");
  sim->add_option("--mu-spoof", sim_cmd.model.mu_spoof, "Spoof mean (default 1)");
  sim->add_option("--sigma-tar", sim_cmd.model.sigma_tar, "Target sd (default 1)");
  sim->add_option("--sigma-non", sim_cmd.model.sigma_non, "Nontarget sd (default 1)");
  sim->add_option("--sigma-spoof", sim_cmd.model.sigma_spoof, "Spoof sd (default 1)");
  sim->add_option("--n-tar", sim_cmd.model.n_tar, "Target count")->required();
  sim->add_option("--n-non", sim_cmd.model.n_non, "Nontarget count")->required();
  sim->add_option("--n-spoof", sim_cmd.model.n_spoof, "Spoof count")->required();
  sim->add_option("--seed", sim_cmd.model.seed, "Generator seed (default 0)");
  sim->add_option("--out", sim_out, "Output score file")->required();
  sim->add_option("--kind", sim_kind, "asv|cm (default asv)");
  sim->add_option("--report-at", sim_cmd.report_at,
                  "Thresholds for the analytic oracle sidecar, comma separated")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "tandem: " << e.what() << "\n";
    return 1;
  }

  try {
    if (*eer) {
      EerCommand cmd{eer_scores, parse_kind(eer_kind),
                     eer_method == "rocch"  ? EerMethod::RocchInterp
                     : eer_method == "linear" ? EerMethod::LinearMidpoint
                                              : throw UsageError(
                                                    "unknown method '" + eer_method +
                                                    "' (expected rocch or linear)"),
                     global.precision};
      return run_eer(cmd, std::cout, std::cerr);
    }
    if (*det) {
      DetCommand cmd{det_scores, parse_kind(det_kind), global.precision};
      return run_det(cmd, std::cout, std::cerr);
    }
    if (*dcf) {
      DcfCommand cmd{dcf_scores, config_path(global), dcf_overrides, dcf_threshold,
                     dcf_min, global.precision};
      return run_dcf(cmd, std::cout, std::cerr);
    }
    if (*tdcf) {
      tdcf_cmd.asv_scores = tdcf_asv;
      tdcf_cmd.cm_scores = tdcf_cm;
      tdcf_cmd.config = config_path(global);
      tdcf_cmd.arch = parse_architecture(tdcf_arch);
      tdcf_cmd.spoof_mode = parse_spoof_mode(tdcf_mode);
      tdcf_cmd.asv_threshold = AsvThresholdSpec::parse(tdcf_threshold);
      tdcf_cmd.cm_threshold = tdcf_s;
      tdcf_cmd.precision = global.precision;
      return run_tdcf(tdcf_cmd, std::cout, std::cerr);
    }
    if (*rank) {
      rank_cmd.asv_scores = rank_asv;
      rank_cmd.cm_scores_dir = rank_dir;
      rank_cmd.config = config_path(global);
      rank_cmd.arch = parse_architecture(rank_arch);
      rank_cmd.spoof_mode = parse_spoof_mode(rank_mode);
      rank_cmd.asv_threshold = AsvThresholdSpec::parse(rank_threshold);
      rank_cmd.precision = global.precision;
      return run_rank(rank_cmd, std::cout, std::cerr);
    }
    if (*sim) {
      sim_cmd.kind = parse_kind(sim_kind);
      sim_cmd.out = sim_out;
      sim_cmd.precision = global.precision;
      return run_simulate(sim_cmd, std::cout, std::cerr);
    }
  } catch (const UsageError& e) {
    std::cerr << "tandem: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
