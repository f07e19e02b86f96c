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

#ifndef TANDEM_CLI_HPP_
#define TANDEM_CLI_HPP_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tandem/cost_model.hpp"
#include "tandem/error_rates.hpp"
#include "tandem/synthetic.hpp"
#include "tandem/tdcf.hpp"
#include "tandem/trial_data.hpp"

namespace tandem::cli {

// Bad flag combinations surfaced after argv parsing. Maps to exit code 1;
// data problems (ValidationError) map to exit code 2.
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

std::string_view to_string(TandemArchitecture arch);
TandemArchitecture parse_architecture(std::string_view token);

// "auto" resolves to Empirical when the ASV set contains spoof trials and
// WorstCase otherwise.
std::optional<SpoofMode> parse_spoof_mode(std::string_view token);
SpoofMode resolve_spoof_mode(std::optional<SpoofMode> requested, const ScoreSet& asv);

struct EerCommand {
  std::filesystem::path scores;
  ScoreKind kind = ScoreKind::CmScores;
  EerMethod method = EerMethod::RocchInterp;
  int precision = 6;
};

struct DetCommand {
  std::filesystem::path scores;
  ScoreKind kind = ScoreKind::CmScores;
  int precision = 6;
};

struct DcfCommand {
  std::filesystem::path scores;
  std::optional<std::filesystem::path> config;
  CostConfig overrides;
  std::optional<double> threshold;
  bool min_sweep = false;
  int precision = 6;
};

// `auto-calibrate` or a fixed numeric threshold.
struct AsvThresholdSpec {
  bool auto_calibrate = false;
  double value = 0.0;

  static AsvThresholdSpec parse(std::string_view token);
};

struct TdcfCommand {
  std::filesystem::path asv_scores;
  std::filesystem::path cm_scores;
  std::optional<std::filesystem::path> config;
  CostConfig overrides;
  std::vector<double> pi_spoof;  // one output row per value
  TandemArchitecture arch = TandemArchitecture::CmThenAsv;
  std::optional<SpoofMode> spoof_mode;  // nullopt = auto
  AsvThresholdSpec asv_threshold;
  std::optional<double> cm_threshold;
  bool min_sweep = false;
  bool breakdown = false;
  int precision = 6;
};

struct SimulateCommand {
  GaussianScoreModel model;
  ScoreKind kind = ScoreKind::AsvScores;
  std::filesystem::path out;
  std::vector<double> report_at;  // analytic oracle sidecar thresholds
  int precision = 6;
};

struct RankCommand {
  std::filesystem::path asv_scores;
  std::filesystem::path cm_scores_dir;
  std::optional<std::filesystem::path> config;
  CostConfig overrides;
  std::vector<double> pi_spoof;
  TandemArchitecture arch = TandemArchitecture::CmThenAsv;
  std::optional<SpoofMode> spoof_mode;
  AsvThresholdSpec asv_threshold;
  int precision = 6;
};

// One scored system: pooled EER and the minimum t-DCF per spoof prior.
// The reference rows carry no EER (no CM) or an EER of exactly zero
// (perfect CM).
struct RankRow {
  std::string system;
  std::optional<double> eer;
  std::vector<double> min_tdcf;  // aligned with RankReport::pi_spoof
};

struct RankReport {
  std::vector<double> pi_spoof;
  double asv_threshold = 0.0;
  TandemArchitecture arch = TandemArchitecture::CmThenAsv;
  RankRow no_cm;
  RankRow perfect_cm;
  std::vector<RankRow> systems;  // sorted by EER ascending, then by name
};

RankReport build_rank_report(const RankCommand& cmd);

// Each runner writes TSV to `out` and, on failure, one diagnostic line to
// `diag`; the return value is the process exit status (0 ok, 1 usage,
// 2 data).
int run_eer(const EerCommand& cmd, std::ostream& out, std::ostream& diag);
int run_det(const DetCommand& cmd, std::ostream& out, std::ostream& diag);
int run_dcf(const DcfCommand& cmd, std::ostream& out, std::ostream& diag);
int run_tdcf(const TdcfCommand& cmd, std::ostream& out, std::ostream& diag);
int run_simulate(const SimulateCommand& cmd, std::ostream& out, std::ostream& diag);
int run_rank(const RankCommand& cmd, std::ostream& out, std::ostream& diag);

}  // namespace tandem::cli

#endif  // TANDEM_CLI_HPP_
