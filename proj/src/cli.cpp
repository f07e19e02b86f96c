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

#include "tandem/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <ostream>
#include <sstream>

namespace tandem::cli {

namespace {

std::string format_number(double v, int precision) {
  if (std::isinf(v)) return v > 0.0 ? "+inf" : "-inf";
  precision = std::clamp(precision, 0, 17);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
  return buf;
}

CostConfig load_base_config(const std::optional<std::filesystem::path>& path) {
  return path ? parse_cost_config_file(*path) : CostConfig{};
}

// Per-prior model: an explicit pi_spoof value replaces any priors from the
// config file with the banking recipe.
CostModel model_for_pi(const CostConfig& base, const CostConfig& overrides,
                       double pi_spoof) {
  CostConfig stripped = base;
  stripped.pi_tar.reset();
  stripped.pi_non.reset();
  stripped.pi_spoof.reset();
  CostConfig ov = overrides;
  ov.pi_tar.reset();
  ov.pi_non.reset();
  ov.pi_spoof = pi_spoof;
  return resolve_cost_model(stripped, ov);
}

// Models aligned with the report priors: one per --pi-spoof value, or the
// single config-resolved model when the list is empty.
std::vector<CostModel> models_for_priors(const CostConfig& base,
                                         const CostConfig& overrides,
                                         std::vector<double>& pi_spoof) {
  std::vector<CostModel> models;
  if (pi_spoof.empty()) {
    models.push_back(resolve_cost_model(base, overrides));
    pi_spoof.push_back(models.front().priors.pi_spoof);
  } else {
    models.reserve(pi_spoof.size());
    for (double pi : pi_spoof) models.push_back(model_for_pi(base, overrides, pi));
  }
  return models;
}

int guarded(std::string_view command, std::ostream& diag,
            const std::function<void()>& body) {
  try {
    body();
    return 0;
  } catch (const UsageError& e) {
    diag << "tandem " << command << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    diag << "tandem " << command << ": " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

std::string_view to_string(TandemArchitecture arch) {
  switch (arch) {
    case TandemArchitecture::CmThenAsv: return "cm-asv";
    case TandemArchitecture::AsvThenCm: return "asv-cm";
    case TandemArchitecture::Parallel: return "parallel";
  }
  return "?";
}

TandemArchitecture parse_architecture(std::string_view token) {
  if (token == "cm-asv") return TandemArchitecture::CmThenAsv;
  if (token == "asv-cm") return TandemArchitecture::AsvThenCm;
  if (token == "parallel") return TandemArchitecture::Parallel;
  throw UsageError("unknown architecture '" + std::string(token) +
                   "' (expected cm-asv, asv-cm or parallel)");
}

std::optional<SpoofMode> parse_spoof_mode(std::string_view token) {
  if (token == "worst") return SpoofMode::WorstCase;
  if (token == "empirical") return SpoofMode::Empirical;
  if (token == "auto") return std::nullopt;
  throw UsageError("unknown spoof mode '" + std::string(token) +
                   "' (expected worst, empirical or auto)");
}

SpoofMode resolve_spoof_mode(std::optional<SpoofMode> requested, const ScoreSet& asv) {
  if (requested) return *requested;
  return asv.count(TrialLabel::Spoof) > 0 ? SpoofMode::Empirical : SpoofMode::WorstCase;
}

AsvThresholdSpec AsvThresholdSpec::parse(std::string_view token) {
  AsvThresholdSpec spec;
  if (token == "auto-calibrate") {
    spec.auto_calibrate = true;
    return spec;
  }
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(),
                                         spec.value);
  if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(spec.value))
    throw UsageError("--asv-threshold expects a finite number or 'auto-calibrate', got '" +
                     std::string(token) + "'");
  return spec;
}

int run_eer(const EerCommand& cmd, std::ostream& out, std::ostream& diag) {
  return guarded("eer", diag, [&] {
    const ScoreSet set = parse_score_file(cmd.scores, cmd.kind);
    const ProfileRole role = cmd.kind == ScoreKind::AsvScores
                                 ? ProfileRole::AsvTargetNontarget
                                 : ProfileRole::CmHumanSpoof;
    const EerEstimate est = estimate_eer(build_profile(set, role), cmd.method);
    out << "# metric\tvalue\n";
    out << "eer\t" << format_number(est.value, cmd.precision) << "\n";
  });
}

int run_det(const DetCommand& cmd, std::ostream& out, std::ostream& diag) {
  return guarded("det", diag, [&] {
    const ScoreSet set = parse_score_file(cmd.scores, cmd.kind);
    const ProfileRole role = cmd.kind == ScoreKind::AsvScores
                                 ? ProfileRole::AsvTargetNontarget
                                 : ProfileRole::CmHumanSpoof;
    const ErrorProfile profile = build_profile(set, role);
    out << "# threshold\tp_miss\tp_fa\n";
    for (Eigen::Index i = 0; i < profile.size(); ++i) {
      out << format_number(profile.thresholds[i], cmd.precision) << '\t'
          << format_number(profile.p_miss[i], cmd.precision) << '\t'
          << format_number(profile.p_fa[i], cmd.precision) << '\n';
    }
  });
}

namespace {

// The two-class prior for the plain detection cost: an explicit pi_tar is
// used as is; a full triple renormalizes over targets and nontargets; the
// banking recipe fixes the split at 99:1.
double dcf_two_class_prior(const CostConfig& base, const CostConfig& overrides) {
  const auto pi_tar = overrides.pi_tar.has_value() ? overrides.pi_tar : base.pi_tar;
  const auto pi_non = overrides.pi_non.has_value() ? overrides.pi_non : base.pi_non;
  const auto pi_spoof = overrides.pi_spoof.has_value() ? overrides.pi_spoof : base.pi_spoof;
  if (pi_tar.has_value() && !pi_non.has_value()) return *pi_tar;
  if (pi_tar.has_value() && pi_non.has_value()) {
    if (*pi_tar + *pi_non <= 0.0)
      throw ValidationError("pi_tar + pi_non must be positive");
    return *pi_tar / (*pi_tar + *pi_non);
  }
  if (pi_spoof.has_value()) return 0.99;
  throw ValidationError("no priors configured: set pi_tar (or pi_spoof) for dcf");
}

}  // namespace

int run_dcf(const DcfCommand& cmd, std::ostream& out, std::ostream& diag) {
  return guarded("dcf", diag, [&] {
    if (cmd.min_sweep == cmd.threshold.has_value())
      throw UsageError("provide exactly one of --threshold or --min");
    const ScoreSet set = parse_score_file(cmd.scores, ScoreKind::AsvScores);
    const CostConfig base = load_base_config(cmd.config);
    const double c_miss = cmd.overrides.c_miss_asv.value_or(base.c_miss_asv.value_or(1.0));
    const double c_fa = cmd.overrides.c_fa_asv.value_or(base.c_fa_asv.value_or(10.0));
    const double pi_tar = dcf_two_class_prior(base, cmd.overrides);

    out << "# threshold\tdcf\tp_miss\tp_fa\n";
    auto emit = [&](double t, const BinaryRates& r) {
      out << format_number(t, cmd.precision) << '\t'
          << format_number(nist_dcf(c_miss, c_fa, pi_tar, r.p_miss, r.p_fa), cmd.precision)
          << '\t' << format_number(r.p_miss, cmd.precision) << '\t'
          << format_number(r.p_fa, cmd.precision) << '\n';
    };

    if (cmd.threshold.has_value()) {
      emit(*cmd.threshold, asv_rates_at(set, *cmd.threshold));
      return;
    }
    const ErrorProfile profile = build_profile(set, ProfileRole::AsvTargetNontarget);
    Eigen::Index best = 0;
    double best_value = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < profile.size(); ++i) {
      const double value =
          nist_dcf(c_miss, c_fa, pi_tar, profile.p_miss[i], profile.p_fa[i]);
      if (value < best_value) {
        best_value = value;
        best = i;
      }
    }
    emit(profile.thresholds[best], {profile.p_miss[best], profile.p_fa[best]});
  });
}

int run_tdcf(const TdcfCommand& cmd, std::ostream& out, std::ostream& diag) {
  return guarded("tdcf", diag, [&] {
    if (!cmd.min_sweep && !cmd.cm_threshold.has_value())
      throw UsageError("provide --cm-threshold or --min");
    const ScoreSet asv_raw = parse_score_file(cmd.asv_scores, ScoreKind::AsvScores);
    const ScoreSet cm = parse_score_file(cmd.cm_scores, ScoreKind::CmScores);
    const CostConfig base = load_base_config(cmd.config);
    std::vector<double> priors = cmd.pi_spoof;
    const std::vector<CostModel> models = models_for_priors(base, cmd.overrides, priors);
    const SpoofMode mode = resolve_spoof_mode(cmd.spoof_mode, asv_raw);

    const ScoreSet* asv = &asv_raw;
    double t = cmd.asv_threshold.value;
    std::optional<CalibrationResult> calibration;
    if (cmd.asv_threshold.auto_calibrate) {
      calibration = calibrate_affine(asv_raw, models.front());
      asv = &calibration->calibrated;
      t = 0.0;
      out << "# asv-calibration\tscale=" << format_number(calibration->scale, cmd.precision)
          << "\toffset=" << format_number(calibration->offset, cmd.precision)
          << "\tinverted=" << (calibration->inverted_polarity ? 1 : 0) << "\n";
    }

    out << "# pi_spoof\tarch\tt\ts_star\ttdcf";
    if (cmd.breakdown) out << "\tterm_a\tterm_b\tterm_c\tterm_d";
    out << "\n";

    for (std::size_t i = 0; i < models.size(); ++i) {
      double s = 0.0;
      TdcfBreakdown b;
      if (cmd.min_sweep) {
        const MinTdcfResult r =
            min_tdcf_over_cm(*asv, cm, models[i], t, cmd.arch, mode);
        s = r.cm_threshold;
        b = r.breakdown;
      } else {
        s = *cmd.cm_threshold;
        b = tdcf_at(*asv, cm, models[i], {s, t, mode}, cmd.arch);
      }
      out << format_number(priors[i], cmd.precision) << '\t' << to_string(cmd.arch)
          << '\t' << format_number(t, cmd.precision) << '\t'
          << format_number(s, cmd.precision) << '\t'
          << format_number(b.total, cmd.precision);
      if (cmd.breakdown)
        out << '\t' << format_number(b.term_a, cmd.precision) << '\t'
            << format_number(b.term_b, cmd.precision) << '\t'
            << format_number(b.term_c, cmd.precision) << '\t'
            << format_number(b.term_d, cmd.precision);
      out << "\n";
    }
  });
}

int run_simulate(const SimulateCommand& cmd, std::ostream& out, std::ostream& diag) {
  return guarded("simulate", diag, [&] {
    const ScoreSet set = sample_scores(cmd.model, cmd.kind);
    write_score_file(set, cmd.out);

    if (!cmd.report_at.empty()) {
      std::ostringstream sidecar;
      sidecar << "# threshold\tp_miss\tp_fa\tp_miss_spoof\n";
      for (double t : cmd.report_at) {
        const AsvOperatingRates r = analytic_rates(cmd.model, t);
        sidecar << format_number(t, cmd.precision) << '\t'
                << format_number(r.p_miss, cmd.precision) << '\t'
                << format_number(r.p_fa, cmd.precision) << '\t'
                << format_number(r.p_miss_spoof, cmd.precision) << '\n';
      }
      const std::filesystem::path oracle_path =
          cmd.out.string() + ".oracle.tsv";
      std::ofstream f(oracle_path);
      if (!f) throw ValidationError("cannot open '" + oracle_path.string() + "' for writing");
      f << sidecar.str();
      if (!f.good()) {
        f.close();
        std::error_code ec;
        std::filesystem::remove(oracle_path, ec);
        throw ValidationError("failed writing '" + oracle_path.string() + "'");
      }
    }

    out << "# out\tn_tar\tn_non\tn_spoof\tseed\n";
    out << cmd.out.string() << '\t' << cmd.model.n_tar << '\t' << cmd.model.n_non << '\t'
        << cmd.model.n_spoof << '\t' << cmd.model.seed << '\n';
  });
}

RankReport build_rank_report(const RankCommand& cmd) {
  const ScoreSet asv_raw = parse_score_file(cmd.asv_scores, ScoreKind::AsvScores);
  const CostConfig base = load_base_config(cmd.config);
  std::vector<double> priors = cmd.pi_spoof;
  const std::vector<CostModel> models = models_for_priors(base, cmd.overrides, priors);
  const SpoofMode mode = resolve_spoof_mode(cmd.spoof_mode, asv_raw);

  const ScoreSet* asv = &asv_raw;
  double t = cmd.asv_threshold.value;
  std::optional<CalibrationResult> calibration;
  if (cmd.asv_threshold.auto_calibrate) {
    calibration = calibrate_affine(asv_raw, models.front());
    asv = &calibration->calibrated;
    t = 0.0;
  }

  std::vector<std::filesystem::path> files;
  if (!std::filesystem::is_directory(cmd.cm_scores_dir))
    throw ValidationError("'" + cmd.cm_scores_dir.string() + "' is not a directory");
  for (const auto& entry : std::filesystem::directory_iterator(cmd.cm_scores_dir))
    if (entry.is_regular_file()) files.push_back(entry.path());
  if (files.empty())
    throw ValidationError("no CM score files in '" + cmd.cm_scores_dir.string() + "'");
  std::sort(files.begin(), files.end(), [](const auto& a, const auto& b) {
    return a.filename().string() < b.filename().string();
  });

  RankReport report;
  report.pi_spoof = priors;
  report.asv_threshold = t;
  report.arch = cmd.arch;

  const AsvOperatingRates asv_rates = asv_operating_rates(*asv, t, mode);
  report.no_cm.system = "no-cm";
  report.perfect_cm.system = "perfect-cm";
  report.perfect_cm.eer = 0.0;
  for (const CostModel& model : models) {
    // A missing CM is the accept-all gate; a perfect CM makes no errors.
    report.no_cm.min_tdcf.push_back(
        tdcf_from_rates(asv_rates, {0.0, 1.0}, model, cmd.arch).total);
    report.perfect_cm.min_tdcf.push_back(
        tdcf_from_rates(asv_rates, {0.0, 0.0}, model, cmd.arch).total);
  }

  for (const auto& file : files) {
    const ScoreSet cm = parse_score_file(file, ScoreKind::CmScores);
    RankRow row;
    row.system = file.stem().string();
    row.eer = estimate_eer(build_profile(cm, ProfileRole::CmHumanSpoof),
                           EerMethod::RocchInterp)
                  .value;
    for (const CostModel& model : models)
      row.min_tdcf.push_back(
          min_tdcf_over_cm(*asv, cm, model, t, cmd.arch, mode).value);
    report.systems.push_back(std::move(row));
  }
  // Files arrive name-sorted; a stable sort by EER keeps name order as the
  // tie break.
  std::stable_sort(report.systems.begin(), report.systems.end(),
                   [](const RankRow& a, const RankRow& b) { return *a.eer < *b.eer; });
  return report;
}

int run_rank(const RankCommand& cmd, std::ostream& out, std::ostream& diag) {
  return guarded("rank", diag, [&] {
    const RankReport report = build_rank_report(cmd);
    out << "# eer: pooled over all spoof trials, rocch interpolation; min t-DCF at "
           "asv threshold t="
        << format_number(report.asv_threshold, cmd.precision)
        << ", arch=" << to_string(report.arch) << "\n";
    out << "# system\teer";
    for (double pi : report.pi_spoof)
      out << "\tmin_tdcf@" << format_number(pi, cmd.precision);
    out << "\n";
    auto emit = [&](const RankRow& row) {
      out << row.system << '\t'
          << (row.eer ? format_number(*row.eer, cmd.precision) : std::string("-"));
      for (double v : row.min_tdcf) out << '\t' << format_number(v, cmd.precision);
      out << "\n";
    };
    emit(report.no_cm);
    emit(report.perfect_cm);
    for (const auto& row : report.systems) emit(row);
  });
}

}  // namespace tandem::cli
