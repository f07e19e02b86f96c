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

#ifndef TANDEM_TDCF_HPP_
#define TANDEM_TDCF_HPP_

#include <utility>
#include <vector>

#include "tandem/cost_model.hpp"
#include "tandem/error_rates.hpp"
#include "tandem/trial_data.hpp"

namespace tandem {

// How the countermeasure and the verifier are wired together: CM gating
// ASV, ASV gating CM, or both running in parallel with accept requiring
// two accepts.
enum class TandemArchitecture { CmThenAsv, AsvThenCm, Parallel };

enum class DetectorAction { Accept, Reject, Sleep };

// (CM action, ASV action) rows describing one architecture. Sleep marks
// the detector a cascade never invokes, so it appears only in the two
// cascaded variants.
using JointAction = std::pair<DetectorAction, DetectorAction>;
std::vector<JointAction> joint_action_pairs(TandemArchitecture arch);

// Whether the spoof-conditioned ASV miss rate is measured from spoof
// trials in the ASV score set, or pinned to the target miss rate (the
// worst-case attack assumption).
enum class SpoofMode { WorstCase, Empirical };

struct TandemOperatingPoint {
  double cm_threshold = 0.0;
  double asv_threshold = 0.0;
  SpoofMode spoof_mode = SpoofMode::WorstCase;
};

// ASV rates at one threshold, including the spoof-conditioned miss rate.
struct AsvOperatingRates {
  double p_miss = 0.0;
  double p_fa = 0.0;
  double p_miss_spoof = 0.0;
};

AsvOperatingRates asv_operating_rates(const ScoreSet& asv, double t, SpoofMode mode);

// The four tandem error probabilities of Table-1 style accounting:
//   p_a  target missed by the ASV stage,
//   p_b  nontarget falsely accepted by both stages,
//   p_c  spoof passed by the CM and accepted by the ASV,
//   p_d  target (human) rejected by the CM stage.
// The two detectors are treated as statistically independent.
struct TandemErrorProbs {
  double p_a = 0.0;
  double p_b = 0.0;
  double p_c = 0.0;
  double p_d = 0.0;
};

TandemErrorProbs tandem_error_probs(const AsvOperatingRates& asv, const BinaryRates& cm,
                                    TandemArchitecture arch);

// Cost- and prior-weighted tandem detection cost with its four summands:
//   total = c_miss_asv*pi_tar*p_a + c_fa_asv*pi_non*p_b
//         + c_fa_cm*pi_spoof*p_c + c_miss_cm*pi_tar*p_d.
struct TdcfBreakdown {
  TandemErrorProbs probs;
  double term_a = 0.0;
  double term_b = 0.0;
  double term_c = 0.0;
  double term_d = 0.0;
  double total = 0.0;
};

TdcfBreakdown tdcf_from_rates(const AsvOperatingRates& asv, const BinaryRates& cm,
                              const CostModel& model, TandemArchitecture arch);

TdcfBreakdown tdcf_at(const ScoreSet& asv, const ScoreSet& cm, const CostModel& model,
                      const TandemOperatingPoint& op, TandemArchitecture arch);

// Minimum of the t-DCF over the CM threshold with the ASV threshold fixed.
// The objective is piecewise constant in s and changes only at observed CM
// scores, so the sweep over distinct scores plus sentinels is exact. Ties
// resolve to the smallest achieving threshold.
struct MinTdcfResult {
  double value = 0.0;
  double cm_threshold = 0.0;
  TdcfBreakdown breakdown;
};

MinTdcfResult min_tdcf_over_cm(const ScoreSet& asv, const ScoreSet& cm,
                               const CostModel& model, double asv_threshold,
                               TandemArchitecture arch, SpoofMode spoof_mode);

// Affine score calibration r' = scale*r + offset fitted on target and
// nontarget trials by prior-weighted logistic loss, with the effective
// prior built from (c_miss_asv, c_fa_asv, pi_tar/(pi_tar + pi_non)).
// Calibrated scores approximate posterior log odds, so thresholding at 0
// approximates the Bayes decision. Spoof trials are transformed but take
// no part in the fit. scale ends positive; if the unconstrained optimum
// wanted a nonpositive slope the fit is clamped and flagged as inverted.
struct CalibrationResult {
  double scale = 1.0;
  double offset = 0.0;
  int iterations = 0;
  bool inverted_polarity = false;
  ScoreSet calibrated;
};

CalibrationResult calibrate_affine(const ScoreSet& asv, const CostModel& model);

}  // namespace tandem

#endif  // TANDEM_TDCF_HPP_
