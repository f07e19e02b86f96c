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

#ifndef TANDEM_ERROR_RATES_HPP_
#define TANDEM_ERROR_RATES_HPP_

#include <Eigen/Core>

#include "tandem/trial_data.hpp"

namespace tandem {

// Miss and false-alarm rate of a binary detector at one threshold.
// Convention throughout: score <= threshold rejects, score > threshold
// accepts, so p_miss = P(positive score <= t) and p_fa = P(negative > t).
struct BinaryRates {
  double p_miss = 0.0;
  double p_fa = 0.0;
};

// Which two classes a profile discriminates.
enum class ProfileRole { AsvTargetNontarget, CmHumanSpoof };

// Empirical miss/false-alarm rates as step functions of the threshold,
// tabulated at every distinct observed score plus -inf/+inf sentinels.
// Between consecutive thresholds the rates are constant, so the table is a
// lossless representation of the full operating curve.
struct ErrorProfile {
  Eigen::ArrayXd thresholds;  // ascending, thresholds[0] = -inf, last = +inf
  Eigen::ArrayXd p_miss;      // non-decreasing, p_miss[0] = 0, last = 1
  Eigen::ArrayXd p_fa;        // non-increasing, p_fa[0] = 1, last = 0
  Eigen::Index positive_count = 0;
  Eigen::Index negative_count = 0;

  Eigen::Index size() const { return thresholds.size(); }

  // Step-function lookup: rates of the region containing t. Agrees with
  // direct counting at every real t.
  BinaryRates rates_at(double t) const;
};

// Empirical ASV rates at threshold t over targets (miss) and nontargets
// (false alarm).
BinaryRates asv_rates_at(const ScoreSet& asv, double t);

// Fraction of ASV spoof trials at or below t (spoofs correctly rejected);
// 1 - result is the spoof false-accept rate. Requires spoof trials.
double asv_spoof_miss_at(const ScoreSet& asv, double t);

// Empirical CM rates at threshold s: miss over humans (targets pooled with
// nontargets), false alarm over spoofs.
BinaryRates cm_rates_at(const ScoreSet& cm, double s);

ErrorProfile build_profile(const ScoreSet& set, ProfileRole role);

enum class EerMethod { RocchInterp, LinearMidpoint };

struct EerEstimate {
  double value = 0.0;
  EerMethod method = EerMethod::RocchInterp;
  double threshold_hint = 0.0;  // a threshold at or near the crossing
};

// RocchInterp interpolates along the ROC convex hull where it crosses the
// p_miss = p_fa diagonal; LinearMidpoint interpolates the empirical curve
// between the two thresholds where p_miss - p_fa changes sign.
EerEstimate estimate_eer(const ErrorProfile& profile,
                         EerMethod method = EerMethod::RocchInterp);

}  // namespace tandem

#endif  // TANDEM_ERROR_RATES_HPP_
