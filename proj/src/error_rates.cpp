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

#include "tandem/error_rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace tandem {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Counts scores <= t; -inf counts nothing, +inf counts everything.
Eigen::Index count_at_or_below(const Eigen::ArrayXd& scores, double t) {
  return (scores <= t).count();
}

Eigen::Index count_at_or_below_sorted(const std::vector<double>& sorted, double t) {
  return std::upper_bound(sorted.begin(), sorted.end(), t) - sorted.begin();
}

}  // namespace

BinaryRates ErrorProfile::rates_at(double t) const {
  // Largest tabulated threshold <= t. The -inf sentinel guarantees one.
  const double* begin = thresholds.data();
  const double* end = begin + thresholds.size();
  auto it = std::upper_bound(begin, end, t);
  Eigen::Index idx = (it - begin) - 1;
  if (idx < 0) idx = 0;  // t = -inf lands here
  return {p_miss[idx], p_fa[idx]};
}

BinaryRates asv_rates_at(const ScoreSet& asv, double t) {
  const auto& tar = asv.scores(TrialLabel::Target);
  const auto& non = asv.scores(TrialLabel::Nontarget);
  if (tar.size() == 0 || non.size() == 0)
    throw ValidationError("ASV rates need non-empty target and nontarget classes");
  return {static_cast<double>(count_at_or_below(tar, t)) / static_cast<double>(tar.size()),
          static_cast<double>(non.size() - count_at_or_below(non, t)) /
              static_cast<double>(non.size())};
}

double asv_spoof_miss_at(const ScoreSet& asv, double t) {
  const auto& spoof = asv.scores(TrialLabel::Spoof);
  if (spoof.size() == 0)
    throw ValidationError("ASV set has no spoof trials; use worst-case spoof mode");
  return static_cast<double>(count_at_or_below(spoof, t)) / static_cast<double>(spoof.size());
}

BinaryRates cm_rates_at(const ScoreSet& cm, double s) {
  const auto& human = cm.human_scores();
  const auto& spoof = cm.scores(TrialLabel::Spoof);
  if (human.size() == 0 || spoof.size() == 0)
    throw ValidationError("CM rates need non-empty human and spoof classes");
  return {static_cast<double>(count_at_or_below(human, s)) / static_cast<double>(human.size()),
          static_cast<double>(spoof.size() - count_at_or_below(spoof, s)) /
              static_cast<double>(spoof.size())};
}

ErrorProfile build_profile(const ScoreSet& set, ProfileRole role) {
  const Eigen::ArrayXd& positives = role == ProfileRole::AsvTargetNontarget
                                        ? set.scores(TrialLabel::Target)
                                        : set.human_scores();
  const Eigen::ArrayXd& negatives = role == ProfileRole::AsvTargetNontarget
                                        ? set.scores(TrialLabel::Nontarget)
                                        : set.scores(TrialLabel::Spoof);
  if (positives.size() == 0 || negatives.size() == 0)
    throw ValidationError("profile needs non-empty positive and negative classes");

  std::vector<double> pos(positives.data(), positives.data() + positives.size());
  std::vector<double> neg(negatives.data(), negatives.data() + negatives.size());
  std::sort(pos.begin(), pos.end());
  std::sort(neg.begin(), neg.end());

  // Candidate thresholds: distinct observed scores plus sentinels. Rates
  // change only at observed scores, so the grid is lossless.
  std::vector<double> grid;
  grid.reserve(pos.size() + neg.size() + 2);
  grid.push_back(-kInf);
  std::merge(pos.begin(), pos.end(), neg.begin(), neg.end(), std::back_inserter(grid));
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  grid.push_back(kInf);

  ErrorProfile profile;
  profile.positive_count = static_cast<Eigen::Index>(pos.size());
  profile.negative_count = static_cast<Eigen::Index>(neg.size());
  const auto n = static_cast<Eigen::Index>(grid.size());
  profile.thresholds.resize(n);
  profile.p_miss.resize(n);
  profile.p_fa.resize(n);
  const auto n_pos = static_cast<double>(pos.size());
  const auto n_neg = static_cast<double>(neg.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = grid[static_cast<std::size_t>(i)];
    profile.thresholds[i] = t;
    profile.p_miss[i] = static_cast<double>(count_at_or_below_sorted(pos, t)) / n_pos;
    profile.p_fa[i] =
        static_cast<double>(static_cast<Eigen::Index>(neg.size()) -
                            count_at_or_below_sorted(neg, t)) / n_neg;
  }
  return profile;
}

namespace {

struct RocPoint {
  double fa;   // x: false-alarm rate
  double tpr;  // y: 1 - miss rate
};

double cross(const RocPoint& o, const RocPoint& a, const RocPoint& b) {
  return (a.fa - o.fa) * (b.tpr - o.tpr) - (a.tpr - o.tpr) * (b.fa - o.fa);
}

// Upper hull of the ROC scatter, left to right. This is the ROC convex
// hull: every attainable operating curve lies on or below it.
std::vector<RocPoint> roc_convex_hull(const ErrorProfile& profile) {
  std::vector<RocPoint> pts;
  pts.reserve(static_cast<std::size_t>(profile.size()));
  for (Eigen::Index i = 0; i < profile.size(); ++i)
    pts.push_back({profile.p_fa[i], 1.0 - profile.p_miss[i]});
  std::sort(pts.begin(), pts.end(), [](const RocPoint& a, const RocPoint& b) {
    return a.fa < b.fa || (a.fa == b.fa && a.tpr < b.tpr);
  });

  std::vector<RocPoint> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) >= 0.0)
      hull.pop_back();
    hull.push_back(p);
  }
  return hull;
}

double rocch_eer(const ErrorProfile& profile) {
  const auto hull = roc_convex_hull(profile);
  // Walk the hull with d = p_miss - p_fa, which decreases from +1 toward
  // -1; interpolate the segment where d crosses zero.
  double prev_d = 1.0 - hull.front().tpr - hull.front().fa;
  double prev_miss = 1.0 - hull.front().tpr;
  if (prev_d <= 0.0) return prev_miss;
  for (std::size_t i = 1; i < hull.size(); ++i) {
    const double d = 1.0 - hull[i].tpr - hull[i].fa;
    const double miss = 1.0 - hull[i].tpr;
    if (d <= 0.0) {
      if (prev_d == d) return miss;
      const double alpha = prev_d / (prev_d - d);
      return prev_miss + alpha * (miss - prev_miss);
    }
    prev_d = d;
    prev_miss = miss;
  }
  return prev_miss;  // unreachable for valid profiles: last d = -1
}

double midpoint_eer(const ErrorProfile& profile) {
  // d is non-decreasing along thresholds, from -1 at -inf to +1 at +inf.
  for (Eigen::Index i = 0; i + 1 < profile.size(); ++i) {
    const double d0 = profile.p_miss[i] - profile.p_fa[i];
    const double d1 = profile.p_miss[i + 1] - profile.p_fa[i + 1];
    if (d0 <= 0.0 && d1 >= 0.0) {
      if (d1 == d0) return profile.p_miss[i];
      const double alpha = -d0 / (d1 - d0);
      return profile.p_miss[i] + alpha * (profile.p_miss[i + 1] - profile.p_miss[i]);
    }
  }
  return 0.5;  // unreachable for valid profiles
}

double crossing_threshold_hint(const ErrorProfile& profile) {
  Eigen::Index best = 0;
  double best_gap = kInf;
  for (Eigen::Index i = 0; i < profile.size(); ++i) {
    const double gap = std::abs(profile.p_miss[i] - profile.p_fa[i]);
    if (gap < best_gap) {
      best_gap = gap;
      best = i;
    }
  }
  return profile.thresholds[best];
}

}  // namespace

EerEstimate estimate_eer(const ErrorProfile& profile, EerMethod method) {
  EerEstimate est;
  est.method = method;
  est.value = method == EerMethod::RocchInterp ? rocch_eer(profile) : midpoint_eer(profile);
  est.threshold_hint = crossing_threshold_hint(profile);
  return est;
}

}  // namespace tandem
