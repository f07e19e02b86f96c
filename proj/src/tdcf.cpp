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

#include "tandem/tdcf.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>

namespace tandem {

std::vector<JointAction> joint_action_pairs(TandemArchitecture arch) {
  using A = DetectorAction;
  switch (arch) {
    case TandemArchitecture::CmThenAsv:
      return {{A::Accept, A::Reject}, {A::Accept, A::Accept}, {A::Reject, A::Sleep}};
    case TandemArchitecture::AsvThenCm:
      return {{A::Sleep, A::Reject}, {A::Accept, A::Accept}, {A::Reject, A::Accept}};
    case TandemArchitecture::Parallel:
      return {{A::Accept, A::Reject},
              {A::Accept, A::Accept},
              {A::Reject, A::Reject},
              {A::Reject, A::Accept}};
  }
  return {};
}

AsvOperatingRates asv_operating_rates(const ScoreSet& asv, double t, SpoofMode mode) {
  const BinaryRates base = asv_rates_at(asv, t);
  AsvOperatingRates rates;
  rates.p_miss = base.p_miss;
  rates.p_fa = base.p_fa;
  rates.p_miss_spoof =
      mode == SpoofMode::WorstCase ? base.p_miss : asv_spoof_miss_at(asv, t);
  return rates;
}

TandemErrorProbs tandem_error_probs(const AsvOperatingRates& asv, const BinaryRates& cm,
                                    TandemArchitecture arch) {
  TandemErrorProbs p;
  switch (arch) {
    case TandemArchitecture::CmThenAsv:
      // The CM gates the ASV; a CM rejection covers both would-be ASV
      // outcomes, so the ASV miss rate cancels inside p_d.
      p.p_a = (1.0 - cm.p_miss) * asv.p_miss;
      p.p_b = (1.0 - cm.p_miss) * asv.p_fa;
      p.p_c = cm.p_fa * (1.0 - asv.p_miss_spoof);
      p.p_d = cm.p_miss;
      break;
    case TandemArchitecture::AsvThenCm:
      p.p_a = asv.p_miss;
      p.p_b = asv.p_fa * (1.0 - cm.p_miss);
      p.p_c = (1.0 - asv.p_miss_spoof) * cm.p_fa;
      p.p_d = (1.0 - asv.p_miss) * cm.p_miss;
      break;
    case TandemArchitecture::Parallel:
      // Accept requires both accepts; target misses where either detector
      // rejects, attributed to the ASV when the ASV rejects.
      p.p_a = asv.p_miss;
      p.p_b = asv.p_fa * (1.0 - cm.p_miss);
      p.p_c = (1.0 - asv.p_miss_spoof) * cm.p_fa;
      p.p_d = cm.p_miss * (1.0 - asv.p_miss);
      break;
  }
  return p;
}

TdcfBreakdown tdcf_from_rates(const AsvOperatingRates& asv, const BinaryRates& cm,
                              const CostModel& model, TandemArchitecture arch) {
  TdcfBreakdown b;
  b.probs = tandem_error_probs(asv, cm, arch);
  b.term_a = model.c_miss_asv * model.priors.pi_tar * b.probs.p_a;
  b.term_b = model.c_fa_asv * model.priors.pi_non * b.probs.p_b;
  b.term_c = model.c_fa_cm * model.priors.pi_spoof * b.probs.p_c;
  b.term_d = model.c_miss_cm * model.priors.pi_tar * b.probs.p_d;
  b.total = b.term_a + b.term_b + b.term_c + b.term_d;
  return b;
}

TdcfBreakdown tdcf_at(const ScoreSet& asv, const ScoreSet& cm, const CostModel& model,
                      const TandemOperatingPoint& op, TandemArchitecture arch) {
  validate(model);
  const AsvOperatingRates asv_rates =
      asv_operating_rates(asv, op.asv_threshold, op.spoof_mode);
  const BinaryRates cm_rates = cm_rates_at(cm, op.cm_threshold);
  return tdcf_from_rates(asv_rates, cm_rates, model, arch);
}

MinTdcfResult min_tdcf_over_cm(const ScoreSet& asv, const ScoreSet& cm,
                               const CostModel& model, double asv_threshold,
                               TandemArchitecture arch, SpoofMode spoof_mode) {
  validate(model);
  const AsvOperatingRates asv_rates = asv_operating_rates(asv, asv_threshold, spoof_mode);
  const ErrorProfile cm_profile = build_profile(cm, ProfileRole::CmHumanSpoof);

  MinTdcfResult best;
  best.value = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < cm_profile.size(); ++i) {
    const BinaryRates cm_rates{cm_profile.p_miss[i], cm_profile.p_fa[i]};
    const TdcfBreakdown b = tdcf_from_rates(asv_rates, cm_rates, model, arch);
    if (b.total < best.value) {
      best.value = b.total;
      best.cm_threshold = cm_profile.thresholds[i];
      best.breakdown = b;
    }
  }
  return best;
}

namespace {

double softplus(double x) {
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

struct WeightedLogLoss {
  Eigen::ArrayXd tar;
  Eigen::ArrayXd non;
  double w_tar = 0.0;
  double w_non = 0.0;

  double loss(double a, double b) const {
    double acc = 0.0;
    for (double r : tar) acc += w_tar * softplus(-(a * r + b));
    for (double r : non) acc += w_non * softplus(a * r + b);
    return acc;
  }

  // Gradient and Hessian in (a, b).
  void derivatives(double a, double b, Eigen::Vector2d& grad,
                   Eigen::Matrix2d& hess) const {
    grad.setZero();
    hess.setZero();
    for (double r : tar) {
      const double z = a * r + b;
      const double g = -w_tar * sigmoid(-z);
      const double u = w_tar * sigmoid(z) * sigmoid(-z);
      grad[0] += g * r;
      grad[1] += g;
      hess(0, 0) += u * r * r;
      hess(0, 1) += u * r;
      hess(1, 1) += u;
    }
    for (double r : non) {
      const double z = a * r + b;
      const double g = w_non * sigmoid(z);
      const double u = w_non * sigmoid(z) * sigmoid(-z);
      grad[0] += g * r;
      grad[1] += g;
      hess(0, 0) += u * r * r;
      hess(0, 1) += u * r;
      hess(1, 1) += u;
    }
    hess(1, 0) = hess(0, 1);
  }
};

constexpr int kMaxNewtonIterations = 200;
constexpr double kGradientTolerance = 1e-10;
constexpr double kLossTolerance = 1e-14;
constexpr double kMinScale = 1e-6;

// Damped Newton on a convex objective. Returns the iteration count.
int newton_fit(const WeightedLogLoss& objective, double& a, double& b,
               bool fix_scale) {
  double current = objective.loss(a, b);
  Eigen::Vector2d grad;
  Eigen::Matrix2d hess;
  for (int iter = 1; iter <= kMaxNewtonIterations; ++iter) {
    objective.derivatives(a, b, grad, hess);
    if (fix_scale) grad[0] = 0.0;
    if (grad.lpNorm<Eigen::Infinity>() < kGradientTolerance) return iter;

    Eigen::Vector2d step;
    if (fix_scale) {
      step[0] = 0.0;
      step[1] = hess(1, 1) > 0.0 ? -grad[1] / hess(1, 1) : -grad[1];
    } else {
      // Levenberg-style ridge keeps the 2x2 solve well posed when the
      // scores barely constrain the slope.
      const double ridge = 1e-12 * (1.0 + hess.trace());
      hess(0, 0) += ridge;
      hess(1, 1) += ridge;
      step = hess.ldlt().solve(-grad);
    }

    double scale = 1.0;
    double next = objective.loss(a + scale * step[0], b + scale * step[1]);
    int halvings = 0;
    while (next > current && halvings < 60) {
      scale *= 0.5;
      next = objective.loss(a + scale * step[0], b + scale * step[1]);
      ++halvings;
    }
    a += scale * step[0];
    b += scale * step[1];
    const double improvement = current - next;
    current = next;
    if (improvement >= 0.0 && improvement < kLossTolerance * (1.0 + std::abs(current)))
      return iter;
  }
  throw ValidationError("affine calibration did not converge");
}

}  // namespace

CalibrationResult calibrate_affine(const ScoreSet& asv, const CostModel& model) {
  validate(model);
  const auto& tar = asv.scores(TrialLabel::Target);
  const auto& non = asv.scores(TrialLabel::Nontarget);
  if (tar.size() < 2 || non.size() < 2)
    throw ValidationError("calibration needs at least two target and two nontarget trials");

  const double lo = std::min(tar.minCoeff(), non.minCoeff());
  const double hi = std::max(tar.maxCoeff(), non.maxCoeff());
  if (hi - lo < 1e-12 * (1.0 + std::abs(hi)))
    throw ValidationError("calibration is degenerate: all scores are equal");

  const double pi_two_class =
      model.priors.pi_tar / (model.priors.pi_tar + model.priors.pi_non);
  const double pi_eff = effective_prior(model.c_miss_asv, model.c_fa_asv, pi_two_class);

  WeightedLogLoss objective;
  objective.tar = tar;
  objective.non = non;
  objective.w_tar = pi_eff / static_cast<double>(tar.size());
  objective.w_non = (1.0 - pi_eff) / static_cast<double>(non.size());

  double a = 1.0, b = 0.0;
  int iterations = newton_fit(objective, a, b, /*fix_scale=*/false);
  bool inverted = false;
  if (a <= 0.0) {
    // Scores rank backwards; keep the transform order preserving at a tiny
    // positive slope and refit the offset alone.
    inverted = true;
    a = kMinScale;
    b = 0.0;
    iterations += newton_fit(objective, a, b, /*fix_scale=*/true);
  }

  std::vector<TrialRecord> records = asv.records();
  for (auto& rec : records) rec.score = a * rec.score + b;
  return CalibrationResult{a, b, iterations, inverted,
                           ScoreSet::make(std::move(records), asv.kind())};
}

}  // namespace tandem
