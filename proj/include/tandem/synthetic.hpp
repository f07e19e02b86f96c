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

#ifndef TANDEM_SYNTHETIC_HPP_
#define TANDEM_SYNTHETIC_HPP_

#include <cstdint>

#include "tandem/cost_model.hpp"
#include "tandem/tdcf.hpp"
#include "tandem/trial_data.hpp"

namespace tandem {

// Parametric Gaussian score model, one class-conditional density per trial
// class. Sampling is deterministic given the seed; each class draws from
// its own generator stream, so changing one class count never perturbs the
// draws of another class.
struct GaussianScoreModel {
  double mu_tar = 1.0;
  double mu_non = -1.0;
  double mu_spoof = 1.0;
  double sigma_tar = 1.0;
  double sigma_non = 1.0;
  double sigma_spoof = 1.0;
  Eigen::Index n_tar = 1;
  Eigen::Index n_non = 1;
  Eigen::Index n_spoof = 1;
  std::uint64_t seed = 0;
};

void validate(const GaussianScoreModel& model);

// Deterministic sample of the model. Trial ids are `<label><index>` with a
// per-class 1-based index; records are ordered targets, nontargets, spoofs.
// Normal variates come from the inverse CDF applied to a SplitMix64
// uniform stream, which is portable across platforms and compilers.
ScoreSet sample_scores(const GaussianScoreModel& model, ScoreKind kind);

// Standard normal CDF and its inverse (Wichura's AS 241, full double
// accuracy).
double normal_cdf(double x);
double normal_quantile(double p);

// Closed-form rates of the model at an ASV threshold t:
// p_miss = Phi((t-mu_tar)/sigma_tar), p_fa = 1 - Phi((t-mu_non)/sigma_non),
// p_miss_spoof = Phi((t-mu_spoof)/sigma_spoof).
AsvOperatingRates analytic_rates(const GaussianScoreModel& model, double t);

// Closed-form CM rates at threshold s. The human class is the target and
// nontarget mixture weighted by the model's trial counts.
BinaryRates analytic_cm_rates(const GaussianScoreModel& model, double s);

// The tandem cost evaluated on closed-form Gaussian rates (CM-then-ASV
// wiring); the convergence oracle for the empirical pipeline.
double analytic_tdcf(const GaussianScoreModel& asv_model,
                     const GaussianScoreModel& cm_model, const CostModel& model,
                     double s, double t);

}  // namespace tandem

#endif  // TANDEM_SYNTHETIC_HPP_
