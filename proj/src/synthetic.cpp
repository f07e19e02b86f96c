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

#include "tandem/synthetic.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace tandem {

namespace {

// SplitMix64 (Steele, Lea & Flood 2014); 64-bit state, equidistributed
// output, trivially portable.
struct SplitMix64 {
  std::uint64_t state;

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in the open interval (0, 1): 53 random bits centered in the
  // unit cells so 0 and 1 are never produced.
  double uniform01() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }
};

// Per-class stream: scramble the user seed once, then mix in a class tag.
SplitMix64 class_stream(std::uint64_t seed, std::uint64_t class_tag) {
  SplitMix64 seeder{seed};
  return SplitMix64{seeder.next() ^ class_tag};
}

constexpr std::uint64_t kTagTarget = 0xA5A5A5A500000001ULL;
constexpr std::uint64_t kTagNontarget = 0xA5A5A5A500000002ULL;
constexpr std::uint64_t kTagSpoof = 0xA5A5A5A500000003ULL;

void sample_class(std::vector<TrialRecord>& out, TrialLabel label, double mu,
                  double sigma, Eigen::Index n, std::uint64_t seed,
                  std::uint64_t tag) {
  SplitMix64 stream = class_stream(seed, tag);
  const std::string prefix(to_string(label));
  for (Eigen::Index i = 1; i <= n; ++i) {
    const double z = normal_quantile(stream.uniform01());
    out.push_back({prefix + std::to_string(i), mu + sigma * z, label});
  }
}

}  // namespace

void validate(const GaussianScoreModel& model) {
  if (!(model.sigma_tar > 0.0) || !(model.sigma_non > 0.0) || !(model.sigma_spoof > 0.0))
    throw ValidationError("sigmas must be positive");
  if (!std::isfinite(model.mu_tar) || !std::isfinite(model.mu_non) ||
      !std::isfinite(model.mu_spoof) || !std::isfinite(model.sigma_tar) ||
      !std::isfinite(model.sigma_non) || !std::isfinite(model.sigma_spoof))
    throw ValidationError("model parameters must be finite");
  if (model.n_tar < 1 || model.n_non < 1 || model.n_spoof < 1)
    throw ValidationError("class counts must be at least 1");
}

ScoreSet sample_scores(const GaussianScoreModel& model, ScoreKind kind) {
  validate(model);
  std::vector<TrialRecord> records;
  records.reserve(static_cast<std::size_t>(model.n_tar + model.n_non + model.n_spoof));
  sample_class(records, TrialLabel::Target, model.mu_tar, model.sigma_tar, model.n_tar,
               model.seed, kTagTarget);
  sample_class(records, TrialLabel::Nontarget, model.mu_non, model.sigma_non,
               model.n_non, model.seed, kTagNontarget);
  sample_class(records, TrialLabel::Spoof, model.mu_spoof, model.sigma_spoof,
               model.n_spoof, model.seed, kTagSpoof);
  return ScoreSet::make(std::move(records), kind);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x * 0.7071067811865475244); }

// AS 241 algorithm PPND16 (Wichura 1988): rational approximations on three
// regions, |error| < 1e-15 over (0, 1).
double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw ValidationError("normal_quantile needs p in the open interval (0, 1)");

  const double q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                 6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
               1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
             1.3314166789178437745e2) * r + 3.3871328727963666080e0) /
           (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                 3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
               5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
             4.2313330701600911252e1) * r + 1.0);
  }

  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double x;
  if (r <= 5.0) {
    r -= 1.6;
    x = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
              2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
            3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
          4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
        (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
              1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
            6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
          2.05319162663775882187e0) * r + 1.0);
  } else {
    r -= 5.0;
    x = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
              1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
            2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
          5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
        (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
              1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
            1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
          5.99832206555887937690e-1) * r + 1.0);
  }
  return q < 0.0 ? -x : x;
}

AsvOperatingRates analytic_rates(const GaussianScoreModel& model, double t) {
  validate(model);
  AsvOperatingRates rates;
  rates.p_miss = normal_cdf((t - model.mu_tar) / model.sigma_tar);
  rates.p_fa = 1.0 - normal_cdf((t - model.mu_non) / model.sigma_non);
  rates.p_miss_spoof = normal_cdf((t - model.mu_spoof) / model.sigma_spoof);
  return rates;
}

BinaryRates analytic_cm_rates(const GaussianScoreModel& model, double s) {
  validate(model);
  const double w_tar = static_cast<double>(model.n_tar) /
                       static_cast<double>(model.n_tar + model.n_non);
  BinaryRates rates;
  rates.p_miss = w_tar * normal_cdf((s - model.mu_tar) / model.sigma_tar) +
                 (1.0 - w_tar) * normal_cdf((s - model.mu_non) / model.sigma_non);
  rates.p_fa = 1.0 - normal_cdf((s - model.mu_spoof) / model.sigma_spoof);
  return rates;
}

double analytic_tdcf(const GaussianScoreModel& asv_model,
                     const GaussianScoreModel& cm_model, const CostModel& model,
                     double s, double t) {
  validate(model);
  const AsvOperatingRates asv = analytic_rates(asv_model, t);
  const BinaryRates cm = analytic_cm_rates(cm_model, s);
  return tdcf_from_rates(asv, cm, model, TandemArchitecture::CmThenAsv).total;
}

}  // namespace tandem
