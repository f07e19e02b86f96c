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

#ifndef TANDEM_COST_MODEL_HPP_
#define TANDEM_COST_MODEL_HPP_

#include <Eigen/Core>

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string_view>

#include "tandem/error.hpp"

namespace tandem {

// Prior probabilities of the three trial classes. Must lie on the
// probability simplex; validated() accepts inputs within 1e-12 of the
// simplex and renormalizes them so the stored sum is exactly 1.
struct PriorTriple {
  double pi_tar = 0.0;
  double pi_non = 0.0;
  double pi_spoof = 0.0;

  static PriorTriple validated(double pi_tar, double pi_non, double pi_spoof);
};

// Banking-style prior recipe: assert a spoof prior, split the remaining
// mass 99:1 between targets and nontargets.
PriorTriple banking_priors(double pi_spoof);

// The six tandem cost parameters: four error costs plus the prior triple.
// Costs of correct actions are identically zero.
struct CostModel {
  double c_miss_asv = 1.0;
  double c_fa_asv = 10.0;
  double c_miss_cm = 1.0;
  double c_fa_cm = 10.0;
  PriorTriple priors;
};

// Throws unless all costs are nonnegative, at least one is positive, and
// the priors sit on the simplex (within 1e-12).
void validate(const CostModel& model);

// Fully general Bayes detection cost: L actions x M propositions, with a
// cost and an error probability per (action, proposition) pair.
struct GenericCostSpec {
  Eigen::VectorXd priors;  // M, on the simplex within 1e-12
  Eigen::MatrixXd cost;    // L x M, nonnegative
  Eigen::MatrixXd err;     // L x M, each entry in [0, 1]
};

// Sum over actions and propositions of prior * cost * error probability.
double generic_dcf(const GenericCostSpec& spec);

// The familiar two-class detection cost:
// c_miss * pi_tar * p_miss + c_fa * (1 - pi_tar) * p_fa.
double nist_dcf(double c_miss, double c_fa, double pi_tar, double p_miss, double p_fa);

// Collapses (c_miss, c_fa, pi_tar) into the single parameter
// pi_tar * c_miss / (pi_tar * c_miss + (1 - pi_tar) * c_fa), which
// preserves the ranking of operating points.
double effective_prior(double c_miss, double c_fa, double pi_tar);

// Key-value cost configuration as read from a file or assembled from CLI
// flags; unset fields fall back to defaults when resolved.
struct CostConfig {
  std::optional<double> c_miss_asv;
  std::optional<double> c_fa_asv;
  std::optional<double> c_miss_cm;
  std::optional<double> c_fa_cm;
  std::optional<double> pi_spoof;  // banking_priors applied
  std::optional<double> pi_tar;    // explicit triple mode
  std::optional<double> pi_non;
};

// Accepted keys: c_miss_asv, c_fa_asv, c_miss_cm, c_fa_cm, pi_spoof,
// pi_tar, pi_non. One `key = value` (or `key value`) per line, '#'
// comments. Unknown or duplicate keys and out-of-range values are errors
// naming the offending key.
CostConfig parse_cost_config(std::istream& in, std::string_view source_name);
CostConfig parse_cost_config_file(const std::filesystem::path& path);

// Field-wise merge with `overrides` winning, then defaults: costs
// (1, 10, 1, 10). Priors: if pi_tar or pi_non is set, all of pi_tar,
// pi_non, pi_spoof must be set and form the explicit triple; otherwise
// pi_spoof alone selects banking_priors(pi_spoof). Throws if neither form
// is complete.
CostModel resolve_cost_model(const CostConfig& base, const CostConfig& overrides);

}  // namespace tandem

#endif  // TANDEM_COST_MODEL_HPP_
