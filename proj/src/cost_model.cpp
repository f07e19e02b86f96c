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

#include "tandem/cost_model.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>

namespace tandem {

namespace {

constexpr double kSimplexTolerance = 1e-12;

bool is_probability(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

}  // namespace

PriorTriple PriorTriple::validated(double pi_tar, double pi_non, double pi_spoof) {
  if (!is_probability(pi_tar) || !is_probability(pi_non) || !is_probability(pi_spoof))
    throw ValidationError("priors must lie in [0, 1]");
  const double sum = pi_tar + pi_non + pi_spoof;
  if (std::abs(sum - 1.0) > kSimplexTolerance)
    throw ValidationError("priors must sum to 1 within 1e-12, got sum " +
                          std::to_string(sum));
  // Renormalize so the stored components sum to exactly 1.
  PriorTriple p;
  p.pi_tar = pi_tar / sum;
  p.pi_non = pi_non / sum;
  p.pi_spoof = 1.0 - p.pi_tar - p.pi_non;
  if (p.pi_spoof < 0.0) p.pi_spoof = 0.0;
  return p;
}

PriorTriple banking_priors(double pi_spoof) {
  if (!std::isfinite(pi_spoof) || pi_spoof < 0.0 || pi_spoof >= 1.0)
    throw ValidationError("pi_spoof must lie in [0, 1)");
  PriorTriple p;
  p.pi_tar = (1.0 - pi_spoof) * 0.99;
  p.pi_non = (1.0 - pi_spoof) * 0.01;
  p.pi_spoof = pi_spoof;
  return p;
}

void validate(const CostModel& model) {
  const double costs[4] = {model.c_miss_asv, model.c_fa_asv, model.c_miss_cm,
                           model.c_fa_cm};
  for (double c : costs)
    if (!std::isfinite(c) || c < 0.0) throw ValidationError("costs must be nonnegative");
  if (std::all_of(std::begin(costs), std::end(costs), [](double c) { return c == 0.0; }))
    throw ValidationError("at least one cost must be positive");
  const double sum = model.priors.pi_tar + model.priors.pi_non + model.priors.pi_spoof;
  if (!is_probability(model.priors.pi_tar) || !is_probability(model.priors.pi_non) ||
      !is_probability(model.priors.pi_spoof) || std::abs(sum - 1.0) > kSimplexTolerance)
    throw ValidationError("cost model priors are off the probability simplex");
}

double generic_dcf(const GenericCostSpec& spec) {
  const Eigen::Index n_actions = spec.cost.rows();
  const Eigen::Index n_props = spec.cost.cols();
  if (spec.err.rows() != n_actions || spec.err.cols() != n_props ||
      spec.priors.size() != n_props)
    throw ValidationError("generic cost spec dimensions are inconsistent");
  double prior_sum = 0.0;
  for (Eigen::Index i = 0; i < n_props; ++i) {
    if (!is_probability(spec.priors[i])) throw ValidationError("priors must lie in [0, 1]");
    prior_sum += spec.priors[i];
  }
  if (std::abs(prior_sum - 1.0) > kSimplexTolerance)
    throw ValidationError("generic cost spec priors must sum to 1 within 1e-12");
  if ((spec.cost.array() < 0.0).any()) throw ValidationError("costs must be nonnegative");
  if ((spec.err.array() < 0.0).any() || (spec.err.array() > 1.0).any())
    throw ValidationError("error probabilities must lie in [0, 1]");

  double total = 0.0;
  for (Eigen::Index j = 0; j < n_actions; ++j)
    for (Eigen::Index i = 0; i < n_props; ++i)
      total += spec.priors[i] * spec.cost(j, i) * spec.err(j, i);
  return total;
}

double nist_dcf(double c_miss, double c_fa, double pi_tar, double p_miss, double p_fa) {
  if (!std::isfinite(c_miss) || !std::isfinite(c_fa) || c_miss < 0.0 || c_fa < 0.0)
    throw ValidationError("costs must be nonnegative");
  if (!is_probability(pi_tar) || !is_probability(p_miss) || !is_probability(p_fa))
    throw ValidationError("pi_tar and rates must lie in [0, 1]");
  return c_miss * pi_tar * p_miss + c_fa * (1.0 - pi_tar) * p_fa;
}

double effective_prior(double c_miss, double c_fa, double pi_tar) {
  if (!std::isfinite(c_miss) || !std::isfinite(c_fa) || c_miss < 0.0 || c_fa < 0.0)
    throw ValidationError("costs must be nonnegative");
  if (!is_probability(pi_tar)) throw ValidationError("pi_tar must lie in [0, 1]");
  const double weighted_miss = pi_tar * c_miss;
  const double weighted_fa = (1.0 - pi_tar) * c_fa;
  if (weighted_miss + weighted_fa <= 0.0)
    throw ValidationError("effective prior undefined: all cost weight is zero");
  return weighted_miss / (weighted_miss + weighted_fa);
}

namespace {

[[noreturn]] void config_fail(std::string_view source, std::size_t line_no,
                              const std::string& msg) {
  std::ostringstream os;
  os << source << ":" << line_no << ": " << msg;
  throw ValidationError(os.str());
}

void assign_key(CostConfig& cfg, std::string_view source, std::size_t line_no,
                const std::string& key, double value) {
  const bool is_prior = key.rfind("pi_", 0) == 0;
  if (is_prior && !(value >= 0.0 && value <= 1.0))
    config_fail(source, line_no, key + " out of range [0, 1]: " + std::to_string(value));
  if (!is_prior && value < 0.0)
    config_fail(source, line_no, key + " must be nonnegative: " + std::to_string(value));

  std::optional<double>* slot = nullptr;
  if (key == "c_miss_asv") slot = &cfg.c_miss_asv;
  else if (key == "c_fa_asv") slot = &cfg.c_fa_asv;
  else if (key == "c_miss_cm") slot = &cfg.c_miss_cm;
  else if (key == "c_fa_cm") slot = &cfg.c_fa_cm;
  else if (key == "pi_spoof") slot = &cfg.pi_spoof;
  else if (key == "pi_tar") slot = &cfg.pi_tar;
  else if (key == "pi_non") slot = &cfg.pi_non;
  else config_fail(source, line_no, "unknown key '" + key + "'");
  if (slot->has_value()) config_fail(source, line_no, "duplicate key '" + key + "'");
  *slot = value;
}

}  // namespace

CostConfig parse_cost_config(std::istream& in, std::string_view source_name) {
  CostConfig cfg;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string stripped;
    stripped.reserve(line.size());
    for (char c : line)
      if (c != '\r') stripped.push_back(c);
    const auto first = stripped.find_first_not_of(" \t");
    if (first == std::string::npos || stripped[first] == '#') continue;

    std::replace(stripped.begin(), stripped.end(), '=', ' ');
    std::istringstream fields(stripped);
    std::string key, value, extra;
    fields >> key >> value;
    if (key.empty() || value.empty() || (fields >> extra))
      config_fail(source_name, line_no, "expected 'key = value'");

    double parsed = 0.0;
    const auto [ptr, ec] =
        std::from_chars(value.data(), value.data() + value.size(), parsed);
    if (ec != std::errc() || ptr != value.data() + value.size() || !std::isfinite(parsed))
      config_fail(source_name, line_no, "unparsable value for '" + key + "': " + value);
    assign_key(cfg, source_name, line_no, key, parsed);
  }
  return cfg;
}

CostConfig parse_cost_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file '" + path.string() + "'");
  return parse_cost_config(in, path.string());
}

CostModel resolve_cost_model(const CostConfig& base, const CostConfig& overrides) {
  auto pick = [](const std::optional<double>& over, const std::optional<double>& from,
                 double fallback) { return over.value_or(from.value_or(fallback)); };
  auto pick_opt = [](const std::optional<double>& over, const std::optional<double>& from) {
    return over.has_value() ? over : from;
  };

  CostModel model;
  model.c_miss_asv = pick(overrides.c_miss_asv, base.c_miss_asv, 1.0);
  model.c_fa_asv = pick(overrides.c_fa_asv, base.c_fa_asv, 10.0);
  model.c_miss_cm = pick(overrides.c_miss_cm, base.c_miss_cm, 1.0);
  model.c_fa_cm = pick(overrides.c_fa_cm, base.c_fa_cm, 10.0);

  const auto pi_tar = pick_opt(overrides.pi_tar, base.pi_tar);
  const auto pi_non = pick_opt(overrides.pi_non, base.pi_non);
  const auto pi_spoof = pick_opt(overrides.pi_spoof, base.pi_spoof);
  if (pi_tar.has_value() || pi_non.has_value()) {
    if (!pi_tar.has_value() || !pi_non.has_value() || !pi_spoof.has_value())
      throw ValidationError(
          "explicit priors need all of pi_tar, pi_non, pi_spoof");
    model.priors = PriorTriple::validated(*pi_tar, *pi_non, *pi_spoof);
  } else if (pi_spoof.has_value()) {
    model.priors = banking_priors(*pi_spoof);
  } else {
    throw ValidationError("no priors configured: set pi_spoof or pi_tar/pi_non/pi_spoof");
  }
  validate(model);
  return model;
}

}  // namespace tandem
