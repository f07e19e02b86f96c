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

#ifndef TANDEM_TRIAL_DATA_HPP_
#define TANDEM_TRIAL_DATA_HPP_

#include <Eigen/Core>

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tandem/error.hpp"

namespace tandem {

// The three mutually exclusive trial classes. "Human" (bona fide) is the
// derived union of Target and Nontarget, never a stored fourth label.
enum class TrialLabel { Target, Nontarget, Spoof };

// Whether a score set came from a speaker verifier (target vs nontarget
// discrimination) or a spoofing countermeasure (human vs spoof).
enum class ScoreKind { AsvScores, CmScores };

struct TrialRecord {
  std::string trial_id;
  double score = 0.0;
  TrialLabel label = TrialLabel::Target;

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

// An immutable, validated collection of scored trials. Construction checks
// that scores are finite, trial ids are non-empty and unique, and that the
// trial classes required by the set kind are non-empty (ASV sets need
// targets and nontargets, CM sets need humans and spoofs). Once built a
// ScoreSet never changes, so it is safe to share across threads.
class ScoreSet {
 public:
  static ScoreSet make(std::vector<TrialRecord> records, ScoreKind kind);

  ScoreKind kind() const { return kind_; }
  const std::vector<TrialRecord>& records() const { return records_; }
  Eigen::Index size() const { return static_cast<Eigen::Index>(records_.size()); }

  Eigen::Index count(TrialLabel label) const;
  Eigen::Index human_count() const {
    return count(TrialLabel::Target) + count(TrialLabel::Nontarget);
  }

  // Scores of one label class, in record order. May be empty.
  const Eigen::ArrayXd& scores(TrialLabel label) const;

  // Target and nontarget scores pooled, in record order.
  const Eigen::ArrayXd& human_scores() const { return human_; }

  friend bool operator==(const ScoreSet& a, const ScoreSet& b) {
    return a.kind_ == b.kind_ && a.records_ == b.records_;
  }

 private:
  ScoreSet() = default;

  std::vector<TrialRecord> records_;
  ScoreKind kind_ = ScoreKind::AsvScores;
  Eigen::ArrayXd by_label_[3];
  Eigen::ArrayXd human_;
};

inline const Eigen::ArrayXd& subset_by_label(const ScoreSet& set, TrialLabel label) {
  return set.scores(label);
}

// Canonical lowercase label token ("target", "nontarget", "spoof").
std::string_view to_string(TrialLabel label);

// Case-insensitive label parse. CM score files additionally accept
// "bonafide" and "human" as aliases stored as Target, since CM error rates
// never distinguish targets from nontargets. Returns nullopt for unknown
// tokens.
std::optional<TrialLabel> parse_label(std::string_view token, ScoreKind kind);

// Score file format: one `<trial_id> <score> <label>` record per line,
// whitespace separated; lines whose first non-blank character is '#' are
// comments. Scores accept decimal or scientific notation and must be finite.
ScoreSet parse_scores(std::istream& in, ScoreKind kind, std::string_view source_name);
ScoreSet parse_score_file(const std::filesystem::path& path, ScoreKind kind);

// Writes the canonical form: tab separators, lowercase labels, shortest
// decimal representation that parses back to the identical double.
void write_scores(const ScoreSet& set, std::ostream& out);
void write_score_file(const ScoreSet& set, const std::filesystem::path& path);

}  // namespace tandem

#endif  // TANDEM_TRIAL_DATA_HPP_
