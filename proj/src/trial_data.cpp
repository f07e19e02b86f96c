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

#include "tandem/trial_data.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

namespace tandem {

namespace {

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool is_blank(std::string_view line) {
  return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

bool is_comment(std::string_view line) {
  auto pos = line.find_first_not_of(" \t");
  return pos != std::string_view::npos && line[pos] == '#';
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

[[noreturn]] void fail_at(std::string_view source, std::size_t line_no, const std::string& msg) {
  std::ostringstream os;
  os << source << ":" << line_no << ": " << msg;
  throw ValidationError(os.str());
}

void check_class_cardinality(const ScoreSet& set, std::string_view source) {
  const auto where = std::string(source);
  if (set.kind() == ScoreKind::AsvScores) {
    if (set.count(TrialLabel::Target) < 1 || set.count(TrialLabel::Nontarget) < 1)
      throw ValidationError(where +
                            ": ASV score set needs at least one target and one nontarget trial");
  } else {
    if (set.human_count() < 1 || set.count(TrialLabel::Spoof) < 1)
      throw ValidationError(where +
                            ": CM score set needs at least one human and one spoof trial");
  }
}

}  // namespace

ScoreSet ScoreSet::make(std::vector<TrialRecord> records, ScoreKind kind) {
  std::unordered_set<std::string_view> seen;
  seen.reserve(records.size());
  Eigen::Index counts[3] = {0, 0, 0};
  for (const auto& rec : records) {
    if (rec.trial_id.empty()) throw ValidationError("trial with empty trial_id");
    if (!std::isfinite(rec.score))
      throw ValidationError("non-finite score for trial '" + rec.trial_id + "'");
    if (!seen.insert(rec.trial_id).second)
      throw ValidationError("duplicate trial_id '" + rec.trial_id + "'");
    ++counts[static_cast<int>(rec.label)];
  }

  ScoreSet set;
  set.kind_ = kind;
  for (int l = 0; l < 3; ++l) set.by_label_[l].resize(counts[l]);
  set.human_.resize(counts[0] + counts[1]);
  Eigen::Index fill[3] = {0, 0, 0};
  Eigen::Index human_fill = 0;
  for (const auto& rec : records) {
    const int l = static_cast<int>(rec.label);
    set.by_label_[l][fill[l]++] = rec.score;
    if (rec.label != TrialLabel::Spoof) set.human_[human_fill++] = rec.score;
  }
  set.records_ = std::move(records);
  check_class_cardinality(set, "score set");
  return set;
}

Eigen::Index ScoreSet::count(TrialLabel label) const {
  return by_label_[static_cast<int>(label)].size();
}

const Eigen::ArrayXd& ScoreSet::scores(TrialLabel label) const {
  return by_label_[static_cast<int>(label)];
}

std::string_view to_string(TrialLabel label) {
  switch (label) {
    case TrialLabel::Target: return "target";
    case TrialLabel::Nontarget: return "nontarget";
    case TrialLabel::Spoof: return "spoof";
  }
  return "?";
}

std::optional<TrialLabel> parse_label(std::string_view token, ScoreKind kind) {
  const std::string t = lowercase(token);
  if (t == "target") return TrialLabel::Target;
  if (t == "nontarget") return TrialLabel::Nontarget;
  if (t == "spoof") return TrialLabel::Spoof;
  if (kind == ScoreKind::CmScores && (t == "bonafide" || t == "human"))
    return TrialLabel::Target;
  return std::nullopt;
}

ScoreSet parse_scores(std::istream& in, ScoreKind kind, std::string_view source_name) {
  std::vector<TrialRecord> records;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line) || is_comment(line)) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 3)
      fail_at(source_name, line_no,
              "expected 3 fields <trial_id> <score> <label>, got " +
                  std::to_string(fields.size()));

    TrialRecord rec;
    rec.trial_id = std::string(fields[0]);

    double score = 0.0;
    const auto* first = fields[1].data();
    const auto* last = fields[1].data() + fields[1].size();
    const auto [ptr, ec] = std::from_chars(first, last, score);
    if (ec != std::errc() || ptr != last)
      fail_at(source_name, line_no, "unparsable score '" + std::string(fields[1]) + "'");
    if (!std::isfinite(score))
      fail_at(source_name, line_no, "non-finite score '" + std::string(fields[1]) + "'");
    rec.score = score;

    const auto label = parse_label(fields[2], kind);
    if (!label)
      fail_at(source_name, line_no, "unknown label '" + std::string(fields[2]) + "'");
    rec.label = *label;

    if (!seen.insert(rec.trial_id).second)
      fail_at(source_name, line_no, "duplicate trial_id '" + rec.trial_id + "'");
    records.push_back(std::move(rec));
  }
  if (records.empty())
    throw ValidationError(std::string(source_name) + ": no trial records");

  try {
    return ScoreSet::make(std::move(records), kind);
  } catch (const ValidationError& e) {
    throw ValidationError(std::string(source_name) + ": " + e.what());
  }
}

ScoreSet parse_score_file(const std::filesystem::path& path, ScoreKind kind) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open score file '" + path.string() + "'");
  return parse_scores(in, kind, path.string());
}

void write_scores(const ScoreSet& set, std::ostream& out) {
  char buf[64];
  for (const auto& rec : set.records()) {
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), rec.score);
    out << rec.trial_id << '\t';
    out.write(buf, ptr - buf);
    out << '\t' << to_string(rec.label) << '\n';
  }
}

void write_score_file(const ScoreSet& set, const std::filesystem::path& path) {
  std::ostringstream body;
  write_scores(set, body);
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open '" + path.string() + "' for writing");
  out << body.str();
  if (!out.good()) {
    out.close();
    std::error_code ec;
    std::filesystem::remove(path, ec);
    throw ValidationError("failed writing '" + path.string() + "'");
  }
}

}  // namespace tandem
