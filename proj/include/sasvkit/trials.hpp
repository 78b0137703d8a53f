// Copyright 2026  sasvkit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sasvkit/types.hpp"

namespace sasv {

enum class LabelKind { kTarget, kNontarget, kSpoof };

/// Ground-truth label of a trial. spoof_type is non-empty iff kind == kSpoof
/// and the protocol line carried a "spoof:<type>" annotation; a bare "spoof"
/// token yields an empty spoof_type.
struct TrialLabel {
  LabelKind kind = LabelKind::kTarget;
  std::string spoof_type;

  bool operator==(const TrialLabel &) const = default;

  static TrialLabel Target() { return {LabelKind::kTarget, {}}; }
  static TrialLabel Nontarget() { return {LabelKind::kNontarget, {}}; }
  static TrialLabel Spoof(std::string type = {}) {
    return {LabelKind::kSpoof, std::move(type)};
  }
};

struct Trial {
  std::string enroll_id;
  std::string test_id;
  TrialLabel label;

  bool operator==(const Trial &) const = default;
};

using TrialKey = std::pair<std::string, std::string>;  // (enroll_id, test_id)

/// One system's scores, keyed by trial. Higher = more target-like /
/// more bonafide-like. All scores are finite.
struct ScoreSet {
  std::string system_name;
  std::map<TrialKey, double> entries;
};

/// Trials joined with one score column per system. scores is
/// n_trials x n_systems, row order follows trials.
struct ScoredTrials {
  std::vector<Trial> trials;
  std::vector<std::string> system_names;
  Matrix scores;

  Eigen::Index column_index(const std::string &system_name) const;
  Vector column(Eigen::Index k) const { return scores.col(k); }
  Vector column(const std::string &system_name) const {
    return scores.col(column_index(system_name));
  }
};

struct JoinResult {
  ScoredTrials data;
  std::vector<std::string> warnings;  // one per extra score entry
};

std::vector<Trial> parse_trial_list(std::istream &in);
ScoreSet parse_score_file(std::istream &in, const std::string &system_name);

/// Joins trials with score columns. Missing entries raise ParseError
/// listing up to 10 missing keys per system; extra entries become warnings.
JoinResult join(const std::vector<Trial> &trials,
                const std::vector<ScoreSet> &scoresets);

std::string format_label(const TrialLabel &label);
void write_trial_list(std::ostream &out, const std::vector<Trial> &trials);
void write_score_file(std::ostream &out, const ScoreSet &scores);
/// Writes scores in trial order (the order produced by the pipeline).
void write_score_file(std::ostream &out, const std::vector<Trial> &trials,
                      const ScoreSet &scores);

}  // namespace sasv
