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

#include "sasvkit/trials.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace sasv {

namespace {

std::vector<std::string> split_fields(const std::string &line) {
  std::vector<std::string> fields;
  std::istringstream iss(line);
  std::string tok;
  while (iss >> tok) fields.push_back(tok);
  return fields;
}

TrialLabel parse_label(const std::string &token, std::size_t line_no) {
  if (token == "target") return TrialLabel::Target();
  if (token == "nontarget") return TrialLabel::Nontarget();
  if (token == "spoof") return TrialLabel::Spoof();
  if (token.rfind("spoof:", 0) == 0) {
    std::string type = token.substr(6);
    if (type.empty())
      throw ParseError(line_no, "empty spoof type in label token '" + token + "'");
    return TrialLabel::Spoof(type);
  }
  throw ParseError(line_no, "unknown label token '" + token + "'");
}

double parse_score(const std::string &token, std::size_t line_no) {
  double value = 0.0;
  auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    throw ParseError(line_no, "non-numeric score '" + token + "'");
  if (!std::isfinite(value))
    throw ParseError(line_no, "non-finite score '" + token + "'");
  return value;
}

}  // namespace

std::vector<Trial> parse_trial_list(std::istream &in) {
  std::vector<Trial> trials;
  std::set<TrialKey> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto fields = split_fields(line);
    if (fields.empty()) continue;
    if (fields.size() != 3)
      throw ParseError(line_no, "expected 3 fields, got " +
                                    std::to_string(fields.size()));
    Trial t{fields[0], fields[1], parse_label(fields[2], line_no)};
    if (!seen.insert({t.enroll_id, t.test_id}).second)
      throw ParseError(line_no, "duplicate trial (" + t.enroll_id + ", " +
                                    t.test_id + ")");
    trials.push_back(std::move(t));
  }
  return trials;
}

ScoreSet parse_score_file(std::istream &in, const std::string &system_name) {
  ScoreSet set;
  set.system_name = system_name;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto fields = split_fields(line);
    if (fields.empty()) continue;
    if (fields.size() != 3)
      throw ParseError(line_no, "expected 3 fields, got " +
                                    std::to_string(fields.size()));
    TrialKey key{fields[0], fields[1]};
    double score = parse_score(fields[2], line_no);
    if (!set.entries.emplace(key, score).second)
      throw ParseError(line_no, "duplicate score for (" + key.first + ", " +
                                    key.second + ")");
  }
  return set;
}

Eigen::Index ScoredTrials::column_index(const std::string &system_name) const {
  for (std::size_t k = 0; k < system_names.size(); ++k)
    if (system_names[k] == system_name) return static_cast<Eigen::Index>(k);
  throw std::out_of_range("no score column named '" + system_name + "'");
}

JoinResult join(const std::vector<Trial> &trials,
                const std::vector<ScoreSet> &scoresets) {
  JoinResult result;
  result.data.trials = trials;
  result.data.scores.resize(static_cast<Eigen::Index>(trials.size()),
                            static_cast<Eigen::Index>(scoresets.size()));
  std::set<TrialKey> keys;
  for (const auto &t : trials) keys.insert({t.enroll_id, t.test_id});

  for (std::size_t k = 0; k < scoresets.size(); ++k) {
    const auto &set = scoresets[k];
    result.data.system_names.push_back(set.system_name);
    std::vector<TrialKey> missing;
    for (std::size_t i = 0; i < trials.size(); ++i) {
      TrialKey key{trials[i].enroll_id, trials[i].test_id};
      auto it = set.entries.find(key);
      if (it == set.entries.end()) {
        if (missing.size() < 10) missing.push_back(key);
      } else {
        result.data.scores(static_cast<Eigen::Index>(i),
                           static_cast<Eigen::Index>(k)) = it->second;
      }
    }
    if (!missing.empty()) {
      std::ostringstream msg;
      msg << "system '" << set.system_name << "' is missing scores for";
      for (const auto &key : missing)
        msg << " (" << key.first << ", " << key.second << ")";
      throw std::runtime_error(msg.str());
    }
    for (const auto &[key, score] : set.entries) {
      if (!keys.count(key))
        result.warnings.push_back("system '" + set.system_name +
                                  "': extra score for (" + key.first + ", " +
                                  key.second + ")");
    }
  }
  return result;
}

std::string format_label(const TrialLabel &label) {
  switch (label.kind) {
    case LabelKind::kTarget:
      return "target";
    case LabelKind::kNontarget:
      return "nontarget";
    case LabelKind::kSpoof:
      return label.spoof_type.empty() ? "spoof" : "spoof:" + label.spoof_type;
  }
  return {};
}

void write_trial_list(std::ostream &out, const std::vector<Trial> &trials) {
  for (const auto &t : trials)
    out << t.enroll_id << ' ' << t.test_id << ' ' << format_label(t.label)
        << '\n';
}

namespace {
void write_score_line(std::ostream &out, const TrialKey &key, double score) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", score);
  out << key.first << ' ' << key.second << ' ' << buf << '\n';
}
}  // namespace

void write_score_file(std::ostream &out, const ScoreSet &scores) {
  for (const auto &[key, score] : scores.entries)
    write_score_line(out, key, score);
}

void write_score_file(std::ostream &out, const std::vector<Trial> &trials,
                      const ScoreSet &scores) {
  for (const auto &t : trials) {
    TrialKey key{t.enroll_id, t.test_id};
    write_score_line(out, key, scores.entries.at(key));
  }
}

}  // namespace sasv
