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

#include <doctest.h>

#include <sstream>

#include "sasvkit/rng.hpp"
#include "sasvkit/trials.hpp"

using namespace sasv;

namespace {
std::vector<Trial> parse_trials(const std::string &text) {
  std::istringstream in(text);
  return parse_trial_list(in);
}
ScoreSet parse_scores(const std::string &text, const std::string &name = "s") {
  std::istringstream in(text);
  return parse_score_file(in, name);
}
}  // namespace

TEST_CASE("trial list: single target line") {
  auto trials = parse_trials("s1 u1 target\n");
  REQUIRE(trials.size() == 1);
  CHECK(trials[0].enroll_id == "s1");
  CHECK(trials[0].test_id == "u1");
  CHECK(trials[0].label == TrialLabel::Target());
}

TEST_CASE("trial list: spoof type annotation") {
  auto trials = parse_trials("s1 u1 spoof:A07\n");
  REQUIRE(trials.size() == 1);
  CHECK(trials[0].label.kind == LabelKind::kSpoof);
  CHECK(trials[0].label.spoof_type == "A07");
}

TEST_CASE("trial list: bare spoof token has empty type") {
  auto trials = parse_trials("s1 u1 spoof\n");
  CHECK(trials[0].label == TrialLabel::Spoof());
}

TEST_CASE("trial list: duplicate key is an error") {
  CHECK_THROWS_AS(parse_trials("s1 u1 target\ns1 u1 nontarget\n"), ParseError);
}

TEST_CASE("trial list: malformed lines carry the line number") {
  try {
    parse_trials("s1 u1 target\ns2 u2\n");
    FAIL("expected ParseError");
  } catch (const ParseError &e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_trials("s1 u1 bogus\n"), ParseError);
  CHECK_THROWS_AS(parse_trials("s1 u1 spoof:\n"), ParseError);
  CHECK_THROWS_AS(parse_trials("a b c d\n"), ParseError);
}

TEST_CASE("trial list: blank lines are skipped") {
  auto trials = parse_trials("\ns1 u1 target\n\n\ns2 u2 nontarget\n");
  CHECK(trials.size() == 2);
}

TEST_CASE("score file: basic parsing") {
  auto set = parse_scores("s1 u1 0.93\n");
  CHECK(set.entries.at({"s1", "u1"}) == doctest::Approx(0.93));
}

TEST_CASE("score file: scientific notation and negatives") {
  auto set = parse_scores("s1 u1 1e-3\ns2 u2 -4.5\n");
  REQUIRE(set.entries.size() == 2);
  CHECK(set.entries.at({"s1", "u1"}) == doctest::Approx(1e-3));
  CHECK(set.entries.at({"s2", "u2"}) == doctest::Approx(-4.5));
}

TEST_CASE("score file: non-numeric score reports line 1") {
  try {
    parse_scores("s1 u1 abc\n");
    FAIL("expected ParseError");
  } catch (const ParseError &e) {
    CHECK(e.line() == 1);
  }
}

TEST_CASE("score file: duplicate key and non-finite score are errors") {
  CHECK_THROWS_AS(parse_scores("s1 u1 1\ns1 u1 2\n"), ParseError);
  CHECK_THROWS_AS(parse_scores("s1 u1 inf\n"), ParseError);
  CHECK_THROWS_AS(parse_scores("s1 u1 nan\n"), ParseError);
}

TEST_CASE("join: matching trial and score") {
  auto trials = parse_trials("s1 u1 target\n");
  auto result = join(trials, {parse_scores("s1 u1 0.5\n")});
  CHECK(result.warnings.empty());
  CHECK(result.data.scores(0, 0) == doctest::Approx(0.5));
}

TEST_CASE("join: missing score is an error listing the key") {
  auto trials = parse_trials("s1 u1 target\ns2 u2 nontarget\n");
  try {
    join(trials, {parse_scores("s1 u1 0.5\n")});
    FAIL("expected error");
  } catch (const std::runtime_error &e) {
    CHECK(std::string(e.what()).find("s2") != std::string::npos);
  }
}

TEST_CASE("join: missing-score error lists at most 10 keys") {
  std::ostringstream trials_text;
  for (int i = 0; i < 25; ++i) trials_text << "s" << i << " u" << i << " target\n";
  auto trials = parse_trials(trials_text.str());
  try {
    join(trials, {parse_scores("s0 u0 1.0\n")});
    FAIL("expected error");
  } catch (const std::runtime_error &e) {
    std::string what = e.what();
    std::size_t count = 0, at = 0;
    while ((at = what.find('(', at)) != std::string::npos) ++count, ++at;
    CHECK(count == 10);
  }
}

TEST_CASE("join: extra entry is a warning, not an error") {
  auto trials = parse_trials("s1 u1 target\n");
  auto result = join(trials, {parse_scores("s1 u1 0.5\ns9 u9 0.1\n")});
  REQUIRE(result.warnings.size() == 1);
  CHECK(result.warnings[0].find("s9") != std::string::npos);
  CHECK(result.data.trials.size() == 1);
}

TEST_CASE("round-trip: serialize then reparse yields identical trials") {
  DetRng rng({42});
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<Trial> trials;
    std::size_t n = 1 + rng.below(30);
    for (std::size_t i = 0; i < n; ++i) {
      Trial t;
      t.enroll_id = "spk" + std::to_string(i);
      t.test_id = "utt" + std::to_string(rng.below(1000)) + "_" +
                  std::to_string(i);
      switch (rng.below(4)) {
        case 0: t.label = TrialLabel::Target(); break;
        case 1: t.label = TrialLabel::Nontarget(); break;
        case 2: t.label = TrialLabel::Spoof(); break;
        default:
          t.label = TrialLabel::Spoof("A0" + std::to_string(rng.below(9) + 1));
      }
      trials.push_back(std::move(t));
    }
    std::ostringstream out;
    write_trial_list(out, trials);
    CHECK(parse_trials(out.str()) == trials);
  }
}

TEST_CASE("join projection returns exactly the per-system scores") {
  DetRng rng({7});
  auto trials = parse_trials("a x target\nb y nontarget\nc z spoof:A01\n");
  std::vector<ScoreSet> sets(3);
  for (std::size_t k = 0; k < sets.size(); ++k) {
    sets[k].system_name = "sys" + std::to_string(k);
    for (const auto &t : trials)
      sets[k].entries[{t.enroll_id, t.test_id}] = rng.normal();
  }
  auto result = join(trials, sets);
  for (std::size_t k = 0; k < sets.size(); ++k) {
    Vector col = result.data.column("sys" + std::to_string(k));
    for (std::size_t i = 0; i < trials.size(); ++i)
      CHECK(col[static_cast<Eigen::Index>(i)] ==
            sets[k].entries.at({trials[i].enroll_id, trials[i].test_id}));
  }
}

TEST_CASE("score file round-trip preserves full double precision") {
  ScoreSet set;
  set.system_name = "s";
  DetRng rng({99});
  for (int i = 0; i < 50; ++i)
    set.entries[{"e" + std::to_string(i), "t"}] = rng.normal() * 1e3;
  std::ostringstream out;
  write_score_file(out, set);
  auto back = parse_scores(out.str());
  for (const auto &[key, score] : set.entries)
    CHECK(back.entries.at(key) == score);
}
