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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sasvkit/encoder.hpp"
#include "sasvkit/trials.hpp"

namespace sasv {

/// Synthetic Gaussian-cluster generator. Cluster centers sit on coordinate
/// axes at distance cluster_radius from the origin (bonafide on +e0, spoof
/// type k on -e_{k mod dim}), so the classes are linearly separable when
/// cluster_spread << cluster_radius.
struct SynthConfig {
  std::uint64_t seed = 0;
  Eigen::Index dim = 8;
  std::size_t spoof_types = 3;
  std::size_t per_class = 100;  // records per cluster
  double cluster_spread = 0.5;
  double cluster_radius = 3.0;
  // SV score distributions for trial fixtures: target-speaker trials
  // (target and spoof) draw from N(+sv_margin, sv_spread^2), nontarget
  // trials from N(-sv_margin, sv_spread^2).
  double sv_margin = 2.0;
  double sv_spread = 0.5;
};

std::string spoof_type_name(std::size_t k);  // "A01", "A02", ...

Dataset make_synth_dataset(const SynthConfig &config);

/// One evaluation split: trials, synthetic SV scores, and a feature vector
/// per test utterance (bonafide cluster for target/nontarget trials, the
/// spoof type's cluster for spoof trials).
struct SynthSplit {
  std::vector<Trial> trials;
  ScoreSet sv_scores;
  std::vector<std::pair<std::string, Vector>> features;  // test_id -> features
};

SynthSplit make_synth_trials(const SynthConfig &config,
                             const std::string &split_name,
                             std::size_t n_trials);

/// Features file: one "<utt_id> <f1> ... <fd>" record per line.
std::vector<std::pair<std::string, Vector>> parse_features(std::istream &in);
void write_features(std::ostream &out,
                    const std::vector<std::pair<std::string, Vector>> &features);

}  // namespace sasv
