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

#include "sasvkit/metrics.hpp"
#include "sasvkit/trials.hpp"

namespace sasv {

enum class CascadeOrder { kAsvThenCm, kCmThenAsv };

/// Two-stage pipeline: stage 1 accepts iff score >= threshold; rejected
/// trials receive the floor score epsilon instead of their stage-2 score.
struct CascadeConfig {
  CascadeOrder order = CascadeOrder::kAsvThenCm;
  double threshold = 0.0;
  double epsilon = 0.0;
};

/// Stage-1 gate task for the dev-set EER threshold. The SV gate scores
/// target vs nontarget; the CM gate scores bonafide (target + nontarget)
/// vs spoof.
enum class GateTask { kSv, kCm };

/// EER threshold of the stage-1 system on the development set.
double dev_threshold(const ScoredTrials &dev_data, Eigen::Index column,
                     GateTask task);

/// Minimum stage-2 score over the development set (the floor epsilon).
double dev_min_score(const ScoreSet &dev_scores);

/// Applies the gate. first and second must share one key set. Rejected
/// trials never read their stage-2 score.
ScoreSet run_cascade(const CascadeConfig &config, const ScoreSet &first,
                     const ScoreSet &second);

}  // namespace sasv
