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

#include "sasvkit/cascade.hpp"

#include <algorithm>

namespace sasv {

double dev_threshold(const ScoredTrials &dev_data, Eigen::Index column,
                     GateTask task) {
  std::vector<double> pos, neg;
  for (std::size_t i = 0; i < dev_data.trials.size(); ++i) {
    double s = dev_data.scores(static_cast<Eigen::Index>(i), column);
    switch (dev_data.trials[i].label.kind) {
      case LabelKind::kTarget:
        pos.push_back(s);
        break;
      case LabelKind::kNontarget:
        if (task == GateTask::kSv)
          neg.push_back(s);
        else
          pos.push_back(s);  // nontarget speech is still bonafide
        break;
      case LabelKind::kSpoof:
        if (task == GateTask::kCm) neg.push_back(s);
        break;
    }
  }
  return compute_eer(pos, neg).threshold;
}

double dev_min_score(const ScoreSet &dev_scores) {
  if (dev_scores.entries.empty())
    throw std::invalid_argument("empty development score set");
  double min = dev_scores.entries.begin()->second;
  for (const auto &[key, s] : dev_scores.entries) min = std::min(min, s);
  return min;
}

ScoreSet run_cascade(const CascadeConfig &config, const ScoreSet &first,
                     const ScoreSet &second) {
  if (first.entries.size() != second.entries.size())
    throw std::invalid_argument("stage-1 and stage-2 key sets differ in size");
  ScoreSet out;
  out.system_name = config.order == CascadeOrder::kAsvThenCm
                        ? "cascade-asv-cm"
                        : "cascade-cm-asv";
  auto it2 = second.entries.begin();
  for (const auto &[key, gate_score] : first.entries) {
    if (it2->first != key)
      throw std::invalid_argument("stage-1 and stage-2 key sets differ at (" +
                                  key.first + ", " + key.second + ")");
    out.entries.emplace(
        key, gate_score >= config.threshold ? it2->second : config.epsilon);
    ++it2;
  }
  return out;
}

}  // namespace sasv
