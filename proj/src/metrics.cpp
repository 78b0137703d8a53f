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

#include "sasvkit/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace sasv {

namespace {

void check_finite(const std::vector<double> &scores, const char *name) {
  for (double s : scores)
    if (!std::isfinite(s))
      throw std::invalid_argument(std::string("non-finite score in ") + name +
                                  " class");
}

std::vector<double> class_scores(const ScoredTrials &data, Eigen::Index column,
                                 bool take_target, bool take_nontarget,
                                 bool take_spoof) {
  std::vector<double> out;
  for (std::size_t i = 0; i < data.trials.size(); ++i) {
    LabelKind kind = data.trials[i].label.kind;
    bool take = (kind == LabelKind::kTarget && take_target) ||
                (kind == LabelKind::kNontarget && take_nontarget) ||
                (kind == LabelKind::kSpoof && take_spoof);
    if (take) out.push_back(data.scores(static_cast<Eigen::Index>(i), column));
  }
  return out;
}

}  // namespace

EerResult compute_eer(const std::vector<double> &positive,
                      const std::vector<double> &negative) {
  if (positive.empty()) throw std::invalid_argument("empty positive class");
  if (negative.empty()) throw std::invalid_argument("empty negative class");
  check_finite(positive, "positive");
  check_finite(negative, "negative");

  std::vector<double> pos = positive, neg = negative;
  std::sort(pos.begin(), pos.end());
  std::sort(neg.begin(), neg.end());

  std::vector<double> thresholds;
  thresholds.reserve(pos.size() + neg.size());
  std::merge(pos.begin(), pos.end(), neg.begin(), neg.end(),
             std::back_inserter(thresholds));
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()),
                   thresholds.end());

  const double np = static_cast<double>(pos.size());
  const double nn = static_cast<double>(neg.size());

  EerResult result;
  result.n_positive = pos.size();
  result.n_negative = neg.size();

  // Walk the operating points t_1 < ... < t_m plus the terminal
  // reject-everything point (FAR 0, FRR 1), which reports t_m as its score.
  double prev_far = 1.0, prev_frr = 0.0, prev_t = thresholds.front();
  std::size_t ip = 0, in = 0;  // pos/neg strictly below the current threshold
  const std::size_t m = thresholds.size();
  for (std::size_t k = 0; k <= m; ++k) {
    double far, frr, t;
    if (k < m) {
      t = thresholds[k];
      while (ip < pos.size() && pos[ip] < t) ++ip;
      while (in < neg.size() && neg[in] < t) ++in;
      frr = static_cast<double>(ip) / np;
      far = static_cast<double>(neg.size() - in) / nn;
    } else {
      t = thresholds.back();
      frr = 1.0;
      far = 0.0;
    }
    double d = far - frr;
    if (d <= 0.0) {
      if (d == 0.0) {
        result.eer = far;
        result.threshold = t;
      } else {
        double prev_d = prev_far - prev_frr;
        double alpha = prev_d / (prev_d - d);
        result.eer = prev_far + alpha * (far - prev_far);
        result.threshold = prev_t + alpha * (t - prev_t);
      }
      return result;
    }
    prev_far = far;
    prev_frr = frr;
    prev_t = t;
  }
  // Unreachable: the terminal point always has FAR - FRR = -1.
  throw std::logic_error("no FAR/FRR crossing found");
}

EerResult sv_eer(const ScoredTrials &data, Eigen::Index column) {
  return compute_eer(class_scores(data, column, true, false, false),
                     class_scores(data, column, false, true, false));
}

EerResult spf_eer(const ScoredTrials &data, Eigen::Index column) {
  return compute_eer(class_scores(data, column, true, false, false),
                     class_scores(data, column, false, false, true));
}

EerResult sasv_eer(const ScoredTrials &data, Eigen::Index column) {
  return compute_eer(class_scores(data, column, true, false, false),
                     class_scores(data, column, false, true, true));
}

}  // namespace sasv
