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

#include <vector>

#include "sasvkit/trials.hpp"
#include "sasvkit/types.hpp"

namespace sasv {

struct EerResult {
  double eer = 0.0;        // in [0, 1]
  double threshold = 0.0;  // score where FAR = FRR under interpolation
  std::size_t n_positive = 0;
  std::size_t n_negative = 0;
};

/// Equal error rate with the convention: accept iff score >= threshold,
/// FRR(t) = fraction of positives < t, FAR(t) = fraction of negatives >= t.
///
/// The (FAR, FRR) step curve is evaluated at every distinct score; the EER
/// is the linear interpolation between the two adjacent operating points
/// where FAR - FRR changes sign. When the crossing sits exactly on an
/// operating point that point's score is the reported threshold. The EER
/// value depends only on score ranks.
EerResult compute_eer(const std::vector<double> &positive,
                      const std::vector<double> &negative);

/// Target vs nontarget; spoof trials ignored.
EerResult sv_eer(const ScoredTrials &data, Eigen::Index column);
/// Target vs spoof; nontarget trials ignored.
EerResult spf_eer(const ScoredTrials &data, Eigen::Index column);
/// Target vs pooled nontarget + spoof.
EerResult sasv_eer(const ScoredTrials &data, Eigen::Index column);

}  // namespace sasv
