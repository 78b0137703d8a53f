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

#include <functional>
#include <iosfwd>
#include <vector>

#include "sasvkit/trials.hpp"
#include "sasvkit/types.hpp"

namespace sasv {

/// Affine calibration/fusion model: fused score = weights . s + bias,
/// trained as a log-likelihood ratio under trained_prior.
struct FusionModel {
  double bias = 0.0;
  Vector weights;
  double trained_prior = 0.5;
};

struct CalibrationReport {
  std::size_t iterations = 0;
  double final_gradient_norm = 0.0;
  std::vector<double> objective_trace;  // objective after each accepted step
  bool hit_iteration_cap = false;
  bool separable = false;  // weight norm hit the cap
};

/// Which trial labels form the positive class for calibration training.
using PositiveRule = std::function<bool(const TrialLabel &)>;

inline bool target_positive(const TrialLabel &label) {
  return label.kind == LabelKind::kTarget;
}

/// s -> 1 / (1 + exp(-s)) per entry. Strictly increasing, so every
/// per-system EER is unchanged.
ScoreSet sigmoid_normalize(const ScoreSet &scores);

/// Per-trial sum of raw scores. All sets must share one key set.
ScoreSet fuse_sum(const std::vector<ScoreSet> &scoresets);

/// Per-trial product of sigmoid-normalized scores, multiplied left to right
/// in the given order.
ScoreSet fuse_product_sigmoid(const std::vector<ScoreSet> &scoresets);

/// Minimizes the prior-weighted logistic loss of the affine fused score
/// treated as an LLR:
///   C(w, b) = (pi / N+) sum_pos log(1 + exp(-(w.s + b) - logit pi))
///           + ((1 - pi) / N-) sum_neg log(1 + exp((w.s + b) + logit pi)).
/// Convex; stops at gradient norm <= 1e-8 or 10000 iterations, whichever
/// comes first. Separable data drives the weights toward infinity; training
/// stops at weight norm 1e4 and flags the report.
FusionModel fit_linear_calibration(const ScoredTrials &data,
                                   const PositiveRule &positive_rule,
                                   double prior,
                                   CalibrationReport *report = nullptr);

/// Per-trial w . s + bias.
ScoreSet apply_fusion_model(const FusionModel &model,
                            const std::vector<ScoreSet> &scoresets);

void write_fusion_model(std::ostream &out, const FusionModel &model);
FusionModel read_fusion_model(std::istream &in);

}  // namespace sasv
