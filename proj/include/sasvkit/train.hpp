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
#include <vector>

#include "sasvkit/encoder.hpp"

namespace sasv {

struct ErsaState;

struct TrainConfig {
  double lambda = 1.0;          // OCCL weight
  std::size_t batch_size = 64;  // >= 2 whenever lambda > 0
  std::size_t epochs = 100;
  double learning_rate = 0.05;
  double lr_decay = 0.01;  // lr at epoch e: learning_rate / (1 + lr_decay e)
  std::uint64_t seed = 0;
  Eigen::Index hidden = 16;
  Eigen::Index d_emb = 4;
  double init_scale = 0.5;
};

struct TrainTrace {
  std::vector<double> epoch_loss;  // mean per-sample loss, one entry per epoch
};

/// Minibatch gradient descent on the combined loss. Deterministic given the
/// seed: fixed shuffling, fixed batching, analytic gradients. Throws on
/// divergence (non-finite loss).
ToyEncoder train(const Dataset &dataset, const TrainConfig &config,
                 TrainTrace *trace = nullptr);
void train_in_place(ToyEncoder &encoder, const Dataset &dataset,
                    const TrainConfig &config, TrainTrace *trace = nullptr);

namespace detail {
/// Shared SGD loop; state != nullptr enables ERSA augmentation and center
/// bookkeeping.
void run_sgd(ToyEncoder &encoder, const Dataset &dataset,
             const TrainConfig &config, ErsaState *state, TrainTrace *trace);
}  // namespace detail

}  // namespace sasv
