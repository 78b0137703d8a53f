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

#include <map>
#include <string>
#include <vector>

#include "sasvkit/encoder.hpp"
#include "sasvkit/rng.hpp"
#include "sasvkit/train.hpp"

namespace sasv {

/// Class centers and spoof covariances driving embedding-level sampling.
/// Boundary centers are the midpoints between the bonafide center and each
/// spoof-type center; samples drawn around them are labeled spoof.
struct ErsaState {
  Vector bonafide_center;
  std::map<std::string, Vector> spoof_centers;
  std::map<std::string, Vector> boundary_centers;
  std::map<std::string, Matrix> spoof_covariances;
  std::size_t samples_per_center = 2;
  std::size_t update_period_epochs = 5;

  /// Re-derives boundary_centers as (bonafide_center + spoof_center) / 2.
  void refresh_boundaries();
};

struct GeneratedEmbedding {
  Vector embedding;
  std::string spoof_type;
};

/// Per-class mean embeddings over the whole dataset and per-spoof-type
/// sample covariances (Bessel-corrected, regularized by +1e-6 I; a type
/// with fewer than two samples gets 1e-6 I).
ErsaState compute_centers(const ToyEncoder &encoder, const Dataset &dataset);

/// samples_per_center draws per boundary center from N(center, covariance)
/// via the Cholesky factor, in center map order.
std::vector<GeneratedEmbedding> sample_ersa(const ErsaState &state,
                                            DetRng &rng);

/// Fine-tunes with ERSA augmentation: each minibatch is extended with
/// generated embeddings that feed the classifier head only (labeled spoof,
/// gradients restricted to head parameters). Boundary centers track a
/// running average of the class embeddings seen since the last full update;
/// centers and covariances are fully recomputed every update_period_epochs.
ToyEncoder finetune_ersa(const ToyEncoder &encoder, const Dataset &dataset,
                         ErsaState &state, const TrainConfig &config,
                         TrainTrace *trace = nullptr);

}  // namespace sasv
