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

#include "sasvkit/types.hpp"

namespace sasv {

/// One labeled feature vector of the toy embedding lab.
struct EmbeddingRecord {
  Vector features;
  bool bonafide = true;
  std::string spoof_type;  // non-empty iff !bonafide
};

using Dataset = std::vector<EmbeddingRecord>;

/// Small feed-forward encoder: tanh hidden layer, linear embedding layer,
/// affine classifier head producing one logit. An optional auxiliary path
/// (two affine layers over the concatenation of the embedding and an
/// external vector) supports joint embeddings.
struct ToyEncoder {
  Matrix w1;  // hidden x d_in
  Vector b1;
  Matrix w2;  // d_emb x hidden
  Vector b2;
  Vector head_w;  // d_emb
  double head_b = 0.0;

  // Aux path, present iff d_aux() > 0: aux_w1 is d_emb x (d_emb + d_aux),
  // aux_w2 is d_emb x d_emb. Both layers are purely affine.
  Matrix aux_w1;
  Vector aux_b1;
  Matrix aux_w2;
  Vector aux_b2;

  Eigen::Index d_in() const { return w1.cols(); }
  Eigen::Index hidden() const { return w1.rows(); }
  Eigen::Index d_emb() const { return w2.rows(); }
  Eigen::Index d_aux() const {
    return aux_w1.size() ? aux_w1.cols() - d_emb() : 0;
  }
  bool has_aux() const { return aux_w1.size() != 0; }

  std::size_t parameter_count() const;
  Vector flatten() const;
  void unflatten(const Vector &params);

  static ToyEncoder zeros(Eigen::Index d_in, Eigen::Index hidden,
                          Eigen::Index d_emb, Eigen::Index d_aux = 0);
  /// Deterministic N(0, scale^2) initialization.
  static ToyEncoder random(Eigen::Index d_in, Eigen::Index hidden,
                           Eigen::Index d_emb, std::uint64_t seed,
                           double scale = 0.5, Eigen::Index d_aux = 0);
};

struct ForwardResult {
  Vector embedding;
  double logit = 0.0;
  double probability = 0.5;
};

ForwardResult forward(const ToyEncoder &encoder, const Vector &features);
ForwardResult forward_with_aux(const ToyEncoder &encoder,
                               const Vector &features,
                               const Vector &aux_embedding);

/// Records with forward probability >= threshold.
Dataset select_bonafide_subset(const ToyEncoder &encoder,
                               const Dataset &dataset, double threshold);

Dataset parse_dataset(std::istream &in);
void write_dataset(std::ostream &out, const Dataset &dataset);

void write_encoder(std::ostream &out, const ToyEncoder &encoder);
ToyEncoder read_encoder(std::istream &in);

}  // namespace sasv
