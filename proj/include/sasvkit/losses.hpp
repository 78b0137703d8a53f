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

#include "sasvkit/encoder.hpp"
#include "sasvkit/types.hpp"

namespace sasv {

inline constexpr double kProbClamp = 1e-12;

/// Sum of -(y log p + (1-y) log(1-p)) with y = 1 for bonafide.
/// Probabilities are clamped into [1e-12, 1 - 1e-12] before the logs.
double bce_loss(const std::vector<double> &probabilities,
                const std::vector<bool> &bonafide);

/// One-class confusion loss: sum over ordered pairs i != j of
/// ||e_i - e_j||^2 (each unordered pair counted twice). 0 or 1 vectors
/// give loss 0.
double occl_loss(const std::vector<Vector> &bonafide_embeddings);

/// BCE over the whole batch plus lambda times the OCCL over the batch's
/// bonafide embeddings.
double combined_loss(const ToyEncoder &encoder, const Dataset &batch,
                     double lambda);

/// Gradient container mirroring the trainable encoder blocks (the aux path
/// is inference-only and excluded).
struct EncoderGrad {
  Matrix w1;
  Vector b1;
  Matrix w2;
  Vector b2;
  Vector head_w;
  double head_b = 0.0;

  static EncoderGrad zeros_like(const ToyEncoder &encoder);
  void axpy_into(ToyEncoder &encoder, double step) const;
};

/// Analytic gradient of combined_loss; returns the loss value.
double combined_loss_grad(const ToyEncoder &encoder, const Dataset &batch,
                          double lambda, EncoderGrad &grad);

/// Accumulates the BCE gradient of one embedding fed directly to the
/// classifier head (ERSA-generated samples bypass the encoder). Returns
/// the sample's loss contribution.
double head_bce_grad(const ToyEncoder &encoder, const Vector &embedding,
                     bool bonafide, EncoderGrad &grad);

/// Max over parameters of the relative error between the analytic gradient
/// of combined_loss and central finite differences (step 1e-5).
double gradient_check(const ToyEncoder &encoder, const Dataset &batch,
                      double lambda);

}  // namespace sasv
