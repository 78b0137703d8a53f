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

#include "sasvkit/losses.hpp"

#include <algorithm>
#include <cmath>

namespace sasv {

namespace {

double clamp_prob(double p) {
  return std::clamp(p, kProbClamp, 1.0 - kProbClamp);
}

double bce_term(double p, bool bonafide) {
  double pc = clamp_prob(p);
  return bonafide ? -std::log(pc) : -std::log(1.0 - pc);
}

// d(bce)/d(logit) through the sigmoid; zero where the probability is
// clamped (the clamped loss is locally constant there).
double bce_logit_grad(double p, bool bonafide) {
  if (p <= kProbClamp || p >= 1.0 - kProbClamp) return 0.0;
  return p - (bonafide ? 1.0 : 0.0);
}

}  // namespace

double bce_loss(const std::vector<double> &probabilities,
                const std::vector<bool> &bonafide) {
  if (probabilities.size() != bonafide.size())
    throw std::invalid_argument("probability/label count mismatch");
  double loss = 0.0;
  for (std::size_t i = 0; i < probabilities.size(); ++i)
    loss += bce_term(probabilities[i], bonafide[i]);
  return loss;
}

double occl_loss(const std::vector<Vector> &bonafide_embeddings) {
  const std::size_t n = bonafide_embeddings.size();
  if (n < 2) return 0.0;
  Vector mean = Vector::Zero(bonafide_embeddings[0].size());
  for (const auto &e : bonafide_embeddings) mean += e;
  mean /= static_cast<double>(n);
  // Ordered-pair double sum via the centroid identity:
  //   sum_{i != j} ||e_i - e_j||^2 = 2n sum_i ||e_i - mean||^2.
  double scatter = 0.0;
  for (const auto &e : bonafide_embeddings) scatter += (e - mean).squaredNorm();
  return 2.0 * static_cast<double>(n) * scatter;
}

double combined_loss(const ToyEncoder &encoder, const Dataset &batch,
                     double lambda) {
  double loss = 0.0;
  std::vector<Vector> bona;
  for (const auto &rec : batch) {
    ForwardResult r = forward(encoder, rec.features);
    loss += bce_term(r.probability, rec.bonafide);
    if (rec.bonafide) bona.push_back(std::move(r.embedding));
  }
  return loss + lambda * occl_loss(bona);
}

EncoderGrad EncoderGrad::zeros_like(const ToyEncoder &encoder) {
  EncoderGrad g;
  g.w1 = Matrix::Zero(encoder.w1.rows(), encoder.w1.cols());
  g.b1 = Vector::Zero(encoder.b1.size());
  g.w2 = Matrix::Zero(encoder.w2.rows(), encoder.w2.cols());
  g.b2 = Vector::Zero(encoder.b2.size());
  g.head_w = Vector::Zero(encoder.head_w.size());
  g.head_b = 0.0;
  return g;
}

void EncoderGrad::axpy_into(ToyEncoder &encoder, double step) const {
  encoder.w1 += step * w1;
  encoder.b1 += step * b1;
  encoder.w2 += step * w2;
  encoder.b2 += step * b2;
  encoder.head_w += step * head_w;
  encoder.head_b += step * head_b;
}

double combined_loss_grad(const ToyEncoder &encoder, const Dataset &batch,
                          double lambda, EncoderGrad &grad) {
  grad = EncoderGrad::zeros_like(encoder);
  const std::size_t n = batch.size();

  std::vector<Vector> h(n), e(n);
  std::vector<double> g_logit(n);
  double loss = 0.0;
  Vector bona_sum = Vector::Zero(encoder.d_emb());
  double n_bona = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    h[i] = (encoder.w1 * batch[i].features + encoder.b1).array().tanh();
    e[i] = encoder.w2 * h[i] + encoder.b2;
    double logit = encoder.head_w.dot(e[i]) + encoder.head_b;
    double p = 1.0 / (1.0 + std::exp(-logit));
    loss += bce_term(p, batch[i].bonafide);
    g_logit[i] = bce_logit_grad(p, batch[i].bonafide);
    if (batch[i].bonafide) {
      bona_sum += e[i];
      n_bona += 1.0;
    }
  }
  if (lambda != 0.0 && n_bona >= 2.0) {
    std::vector<Vector> bona;
    for (std::size_t i = 0; i < n; ++i)
      if (batch[i].bonafide) bona.push_back(e[i]);
    loss += lambda * occl_loss(bona);
  }

  for (std::size_t i = 0; i < n; ++i) {
    Vector de = g_logit[i] * encoder.head_w;
    if (lambda != 0.0 && batch[i].bonafide && n_bona >= 2.0)
      de += 4.0 * lambda * (n_bona * e[i] - bona_sum);
    grad.head_w += g_logit[i] * e[i];
    grad.head_b += g_logit[i];
    grad.w2 += de * h[i].transpose();
    grad.b2 += de;
    Vector dh_pre =
        (encoder.w2.transpose() * de).array() * (1.0 - h[i].array().square());
    grad.w1 += dh_pre * batch[i].features.transpose();
    grad.b1 += dh_pre;
  }
  return loss;
}

double head_bce_grad(const ToyEncoder &encoder, const Vector &embedding,
                     bool bonafide, EncoderGrad &grad) {
  double logit = encoder.head_w.dot(embedding) + encoder.head_b;
  double p = 1.0 / (1.0 + std::exp(-logit));
  double g = bce_logit_grad(p, bonafide);
  grad.head_w += g * embedding;
  grad.head_b += g;
  return bce_term(p, bonafide);
}

double gradient_check(const ToyEncoder &encoder, const Dataset &batch,
                      double lambda) {
  EncoderGrad grad;
  combined_loss_grad(encoder, batch, lambda, grad);

  ToyEncoder probe = encoder;
  Vector params = encoder.flatten();
  ToyEncoder g_as_encoder = encoder;  // reuse the flatten layout
  g_as_encoder.w1 = grad.w1;
  g_as_encoder.b1 = grad.b1;
  g_as_encoder.w2 = grad.w2;
  g_as_encoder.b2 = grad.b2;
  g_as_encoder.head_w = grad.head_w;
  g_as_encoder.head_b = grad.head_b;
  Vector analytic = g_as_encoder.flatten();

  constexpr double kStep = 1e-5;
  double max_err = 0.0;
  for (Eigen::Index k = 0; k < params.size(); ++k) {
    Vector p = params;
    p[k] = params[k] + kStep;
    probe.unflatten(p);
    double up = combined_loss(probe, batch, lambda);
    p[k] = params[k] - kStep;
    probe.unflatten(p);
    double down = combined_loss(probe, batch, lambda);
    double fd = (up - down) / (2.0 * kStep);
    double scale = std::max({1.0, std::abs(analytic[k]), std::abs(fd)});
    max_err = std::max(max_err, std::abs(analytic[k] - fd) / scale);
  }
  return max_err;
}

}  // namespace sasv
