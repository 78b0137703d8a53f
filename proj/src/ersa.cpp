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

#include "sasvkit/ersa.hpp"

#include <Eigen/Cholesky>

namespace sasv {

namespace {
constexpr double kCovRegularizer = 1e-6;
}

void ErsaState::refresh_boundaries() {
  boundary_centers.clear();
  for (const auto &[type, center] : spoof_centers)
    boundary_centers[type] = 0.5 * (bonafide_center + center);
}

ErsaState compute_centers(const ToyEncoder &encoder, const Dataset &dataset) {
  std::map<std::string, std::vector<Vector>> by_type;
  std::vector<Vector> bona;
  for (const auto &rec : dataset) {
    Vector e = forward(encoder, rec.features).embedding;
    if (rec.bonafide)
      bona.push_back(std::move(e));
    else
      by_type[rec.spoof_type].push_back(std::move(e));
  }
  if (bona.empty())
    throw std::invalid_argument("dataset has no bonafide records");
  if (by_type.empty())
    throw std::invalid_argument("dataset has no spoof records");

  const Eigen::Index d = encoder.d_emb();
  ErsaState state;
  state.bonafide_center = Vector::Zero(d);
  for (const auto &e : bona) state.bonafide_center += e;
  state.bonafide_center /= static_cast<double>(bona.size());

  for (const auto &[type, embeddings] : by_type) {
    Vector mean = Vector::Zero(d);
    for (const auto &e : embeddings) mean += e;
    mean /= static_cast<double>(embeddings.size());
    Matrix cov = Matrix::Zero(d, d);
    if (embeddings.size() >= 2) {
      for (const auto &e : embeddings) {
        Vector c = e - mean;
        cov += c * c.transpose();
      }
      cov /= static_cast<double>(embeddings.size() - 1);
    }
    cov.diagonal().array() += kCovRegularizer;
    state.spoof_centers[type] = std::move(mean);
    state.spoof_covariances[type] = std::move(cov);
  }
  state.refresh_boundaries();
  return state;
}

std::vector<GeneratedEmbedding> sample_ersa(const ErsaState &state,
                                            DetRng &rng) {
  std::vector<GeneratedEmbedding> out;
  out.reserve(state.samples_per_center * state.boundary_centers.size());
  std::uint64_t center_index = 0;
  for (const auto &[type, center] : state.boundary_centers) {
    const Matrix &cov = state.spoof_covariances.at(type);
    Eigen::LLT<Matrix> llt(cov);
    if (llt.info() != Eigen::Success)
      throw std::runtime_error("covariance for spoof type '" + type +
                               "' is not positive definite");
    Matrix chol = llt.matrixL();
    DetRng center_rng = rng.fork(center_index++);
    for (std::size_t j = 0; j < state.samples_per_center; ++j) {
      Vector z(center.size());
      for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = center_rng.normal();
      out.push_back({center + chol * z, type});
    }
  }
  return out;
}

ToyEncoder finetune_ersa(const ToyEncoder &encoder, const Dataset &dataset,
                         ErsaState &state, const TrainConfig &config,
                         TrainTrace *trace) {
  if (state.bonafide_center.size() != encoder.d_emb())
    throw std::invalid_argument("state dimension does not match encoder");
  ToyEncoder tuned = encoder;
  detail::run_sgd(tuned, dataset, config, &state, trace);
  return tuned;
}

}  // namespace sasv
