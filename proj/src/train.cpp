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

#include "sasvkit/train.hpp"

#include <cmath>

#include "sasvkit/ersa.hpp"
#include "sasvkit/losses.hpp"
#include "sasvkit/rng.hpp"

namespace sasv {

namespace {

constexpr std::uint64_t kShuffleStream = 0x73687566ULL;
constexpr std::uint64_t kErsaStream = 0x65727361ULL;

void fisher_yates(std::vector<std::size_t> &v, DetRng &rng) {
  for (std::size_t i = v.size(); i > 1; --i)
    std::swap(v[i - 1], v[rng.below(i)]);
}

struct RunningMean {
  Vector sum;
  double count = 0.0;

  void add(const Vector &e) {
    if (count == 0.0)
      sum = e;
    else
      sum += e;
    count += 1.0;
  }
  Vector mean() const { return sum / count; }
};

}  // namespace

namespace detail {

void run_sgd(ToyEncoder &encoder, const Dataset &dataset,
             const TrainConfig &config, ErsaState *state, TrainTrace *trace) {
  if (dataset.empty()) throw std::invalid_argument("empty dataset");
  bool has_bona = false, has_spoof = false;
  for (const auto &rec : dataset) (rec.bonafide ? has_bona : has_spoof) = true;
  if (!has_bona || !has_spoof)
    throw std::invalid_argument("dataset needs both bonafide and spoof records");
  if (config.batch_size < 1)
    throw std::invalid_argument("batch_size must be >= 1");
  if (config.lambda > 0.0 && config.batch_size < 2)
    throw std::invalid_argument("batch_size must be >= 2 when OCCL is enabled");
  if (config.lambda < 0.0) throw std::invalid_argument("lambda must be >= 0");

  const std::size_t n = dataset.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;

  RunningMean bona_running;
  std::map<std::string, RunningMean> spoof_running;

  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    const double lr = config.learning_rate /
                      (1.0 + config.lr_decay * static_cast<double>(epoch));
    DetRng shuffle_rng({config.seed, kShuffleStream, epoch});
    fisher_yates(order, shuffle_rng);

    double epoch_loss = 0.0;
    double epoch_count = 0.0;
    std::size_t iter = 0;
    for (std::size_t start = 0; start < n; start += config.batch_size, ++iter) {
      const std::size_t stop = std::min(n, start + config.batch_size);
      Dataset batch;
      batch.reserve(stop - start);
      for (std::size_t i = start; i < stop; ++i)
        batch.push_back(dataset[order[i]]);

      EncoderGrad grad;
      double loss = combined_loss_grad(encoder, batch, config.lambda, grad);
      double count = static_cast<double>(batch.size());

      if (state) {
        // Running per-class centers over the embeddings of this iteration.
        for (const auto &rec : batch) {
          Vector e = forward(encoder, rec.features).embedding;
          if (rec.bonafide)
            bona_running.add(e);
          else
            spoof_running[rec.spoof_type].add(e);
        }
        if (bona_running.count > 0.0)
          state->bonafide_center = bona_running.mean();
        for (const auto &[type, run] : spoof_running)
          if (state->spoof_centers.count(type))
            state->spoof_centers[type] = run.mean();
        state->refresh_boundaries();

        if (state->samples_per_center > 0) {
          DetRng ersa_rng({config.seed, kErsaStream, epoch, iter});
          for (const auto &gen : sample_ersa(*state, ersa_rng)) {
            loss += head_bce_grad(encoder, gen.embedding, false, grad);
            count += 1.0;
          }
        }
      }

      if (!std::isfinite(loss))
        throw std::runtime_error(
            "training diverged: non-finite loss at epoch " +
            std::to_string(epoch) + ", iteration " + std::to_string(iter));

      grad.axpy_into(encoder, -lr / count);
      epoch_loss += loss;
      epoch_count += count;
    }
    if (trace) trace->epoch_loss.push_back(epoch_loss / epoch_count);

    if (state && (epoch + 1) % state->update_period_epochs == 0) {
      ErsaState fresh = compute_centers(encoder, dataset);
      state->bonafide_center = fresh.bonafide_center;
      state->spoof_centers = fresh.spoof_centers;
      state->spoof_covariances = fresh.spoof_covariances;
      state->refresh_boundaries();
      bona_running = RunningMean{};
      spoof_running.clear();
    }
  }
}

}  // namespace detail

ToyEncoder train(const Dataset &dataset, const TrainConfig &config,
                 TrainTrace *trace) {
  if (dataset.empty()) throw std::invalid_argument("empty dataset");
  ToyEncoder encoder =
      ToyEncoder::random(dataset[0].features.size(), config.hidden,
                         config.d_emb, config.seed, config.init_scale);
  detail::run_sgd(encoder, dataset, config, nullptr, trace);
  return encoder;
}

void train_in_place(ToyEncoder &encoder, const Dataset &dataset,
                    const TrainConfig &config, TrainTrace *trace) {
  detail::run_sgd(encoder, dataset, config, nullptr, trace);
}

}  // namespace sasv
