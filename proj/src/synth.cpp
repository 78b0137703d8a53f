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

#include "sasvkit/synth.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "sasvkit/rng.hpp"

namespace sasv {

namespace {

constexpr std::uint64_t kDatasetStream = 0x64617461ULL;
constexpr std::uint64_t kTrialStream = 0x7472696cULL;

Vector cluster_center(const SynthConfig &config, std::size_t spoof_index,
                      bool bonafide) {
  Vector c = Vector::Zero(config.dim);
  if (bonafide)
    c[0] = config.cluster_radius;
  else
    c[static_cast<Eigen::Index>(spoof_index) % config.dim] =
        -config.cluster_radius;
  return c;
}

Vector draw_around(const Vector &center, double spread, DetRng &rng) {
  Vector x(center.size());
  for (Eigen::Index i = 0; i < x.size(); ++i)
    x[i] = center[i] + spread * rng.normal();
  return x;
}

std::uint64_t hash_string(const std::string &s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) h = (h ^ c) * 1099511628211ULL;
  return h;
}

}  // namespace

std::string spoof_type_name(std::size_t k) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "A%02zu", k + 1);
  return buf;
}

Dataset make_synth_dataset(const SynthConfig &config) {
  if (config.dim < 1 || config.spoof_types < 1 || config.per_class < 1)
    throw std::invalid_argument("dim, spoof_types and per_class must be >= 1");
  Dataset out;
  DetRng rng({config.seed, kDatasetStream});
  for (std::size_t i = 0; i < config.per_class; ++i) {
    EmbeddingRecord rec;
    rec.bonafide = true;
    rec.features = draw_around(cluster_center(config, 0, true),
                               config.cluster_spread, rng);
    out.push_back(std::move(rec));
  }
  for (std::size_t k = 0; k < config.spoof_types; ++k) {
    Vector center = cluster_center(config, k, false);
    for (std::size_t i = 0; i < config.per_class; ++i) {
      EmbeddingRecord rec;
      rec.bonafide = false;
      rec.spoof_type = spoof_type_name(k);
      rec.features = draw_around(center, config.cluster_spread, rng);
      out.push_back(std::move(rec));
    }
  }
  return out;
}

SynthSplit make_synth_trials(const SynthConfig &config,
                             const std::string &split_name,
                             std::size_t n_trials) {
  if (n_trials < 3) throw std::invalid_argument("need at least 3 trials");
  SynthSplit split;
  split.sv_scores.system_name = "sv";
  DetRng rng({config.seed, kTrialStream, hash_string(split_name)});
  char buf[64];
  for (std::size_t i = 0; i < n_trials; ++i) {
    std::snprintf(buf, sizeof buf, "spk%03zu", i % 20);
    std::string enroll = buf;
    std::snprintf(buf, sizeof buf, "%s-utt%05zu", split_name.c_str(), i);
    std::string test = buf;

    Trial t;
    t.enroll_id = enroll;
    t.test_id = test;
    Vector feat_center;
    bool same_speaker;
    switch (i % 3) {
      case 0:
        t.label = TrialLabel::Target();
        feat_center = cluster_center(config, 0, true);
        same_speaker = true;
        break;
      case 1:
        t.label = TrialLabel::Nontarget();
        feat_center = cluster_center(config, 0, true);
        same_speaker = false;
        break;
      default: {
        std::size_t type = (i / 3) % config.spoof_types;
        t.label = TrialLabel::Spoof(spoof_type_name(type));
        feat_center = cluster_center(config, type, false);
        same_speaker = true;  // spoofed speech mimics the target speaker
        break;
      }
    }
    double sv = (same_speaker ? config.sv_margin : -config.sv_margin) +
                config.sv_spread * rng.normal();
    split.sv_scores.entries[{enroll, test}] = sv;
    split.features.emplace_back(
        test, draw_around(feat_center, config.cluster_spread, rng));
    split.trials.push_back(std::move(t));
  }
  return split;
}

std::vector<std::pair<std::string, Vector>> parse_features(std::istream &in) {
  std::vector<std::pair<std::string, Vector>> out;
  std::set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream iss(line);
    std::string id;
    if (!(iss >> id)) continue;
    if (!seen.insert(id).second)
      throw ParseError(line_no, "duplicate utterance id '" + id + "'");
    std::vector<double> feats;
    double v;
    while (iss >> v) feats.push_back(v);
    if (!iss.eof()) throw ParseError(line_no, "non-numeric feature value");
    if (feats.empty()) throw ParseError(line_no, "record has no features");
    out.emplace_back(id, Eigen::Map<Vector>(
                             feats.data(),
                             static_cast<Eigen::Index>(feats.size())));
  }
  return out;
}

void write_features(
    std::ostream &out,
    const std::vector<std::pair<std::string, Vector>> &features) {
  char buf[32];
  for (const auto &[id, feats] : features) {
    out << id;
    for (Eigen::Index i = 0; i < feats.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", feats[i]);
      out << ' ' << buf;
    }
    out << '\n';
  }
}

}  // namespace sasv
