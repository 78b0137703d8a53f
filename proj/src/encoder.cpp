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

#include "sasvkit/encoder.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "sasvkit/rng.hpp"

namespace sasv {

namespace {

double sigmoid(double s) { return 1.0 / (1.0 + std::exp(-s)); }

void fill_random(Matrix &m, DetRng &rng, double scale) {
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = scale * rng.normal();
}
void fill_random(Vector &v, DetRng &rng, double scale) {
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = scale * rng.normal();
}

}  // namespace

std::size_t ToyEncoder::parameter_count() const {
  return static_cast<std::size_t>(w1.size() + b1.size() + w2.size() +
                                  b2.size() + head_w.size() + 1);
}

Vector ToyEncoder::flatten() const {
  Vector p(static_cast<Eigen::Index>(parameter_count()));
  Eigen::Index at = 0;
  auto put = [&](const auto &block) {
    p.segment(at, block.size()) =
        Eigen::Map<const Vector>(block.data(), block.size());
    at += block.size();
  };
  put(w1);
  put(b1);
  put(w2);
  put(b2);
  put(head_w);
  p[at] = head_b;
  return p;
}

void ToyEncoder::unflatten(const Vector &params) {
  Eigen::Index at = 0;
  auto take = [&](auto &block) {
    Eigen::Map<Vector>(block.data(), block.size()) =
        params.segment(at, block.size());
    at += block.size();
  };
  take(w1);
  take(b1);
  take(w2);
  take(b2);
  take(head_w);
  head_b = params[at];
}

ToyEncoder ToyEncoder::zeros(Eigen::Index d_in, Eigen::Index hidden,
                             Eigen::Index d_emb, Eigen::Index d_aux) {
  ToyEncoder e;
  e.w1 = Matrix::Zero(hidden, d_in);
  e.b1 = Vector::Zero(hidden);
  e.w2 = Matrix::Zero(d_emb, hidden);
  e.b2 = Vector::Zero(d_emb);
  e.head_w = Vector::Zero(d_emb);
  e.head_b = 0.0;
  if (d_aux > 0) {
    e.aux_w1 = Matrix::Zero(d_emb, d_emb + d_aux);
    e.aux_b1 = Vector::Zero(d_emb);
    e.aux_w2 = Matrix::Zero(d_emb, d_emb);
    e.aux_b2 = Vector::Zero(d_emb);
  }
  return e;
}

ToyEncoder ToyEncoder::random(Eigen::Index d_in, Eigen::Index hidden,
                              Eigen::Index d_emb, std::uint64_t seed,
                              double scale, Eigen::Index d_aux) {
  ToyEncoder e = zeros(d_in, hidden, d_emb, d_aux);
  DetRng rng({seed, 0x696e6974ULL});  // "init" stream
  fill_random(e.w1, rng, scale);
  fill_random(e.b1, rng, scale);
  fill_random(e.w2, rng, scale);
  fill_random(e.b2, rng, scale);
  fill_random(e.head_w, rng, scale);
  e.head_b = scale * rng.normal();
  if (d_aux > 0) {
    fill_random(e.aux_w1, rng, scale);
    fill_random(e.aux_b1, rng, scale);
    fill_random(e.aux_w2, rng, scale);
    fill_random(e.aux_b2, rng, scale);
  }
  return e;
}

ForwardResult forward(const ToyEncoder &encoder, const Vector &features) {
  if (features.size() != encoder.d_in())
    throw std::invalid_argument("feature dimension " +
                                std::to_string(features.size()) +
                                " does not match encoder input " +
                                std::to_string(encoder.d_in()));
  ForwardResult r;
  Vector h = (encoder.w1 * features + encoder.b1).array().tanh();
  r.embedding = encoder.w2 * h + encoder.b2;
  r.logit = encoder.head_w.dot(r.embedding) + encoder.head_b;
  r.probability = sigmoid(r.logit);
  return r;
}

ForwardResult forward_with_aux(const ToyEncoder &encoder,
                               const Vector &features,
                               const Vector &aux_embedding) {
  if (!encoder.has_aux())
    throw std::invalid_argument("encoder has no auxiliary path");
  if (aux_embedding.size() != encoder.d_aux())
    throw std::invalid_argument("aux dimension " +
                                std::to_string(aux_embedding.size()) +
                                " does not match encoder aux input " +
                                std::to_string(encoder.d_aux()));
  ForwardResult base = forward(encoder, features);
  Vector joint(encoder.d_emb() + encoder.d_aux());
  joint << base.embedding, aux_embedding;
  Vector mid = encoder.aux_w1 * joint + encoder.aux_b1;
  ForwardResult r;
  r.embedding = encoder.aux_w2 * mid + encoder.aux_b2;
  r.logit = encoder.head_w.dot(r.embedding) + encoder.head_b;
  r.probability = sigmoid(r.logit);
  return r;
}

Dataset select_bonafide_subset(const ToyEncoder &encoder,
                               const Dataset &dataset, double threshold) {
  Dataset out;
  for (const auto &rec : dataset)
    if (forward(encoder, rec.features).probability >= threshold)
      out.push_back(rec);
  return out;
}

Dataset parse_dataset(std::istream &in) {
  Dataset out;
  std::string line;
  std::size_t line_no = 0;
  Eigen::Index dim = -1;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream iss(line);
    std::string label;
    if (!(iss >> label)) continue;
    EmbeddingRecord rec;
    if (label == "bonafide") {
      rec.bonafide = true;
    } else if (label.rfind("spoof:", 0) == 0 && label.size() > 6) {
      rec.bonafide = false;
      rec.spoof_type = label.substr(6);
    } else {
      throw ParseError(line_no, "unknown label token '" + label + "'");
    }
    std::vector<double> feats;
    double v;
    while (iss >> v) feats.push_back(v);
    if (!iss.eof()) throw ParseError(line_no, "non-numeric feature value");
    if (feats.empty()) throw ParseError(line_no, "record has no features");
    if (dim < 0) dim = static_cast<Eigen::Index>(feats.size());
    if (dim != static_cast<Eigen::Index>(feats.size()))
      throw ParseError(line_no, "feature dimension changed from " +
                                    std::to_string(dim) + " to " +
                                    std::to_string(feats.size()));
    rec.features = Eigen::Map<Vector>(feats.data(),
                                      static_cast<Eigen::Index>(feats.size()));
    if (!rec.features.allFinite())
      throw ParseError(line_no, "non-finite feature value");
    out.push_back(std::move(rec));
  }
  return out;
}

void write_dataset(std::ostream &out, const Dataset &dataset) {
  char buf[32];
  for (const auto &rec : dataset) {
    out << (rec.bonafide ? "bonafide" : "spoof:" + rec.spoof_type);
    for (Eigen::Index i = 0; i < rec.features.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", rec.features[i]);
      out << ' ' << buf;
    }
    out << '\n';
  }
}

namespace {

void write_block(std::ostream &out, const char *name, const double *data,
                 Eigen::Index n) {
  char buf[32];
  out << name;
  for (Eigen::Index i = 0; i < n; ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", data[i]);
    out << ' ' << buf;
  }
  out << '\n';
}

void read_block(std::istream &in, const char *name, double *data,
                Eigen::Index n) {
  std::string tag;
  if (!(in >> tag) || tag != name)
    throw ParseError(0, std::string("expected parameter block '") + name +
                            "', got '" + tag + "'");
  for (Eigen::Index i = 0; i < n; ++i)
    if (!(in >> data[i]))
      throw ParseError(0, std::string("truncated parameter block '") + name +
                              "'");
}

}  // namespace

void write_encoder(std::ostream &out, const ToyEncoder &encoder) {
  out << "sasvkit-toy-encoder v1\n";
  out << "dims " << encoder.d_in() << ' ' << encoder.hidden() << ' '
      << encoder.d_emb() << ' ' << encoder.d_aux() << '\n';
  write_block(out, "w1", encoder.w1.data(), encoder.w1.size());
  write_block(out, "b1", encoder.b1.data(), encoder.b1.size());
  write_block(out, "w2", encoder.w2.data(), encoder.w2.size());
  write_block(out, "b2", encoder.b2.data(), encoder.b2.size());
  write_block(out, "head_w", encoder.head_w.data(), encoder.head_w.size());
  write_block(out, "head_b", &encoder.head_b, 1);
  if (encoder.has_aux()) {
    write_block(out, "aux_w1", encoder.aux_w1.data(), encoder.aux_w1.size());
    write_block(out, "aux_b1", encoder.aux_b1.data(), encoder.aux_b1.size());
    write_block(out, "aux_w2", encoder.aux_w2.data(), encoder.aux_w2.size());
    write_block(out, "aux_b2", encoder.aux_b2.data(), encoder.aux_b2.size());
  }
}

ToyEncoder read_encoder(std::istream &in) {
  std::string magic, version, tag;
  in >> magic >> version;
  if (magic != "sasvkit-toy-encoder" || version != "v1")
    throw ParseError(1, "not a sasvkit toy encoder file");
  Eigen::Index d_in, hidden, d_emb, d_aux;
  if (!(in >> tag >> d_in >> hidden >> d_emb >> d_aux) || tag != "dims")
    throw ParseError(2, "expected 'dims <d_in> <hidden> <d_emb> <d_aux>'");
  ToyEncoder e = ToyEncoder::zeros(d_in, hidden, d_emb, d_aux);
  read_block(in, "w1", e.w1.data(), e.w1.size());
  read_block(in, "b1", e.b1.data(), e.b1.size());
  read_block(in, "w2", e.w2.data(), e.w2.size());
  read_block(in, "b2", e.b2.data(), e.b2.size());
  read_block(in, "head_w", e.head_w.data(), e.head_w.size());
  read_block(in, "head_b", &e.head_b, 1);
  if (d_aux > 0) {
    read_block(in, "aux_w1", e.aux_w1.data(), e.aux_w1.size());
    read_block(in, "aux_b1", e.aux_b1.data(), e.aux_b1.size());
    read_block(in, "aux_w2", e.aux_w2.data(), e.aux_w2.size());
    read_block(in, "aux_b2", e.aux_b2.data(), e.aux_b2.size());
  }
  return e;
}

}  // namespace sasv
