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

#include "sasvkit/fusion.hpp"

#include <cmath>
#include <istream>
#include <ostream>

namespace sasv {

namespace {

double sigmoid(double s) { return 1.0 / (1.0 + std::exp(-s)); }

double softplus(double x) {
  return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

void check_same_keys(const std::vector<ScoreSet> &scoresets) {
  if (scoresets.empty())
    throw std::invalid_argument("need at least one score set");
  for (std::size_t k = 1; k < scoresets.size(); ++k) {
    const auto &a = scoresets[0].entries;
    const auto &b = scoresets[k].entries;
    if (a.size() != b.size())
      throw std::invalid_argument("key mismatch between systems '" +
                                  scoresets[0].system_name + "' and '" +
                                  scoresets[k].system_name + "'");
    auto ia = a.begin();
    for (auto ib = b.begin(); ib != b.end(); ++ia, ++ib)
      if (ia->first != ib->first)
        throw std::invalid_argument(
            "key mismatch between systems '" + scoresets[0].system_name +
            "' and '" + scoresets[k].system_name + "' at (" + ib->first.first +
            ", " + ib->first.second + ")");
  }
}

}  // namespace

ScoreSet sigmoid_normalize(const ScoreSet &scores) {
  ScoreSet out;
  out.system_name = scores.system_name;
  for (const auto &[key, s] : scores.entries) {
    if (!std::isfinite(s))
      throw std::invalid_argument("non-finite score for (" + key.first + ", " +
                                  key.second + ")");
    out.entries.emplace(key, sigmoid(s));
  }
  return out;
}

ScoreSet fuse_sum(const std::vector<ScoreSet> &scoresets) {
  check_same_keys(scoresets);
  ScoreSet out;
  out.system_name = "sum";
  out.entries = scoresets[0].entries;
  for (std::size_t k = 1; k < scoresets.size(); ++k)
    for (const auto &[key, s] : scoresets[k].entries) out.entries[key] += s;
  return out;
}

ScoreSet fuse_product_sigmoid(const std::vector<ScoreSet> &scoresets) {
  check_same_keys(scoresets);
  ScoreSet out;
  out.system_name = "sigmoid-product";
  out.entries = sigmoid_normalize(scoresets[0]).entries;
  for (std::size_t k = 1; k < scoresets.size(); ++k) {
    ScoreSet norm = sigmoid_normalize(scoresets[k]);
    for (const auto &[key, s] : norm.entries) out.entries[key] *= s;
  }
  return out;
}

FusionModel fit_linear_calibration(const ScoredTrials &data,
                                   const PositiveRule &positive_rule,
                                   double prior, CalibrationReport *report) {
  if (!(prior > 0.0 && prior < 1.0))
    throw std::invalid_argument("prior must lie in (0, 1)");
  const Eigen::Index d = data.scores.cols();
  if (d < 1) throw std::invalid_argument("need at least one score column");
  if (!data.scores.allFinite())
    throw std::invalid_argument("non-finite score in training data");

  std::vector<Eigen::Index> pos_rows, neg_rows;
  for (std::size_t i = 0; i < data.trials.size(); ++i) {
    if (positive_rule(data.trials[i].label))
      pos_rows.push_back(static_cast<Eigen::Index>(i));
    else
      neg_rows.push_back(static_cast<Eigen::Index>(i));
  }
  if (pos_rows.empty() || neg_rows.empty())
    throw std::invalid_argument("calibration needs both classes non-empty");

  // Augmented design rows (s, 1); parameters z = (w, b).
  auto design = [&](const std::vector<Eigen::Index> &rows) {
    Matrix X(static_cast<Eigen::Index>(rows.size()), d + 1);
    for (Eigen::Index r = 0; r < X.rows(); ++r) {
      X.row(r).head(d) = data.scores.row(rows[static_cast<std::size_t>(r)]);
      X(r, d) = 1.0;
    }
    return X;
  };
  const Matrix Xp = design(pos_rows);
  const Matrix Xn = design(neg_rows);
  const double wp = prior / static_cast<double>(Xp.rows());
  const double wn = (1.0 - prior) / static_cast<double>(Xn.rows());
  const double logit_prior = std::log(prior / (1.0 - prior));

  auto objective = [&](const Vector &z) {
    double c = 0.0;
    Vector ap = Xp * z;
    Vector an = Xn * z;
    for (Eigen::Index i = 0; i < ap.size(); ++i)
      c += wp * softplus(-(ap[i] + logit_prior));
    for (Eigen::Index i = 0; i < an.size(); ++i)
      c += wn * softplus(an[i] + logit_prior);
    return c;
  };
  auto gradient_hessian = [&](const Vector &z, Vector &g, Matrix &h) {
    g.setZero(d + 1);
    h.setZero(d + 1, d + 1);
    Vector ap = Xp * z;
    Vector an = Xn * z;
    for (Eigen::Index i = 0; i < ap.size(); ++i) {
      double s = sigmoid(ap[i] + logit_prior);
      g -= wp * (1.0 - s) * Xp.row(i).transpose();
      h += wp * s * (1.0 - s) * Xp.row(i).transpose() * Xp.row(i);
    }
    for (Eigen::Index i = 0; i < an.size(); ++i) {
      double s = sigmoid(an[i] + logit_prior);
      g += wn * s * Xn.row(i).transpose();
      h += wn * s * (1.0 - s) * Xn.row(i).transpose() * Xn.row(i);
    }
  };

  constexpr double kGradTol = 1e-8;
  constexpr double kWeightCap = 1e4;
  constexpr std::size_t kMaxIter = 10000;

  Vector z = Vector::Zero(d + 1);
  double obj = objective(z);
  CalibrationReport rep;
  rep.objective_trace.push_back(obj);

  Vector g(d + 1);
  Matrix h(d + 1, d + 1);
  while (rep.iterations < kMaxIter) {
    gradient_hessian(z, g, h);
    rep.final_gradient_norm = g.norm();
    if (rep.final_gradient_norm <= kGradTol) break;
    if (z.norm() >= kWeightCap) {
      rep.separable = true;
      break;
    }
    // Damped Newton direction on the convex objective.
    Matrix hr = h;
    hr.diagonal().array() += 1e-12;
    Vector step = hr.ldlt().solve(-g);
    if (!step.allFinite() || g.dot(step) >= 0.0) step = -g;
    double t = 1.0;
    double slope = g.dot(step);
    while (true) {
      Vector zt = z + t * step;
      double ot = objective(zt);
      if (ot <= obj + 1e-4 * t * slope) {
        z = zt;
        obj = ot;
        break;
      }
      t *= 0.5;
      if (t < 1e-16) break;  // no descent possible at machine precision
    }
    rep.objective_trace.push_back(obj);
    ++rep.iterations;
    if (t < 1e-16) break;
  }
  if (rep.iterations >= kMaxIter) rep.hit_iteration_cap = true;
  gradient_hessian(z, g, h);
  rep.final_gradient_norm = g.norm();
  if (report) *report = rep;

  FusionModel model;
  model.weights = z.head(d);
  model.bias = z[d];
  model.trained_prior = prior;
  return model;
}

ScoreSet apply_fusion_model(const FusionModel &model,
                            const std::vector<ScoreSet> &scoresets) {
  check_same_keys(scoresets);
  if (model.weights.size() != static_cast<Eigen::Index>(scoresets.size()))
    throw std::invalid_argument(
        "model has " + std::to_string(model.weights.size()) +
        " weights but " + std::to_string(scoresets.size()) +
        " score sets were given");
  ScoreSet out;
  out.system_name = "calibrated";
  for (const auto &[key, s0] : scoresets[0].entries) {
    double fused = model.bias + model.weights[0] * s0;
    for (std::size_t k = 1; k < scoresets.size(); ++k)
      fused += model.weights[static_cast<Eigen::Index>(k)] *
               scoresets[k].entries.at(key);
    out.entries.emplace(key, fused);
  }
  return out;
}

void write_fusion_model(std::ostream &out, const FusionModel &model) {
  out.precision(17);
  out << "sasvkit-fusion-model v1\n";
  out << "prior " << model.trained_prior << '\n';
  out << "bias " << model.bias << '\n';
  out << "weights " << model.weights.size();
  for (Eigen::Index k = 0; k < model.weights.size(); ++k)
    out << ' ' << model.weights[k];
  out << '\n';
}

FusionModel read_fusion_model(std::istream &in) {
  std::string magic, version, tag;
  in >> magic >> version;
  if (magic != "sasvkit-fusion-model" || version != "v1")
    throw ParseError(1, "not a sasvkit fusion model file");
  FusionModel model;
  Eigen::Index n = 0;
  if (!(in >> tag >> model.trained_prior) || tag != "prior")
    throw ParseError(2, "expected 'prior <value>'");
  if (!(in >> tag >> model.bias) || tag != "bias")
    throw ParseError(3, "expected 'bias <value>'");
  if (!(in >> tag >> n) || tag != "weights" || n < 0)
    throw ParseError(4, "expected 'weights <count> <values...>'");
  model.weights.resize(n);
  for (Eigen::Index k = 0; k < n; ++k)
    if (!(in >> model.weights[k]))
      throw ParseError(4, "truncated weight list");
  return model;
}

}  // namespace sasv
