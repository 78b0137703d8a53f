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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sasvkit/cascade.hpp"
#include "sasvkit/encoder.hpp"
#include "sasvkit/ersa.hpp"
#include "sasvkit/fusion.hpp"
#include "sasvkit/losses.hpp"
#include "sasvkit/manifest.hpp"
#include "sasvkit/metrics.hpp"
#include "sasvkit/rng.hpp"
#include "sasvkit/synth.hpp"
#include "sasvkit/train.hpp"
#include "sasvkit/trials.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// "-" reads standard input.
std::string slurp(const std::string &path) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    buf << in.rdbuf();
  }
  return buf.str();
}

std::vector<sasv::Trial> load_trials(const std::string &path) {
  std::istringstream in(slurp(path));
  return sasv::parse_trial_list(in);
}

sasv::ScoreSet load_scores(const std::string &path, const std::string &name) {
  std::istringstream in(slurp(path));
  return sasv::parse_score_file(in, name);
}

sasv::ToyEncoder load_encoder(const std::string &path) {
  std::istringstream in(slurp(path));
  return sasv::read_encoder(in);
}

sasv::Dataset load_dataset(const std::string &path) {
  std::istringstream in(slurp(path));
  return sasv::parse_dataset(in);
}

std::ofstream open_out(const std::string &path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  return out;
}

std::string resolved(const std::string &path) {
  return path == "-" ? "-" : fs::absolute(path).lexically_normal().string();
}

std::string fmt_pct(double eer) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", 100.0 * eer);
  return buf;
}

json eer_to_json(const sasv::EerResult &r) {
  return {{"eer", r.eer},
          {"percent", 100.0 * r.eer},
          {"threshold", r.threshold},
          {"n_positive", r.n_positive},
          {"n_negative", r.n_negative}};
}

std::string metric_report(const sasv::ScoredTrials &data, Eigen::Index column,
                          bool as_json) {
  sasv::EerResult sv = sasv::sv_eer(data, column);
  sasv::EerResult spf = sasv::spf_eer(data, column);
  sasv::EerResult sasv_r = sasv::sasv_eer(data, column);
  if (as_json) {
    json j{{"sv_eer", eer_to_json(sv)},
           {"spf_eer", eer_to_json(spf)},
           {"sasv_eer", eer_to_json(sasv_r)}};
    return j.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "SV-EER " << fmt_pct(sv.eer) << '\n'
      << "SPF-EER " << fmt_pct(spf.eer) << '\n'
      << "SASV-EER " << fmt_pct(sasv_r.eer) << '\n';
  return out.str();
}

void emit_warnings(const sasv::JoinResult &joined) {
  for (const auto &w : joined.warnings) std::cerr << "warning: " << w << '\n';
}

struct EerArgs {
  std::string trials, scores, output, system_name = "system";
  bool as_json = false;
};

void run_eer(const EerArgs &a) {
  auto trials = load_trials(a.trials);
  auto joined = sasv::join(trials, {load_scores(a.scores, a.system_name)});
  emit_warnings(joined);
  std::string report = metric_report(joined.data, 0, a.as_json);
  if (a.output.empty()) {
    std::cout << report;
  } else {
    open_out(a.output) << report;
    sasv::RunManifest m;
    m.subcommand = "eer";
    m.inputs = {{"trials", resolved(a.trials)}, {"scores", resolved(a.scores)}};
    m.config = {{"json", a.as_json ? "true" : "false"},
                {"system_name", a.system_name}};
    m.outputs = {{"report", resolved(a.output)}};
    sasv::write_manifest(a.output + ".manifest.json", m);
  }
}

struct FuseArgs {
  std::string method = "sum";
  std::string trials, model, output;
  std::vector<std::string> score_files;
};

void run_fuse(const FuseArgs &a) {
  auto trials = load_trials(a.trials);
  std::vector<sasv::ScoreSet> sets;
  for (std::size_t k = 0; k < a.score_files.size(); ++k)
    sets.push_back(
        load_scores(a.score_files[k], "system" + std::to_string(k)));
  // Joining first validates coverage and surfaces extra-entry warnings.
  auto joined = sasv::join(trials, sets);
  emit_warnings(joined);

  sasv::ScoreSet fused;
  if (a.method == "sum") {
    fused = sasv::fuse_sum(sets);
  } else if (a.method == "sigmoid-product") {
    fused = sasv::fuse_product_sigmoid(sets);
  } else if (a.method == "calibrated") {
    if (a.model.empty())
      throw std::runtime_error("--method calibrated requires --model");
    std::istringstream in(slurp(a.model));
    fused = sasv::apply_fusion_model(sasv::read_fusion_model(in), sets);
  } else {
    throw std::runtime_error("unknown fusion method '" + a.method + "'");
  }
  auto out = open_out(a.output);
  sasv::write_score_file(out, trials, fused);

  sasv::RunManifest m;
  m.subcommand = "fuse";
  m.inputs["trials"] = resolved(a.trials);
  for (std::size_t k = 0; k < a.score_files.size(); ++k)
    m.inputs["scores" + std::to_string(k)] = resolved(a.score_files[k]);
  if (!a.model.empty()) m.inputs["model"] = resolved(a.model);
  m.config = {{"method", a.method}};
  m.outputs = {{"scores", resolved(a.output)}};
  sasv::write_manifest(a.output + ".manifest.json", m);
}

struct CalibrateArgs {
  std::string trials, output;
  std::vector<std::string> score_files;
  double prior = 0.5;
  std::string positive = "target";
};

void run_calibrate(const CalibrateArgs &a) {
  auto trials = load_trials(a.trials);
  std::vector<sasv::ScoreSet> sets;
  for (std::size_t k = 0; k < a.score_files.size(); ++k)
    sets.push_back(
        load_scores(a.score_files[k], "system" + std::to_string(k)));
  auto joined = sasv::join(trials, sets);
  emit_warnings(joined);

  sasv::PositiveRule rule;
  if (a.positive == "target") {
    rule = sasv::target_positive;
  } else if (a.positive == "bonafide") {
    rule = [](const sasv::TrialLabel &l) {
      return l.kind != sasv::LabelKind::kSpoof;
    };
  } else {
    throw std::runtime_error("unknown positive rule '" + a.positive + "'");
  }
  sasv::CalibrationReport report;
  sasv::FusionModel model =
      sasv::fit_linear_calibration(joined.data, rule, a.prior, &report);
  if (report.separable)
    std::cerr << "warning: training data is separable; weights capped\n";
  if (report.hit_iteration_cap)
    std::cerr << "warning: iteration cap reached before convergence\n";
  auto out = open_out(a.output);
  sasv::write_fusion_model(out, model);

  sasv::RunManifest m;
  m.subcommand = "calibrate";
  m.inputs["trials"] = resolved(a.trials);
  for (std::size_t k = 0; k < a.score_files.size(); ++k)
    m.inputs["scores" + std::to_string(k)] = resolved(a.score_files[k]);
  m.config = {{"prior", std::to_string(a.prior)}, {"positive", a.positive}};
  m.outputs = {{"model", resolved(a.output)}};
  sasv::write_manifest(a.output + ".manifest.json", m);
}

struct CascadeArgs {
  std::string order = "asv-cm";
  std::string dev_trials, dev_sv, dev_cm, eval_trials, eval_sv, eval_cm;
  std::string out_dir;
  double epsilon = 0.0;
  bool epsilon_set = false;
  bool as_json = false;
};

void run_cascade_cmd(const CascadeArgs &a) {
  auto dev_trials = load_trials(a.dev_trials);
  auto eval_trials = load_trials(a.eval_trials);
  auto dev_sv = load_scores(a.dev_sv, "sv");
  auto dev_cm = load_scores(a.dev_cm, "cm");
  auto eval_sv = load_scores(a.eval_sv, "sv");
  auto eval_cm = load_scores(a.eval_cm, "cm");

  auto dev_joined = sasv::join(dev_trials, {dev_sv, dev_cm});
  emit_warnings(dev_joined);

  sasv::CascadeConfig config;
  const bool asv_first = a.order == "asv-cm";
  if (!asv_first && a.order != "cm-asv")
    throw std::runtime_error("unknown cascade order '" + a.order + "'");
  config.order = asv_first ? sasv::CascadeOrder::kAsvThenCm
                           : sasv::CascadeOrder::kCmThenAsv;
  config.threshold = sasv::dev_threshold(
      dev_joined.data, asv_first ? 0 : 1,
      asv_first ? sasv::GateTask::kSv : sasv::GateTask::kCm);
  config.epsilon = a.epsilon_set
                       ? a.epsilon
                       : sasv::dev_min_score(asv_first ? dev_cm : dev_sv);

  const auto &dev_first = asv_first ? dev_sv : dev_cm;
  const auto &dev_second = asv_first ? dev_cm : dev_sv;
  const auto &eval_first = asv_first ? eval_sv : eval_cm;
  const auto &eval_second = asv_first ? eval_cm : eval_sv;

  fs::create_directories(a.out_dir);
  auto out_path = [&](const std::string &name) {
    return (fs::path(a.out_dir) / name).string();
  };

  sasv::ScoreSet dev_fused = sasv::run_cascade(config, dev_first, dev_second);
  sasv::ScoreSet eval_fused =
      sasv::run_cascade(config, eval_first, eval_second);
  {
    auto out = open_out(out_path("dev.cascade.score"));
    sasv::write_score_file(out, dev_trials, dev_fused);
  }
  {
    auto out = open_out(out_path("eval.cascade.score"));
    sasv::write_score_file(out, eval_trials, eval_fused);
  }
  auto dev_report =
      metric_report(sasv::join(dev_trials, {dev_fused}).data, 0, a.as_json);
  auto eval_report =
      metric_report(sasv::join(eval_trials, {eval_fused}).data, 0, a.as_json);
  open_out(out_path("dev.report.txt")) << dev_report;
  open_out(out_path("eval.report.txt")) << eval_report;
  std::cout << "dev:\n" << dev_report << "eval:\n" << eval_report;

  sasv::RunManifest m;
  m.subcommand = "cascade";
  m.inputs = {{"dev_trials", resolved(a.dev_trials)},
              {"dev_sv", resolved(a.dev_sv)},
              {"dev_cm", resolved(a.dev_cm)},
              {"eval_trials", resolved(a.eval_trials)},
              {"eval_sv", resolved(a.eval_sv)},
              {"eval_cm", resolved(a.eval_cm)}};
  m.config = {{"order", a.order},
              {"threshold", std::to_string(config.threshold)},
              {"epsilon", std::to_string(config.epsilon)},
              {"epsilon_overridden", a.epsilon_set ? "true" : "false"}};
  m.outputs = {{"dev_scores", resolved(out_path("dev.cascade.score"))},
               {"eval_scores", resolved(out_path("eval.cascade.score"))},
               {"dev_report", resolved(out_path("dev.report.txt"))},
               {"eval_report", resolved(out_path("eval.report.txt"))}};
  sasv::write_manifest(out_path("manifest.json"), m);
}

struct TrainArgs {
  std::string data, output, trace_path;
  sasv::TrainConfig config;
  // ersa-finetune extras
  std::string encoder;
  std::size_t samples_per_center = 2;
  std::size_t update_period = 5;
};

void add_train_flags(CLI::App *cmd, TrainArgs &a) {
  cmd->add_option("--data", a.data, "training dataset file")->required();
  cmd->add_option("-o,--output", a.output, "output encoder file")->required();
  cmd->add_option("--lambda", a.config.lambda, "OCCL weight");
  cmd->add_option("--batch-size", a.config.batch_size);
  cmd->add_option("--epochs", a.config.epochs);
  cmd->add_option("--lr", a.config.learning_rate);
  cmd->add_option("--lr-decay", a.config.lr_decay);
  cmd->add_option("--seed", a.config.seed);
  cmd->add_option("--trace", a.trace_path, "per-epoch loss trace file");
}

void write_train_outputs(const std::string &subcommand, const TrainArgs &a,
                         const sasv::ToyEncoder &encoder,
                         const sasv::TrainTrace &trace) {
  {
    auto out = open_out(a.output);
    sasv::write_encoder(out, encoder);
  }
  if (!a.trace_path.empty()) {
    auto out = open_out(a.trace_path);
    out.precision(17);
    for (std::size_t e = 0; e < trace.epoch_loss.size(); ++e)
      out << e << ' ' << trace.epoch_loss[e] << '\n';
  }
  sasv::RunManifest m;
  m.subcommand = subcommand;
  m.inputs["data"] = resolved(a.data);
  if (!a.encoder.empty()) m.inputs["encoder"] = resolved(a.encoder);
  m.config = {{"lambda", std::to_string(a.config.lambda)},
              {"batch_size", std::to_string(a.config.batch_size)},
              {"epochs", std::to_string(a.config.epochs)},
              {"lr", std::to_string(a.config.learning_rate)},
              {"lr_decay", std::to_string(a.config.lr_decay)},
              {"seed", std::to_string(a.config.seed)},
              {"hidden", std::to_string(a.config.hidden)},
              {"d_emb", std::to_string(a.config.d_emb)}};
  if (subcommand == "ersa-finetune") {
    m.config["samples_per_center"] = std::to_string(a.samples_per_center);
    m.config["update_period"] = std::to_string(a.update_period);
  }
  m.outputs["encoder"] = resolved(a.output);
  if (!a.trace_path.empty()) m.outputs["trace"] = resolved(a.trace_path);
  sasv::write_manifest(a.output + ".manifest.json", m);
}

void run_train_toy(const TrainArgs &a) {
  sasv::Dataset data = load_dataset(a.data);
  sasv::TrainTrace trace;
  sasv::ToyEncoder encoder = sasv::train(data, a.config, &trace);
  write_train_outputs("train-toy", a, encoder, trace);
}

void run_ersa_finetune(const TrainArgs &a) {
  sasv::Dataset data = load_dataset(a.data);
  sasv::ToyEncoder encoder = load_encoder(a.encoder);
  sasv::ErsaState state = sasv::compute_centers(encoder, data);
  state.samples_per_center = a.samples_per_center;
  state.update_period_epochs = a.update_period;
  sasv::TrainTrace trace;
  sasv::ToyEncoder tuned =
      sasv::finetune_ersa(encoder, data, state, a.config, &trace);
  write_train_outputs("ersa-finetune", a, tuned, trace);
}

struct FilterArgs {
  std::string data, encoder, output;
  double threshold = 0.5;
};

void run_filter_bonafide(const FilterArgs &a) {
  sasv::Dataset data = load_dataset(a.data);
  sasv::ToyEncoder encoder = load_encoder(a.encoder);
  sasv::Dataset subset =
      sasv::select_bonafide_subset(encoder, data, a.threshold);
  auto out = open_out(a.output);
  sasv::write_dataset(out, subset);
  std::cout << "kept " << subset.size() << " of " << data.size()
            << " records\n";

  sasv::RunManifest m;
  m.subcommand = "filter-bonafide";
  m.inputs = {{"data", resolved(a.data)}, {"encoder", resolved(a.encoder)}};
  m.config = {{"threshold", std::to_string(a.threshold)}};
  m.outputs = {{"data", resolved(a.output)}};
  sasv::write_manifest(a.output + ".manifest.json", m);
}

struct GradCheckArgs {
  std::size_t configs = 20;
  std::uint64_t seed = 0;
  double tolerance = 1e-4;
};

int run_grad_check(const GradCheckArgs &a) {
  double worst = 0.0;
  for (std::size_t c = 0; c < a.configs; ++c) {
    sasv::DetRng rng({a.seed, 0x67636b00ULL, c});
    Eigen::Index d_in = 2 + static_cast<Eigen::Index>(rng.below(4));
    Eigen::Index hidden = 2 + static_cast<Eigen::Index>(rng.below(5));
    Eigen::Index d_emb = 2 + static_cast<Eigen::Index>(rng.below(3));
    sasv::ToyEncoder enc = sasv::ToyEncoder::random(
        d_in, hidden, d_emb, a.seed * 1000 + c, 0.7);
    sasv::Dataset batch;
    std::size_t batch_size = 2 + rng.below(7);
    for (std::size_t i = 0; i < batch_size; ++i) {
      sasv::EmbeddingRecord rec;
      rec.bonafide = rng.uniform() < 0.5 || i < 2;  // keep >= 2 bonafide
      if (!rec.bonafide) rec.spoof_type = "A01";
      rec.features.resize(d_in);
      for (Eigen::Index k = 0; k < d_in; ++k) rec.features[k] = rng.normal();
      batch.push_back(std::move(rec));
    }
    double lambda = (c % 2 == 0) ? 0.0 : 1.0;
    double err = sasv::gradient_check(enc, batch, lambda);
    worst = std::max(worst, err);
  }
  std::cout.precision(6);
  std::cout << "max relative gradient error: " << std::scientific << worst
            << '\n';
  if (worst > a.tolerance) {
    std::cerr << "gradient check FAILED (tolerance " << a.tolerance << ")\n";
    return 1;
  }
  return 0;
}

struct MakeSynthArgs {
  std::string out_dir;
  sasv::SynthConfig config;
  std::size_t dev_trials = 300;
  std::size_t eval_trials = 300;
};

void run_make_synth(const MakeSynthArgs &a) {
  fs::create_directories(a.out_dir);
  auto out_path = [&](const std::string &name) {
    return (fs::path(a.out_dir) / name).string();
  };
  {
    auto out = open_out(out_path("train.data"));
    sasv::write_dataset(out, sasv::make_synth_dataset(a.config));
  }
  for (const auto &[split, n] :
       std::vector<std::pair<std::string, std::size_t>>{
           {"dev", a.dev_trials}, {"eval", a.eval_trials}}) {
    sasv::SynthSplit s = sasv::make_synth_trials(a.config, split, n);
    auto trials = open_out(out_path(split + ".trials"));
    sasv::write_trial_list(trials, s.trials);
    auto sv = open_out(out_path(split + ".sv.score"));
    sasv::write_score_file(sv, s.trials, s.sv_scores);
    auto feats = open_out(out_path(split + ".feats"));
    sasv::write_features(feats, s.features);
  }

  sasv::RunManifest m;
  m.subcommand = "make-synth";
  m.config = {{"seed", std::to_string(a.config.seed)},
              {"dim", std::to_string(a.config.dim)},
              {"spoof_types", std::to_string(a.config.spoof_types)},
              {"per_class", std::to_string(a.config.per_class)},
              {"cluster_spread", std::to_string(a.config.cluster_spread)},
              {"cluster_radius", std::to_string(a.config.cluster_radius)},
              {"dev_trials", std::to_string(a.dev_trials)},
              {"eval_trials", std::to_string(a.eval_trials)}};
  for (const char *name : {"train.data", "dev.trials", "eval.trials",
                           "dev.sv.score", "eval.sv.score", "dev.feats",
                           "eval.feats"})
    m.outputs[name] = resolved(out_path(name));
  sasv::write_manifest(out_path("manifest.json"), m);
}

struct ScoreCmArgs {
  std::string encoder, trials, features, output;
};

void run_score_cm(const ScoreCmArgs &a) {
  sasv::ToyEncoder encoder = load_encoder(a.encoder);
  auto trials = load_trials(a.trials);
  std::istringstream fin(slurp(a.features));
  auto features = sasv::parse_features(fin);
  std::map<std::string, sasv::Vector> by_id(
      std::make_move_iterator(features.begin()),
      std::make_move_iterator(features.end()));

  sasv::ScoreSet scores;
  scores.system_name = "cm";
  for (const auto &t : trials) {
    auto it = by_id.find(t.test_id);
    if (it == by_id.end())
      throw std::runtime_error("no features for test utterance '" + t.test_id +
                               "'");
    scores.entries[{t.enroll_id, t.test_id}] =
        sasv::forward(encoder, it->second).probability;
  }
  auto out = open_out(a.output);
  sasv::write_score_file(out, trials, scores);

  sasv::RunManifest m;
  m.subcommand = "score-cm";
  m.inputs = {{"encoder", resolved(a.encoder)},
              {"trials", resolved(a.trials)},
              {"features", resolved(a.features)}};
  m.outputs = {{"scores", resolved(a.output)}};
  sasv::write_manifest(a.output + ".manifest.json", m);
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"SASV decision-layer toolkit: trial/score ingestion, EER "
               "metrics, score fusion, cascades and a toy embedding lab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", sasv::kToolVersion);

  EerArgs eer_args;
  auto *eer = app.add_subcommand("eer", "SV/SPF/SASV-EER report");
  eer->add_option("--trials", eer_args.trials)->required();
  eer->add_option("--scores", eer_args.scores)->required();
  eer->add_option("-o,--output", eer_args.output, "report file (default stdout)");
  eer->add_option("--system", eer_args.system_name);
  eer->add_flag("--json", eer_args.as_json);

  FuseArgs fuse_args;
  auto *fuse = app.add_subcommand("fuse", "parallel score fusion");
  fuse->add_option("--method", fuse_args.method,
                   "sum | sigmoid-product | calibrated");
  fuse->add_option("--trials", fuse_args.trials)->required();
  fuse->add_option("--model", fuse_args.model, "fusion model (calibrated)");
  fuse->add_option("-o,--output", fuse_args.output)->required();
  fuse->add_option("scores", fuse_args.score_files, "score files")
      ->required()
      ->expected(-1);

  CalibrateArgs cal_args;
  auto *cal = app.add_subcommand("calibrate",
                                 "train linear logistic calibration/fusion");
  cal->add_option("--trials", cal_args.trials)->required();
  cal->add_option("--prior", cal_args.prior);
  cal->add_option("--positive", cal_args.positive, "target | bonafide");
  cal->add_option("-o,--output", cal_args.output)->required();
  cal->add_option("scores", cal_args.score_files, "score files")
      ->required()
      ->expected(-1);

  CascadeArgs cas_args;
  auto *cas = app.add_subcommand("cascade", "two-stage gated pipeline");
  cas->add_option("--order", cas_args.order, "asv-cm | cm-asv");
  cas->add_option("--dev-trials", cas_args.dev_trials)->required();
  cas->add_option("--dev-sv", cas_args.dev_sv)->required();
  cas->add_option("--dev-cm", cas_args.dev_cm)->required();
  cas->add_option("--eval-trials", cas_args.eval_trials)->required();
  cas->add_option("--eval-sv", cas_args.eval_sv)->required();
  cas->add_option("--eval-cm", cas_args.eval_cm)->required();
  cas->add_option("--out-dir", cas_args.out_dir)->required();
  cas->add_option("--epsilon", cas_args.epsilon, "floor score override")
      ->each([&](const std::string &) { cas_args.epsilon_set = true; });
  cas->add_flag("--json", cas_args.as_json);

  TrainArgs train_args;
  auto *train_cmd =
      app.add_subcommand("train-toy", "train the toy encoder from scratch");
  add_train_flags(train_cmd, train_args);
  train_cmd->add_option("--hidden", train_args.config.hidden);
  train_cmd->add_option("--d-emb", train_args.config.d_emb);

  TrainArgs ersa_args;
  auto *ersa_cmd =
      app.add_subcommand("ersa-finetune", "fine-tune with ERSA augmentation");
  add_train_flags(ersa_cmd, ersa_args);
  ersa_cmd->add_option("--encoder", ersa_args.encoder, "pre-trained encoder")
      ->required();
  ersa_cmd->add_option("--samples-per-center", ersa_args.samples_per_center);
  ersa_cmd->add_option("--update-period", ersa_args.update_period);

  FilterArgs filter_args;
  auto *filter = app.add_subcommand(
      "filter-bonafide", "keep records the encoder classifies as bonafide");
  filter->add_option("--data", filter_args.data)->required();
  filter->add_option("--encoder", filter_args.encoder)->required();
  filter->add_option("--threshold", filter_args.threshold);
  filter->add_option("-o,--output", filter_args.output)->required();

  GradCheckArgs gc_args;
  auto *gc = app.add_subcommand(
      "grad-check", "analytic vs finite-difference gradient comparison");
  gc->add_option("--configs", gc_args.configs);
  gc->add_option("--seed", gc_args.seed);
  gc->add_option("--tolerance", gc_args.tolerance);

  MakeSynthArgs synth_args;
  auto *synth = app.add_subcommand(
      "make-synth", "generate a synthetic dataset and trial fixture");
  synth->add_option("--out-dir", synth_args.out_dir)->required();
  synth->add_option("--seed", synth_args.config.seed);
  synth->add_option("--dim", synth_args.config.dim);
  synth->add_option("--spoof-types", synth_args.config.spoof_types);
  synth->add_option("--per-class", synth_args.config.per_class);
  synth->add_option("--spread", synth_args.config.cluster_spread);
  synth->add_option("--radius", synth_args.config.cluster_radius);
  synth->add_option("--dev-trials", synth_args.dev_trials);
  synth->add_option("--eval-trials", synth_args.eval_trials);

  ScoreCmArgs score_args;
  auto *score = app.add_subcommand(
      "score-cm", "score trials with a trained encoder as the CM system");
  score->add_option("--encoder", score_args.encoder)->required();
  score->add_option("--trials", score_args.trials)->required();
  score->add_option("--features", score_args.features)->required();
  score->add_option("-o,--output", score_args.output)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*eer) run_eer(eer_args);
    if (*fuse) run_fuse(fuse_args);
    if (*cal) run_calibrate(cal_args);
    if (*cas) run_cascade_cmd(cas_args);
    if (*train_cmd) run_train_toy(train_args);
    if (*ersa_cmd) run_ersa_finetune(ersa_args);
    if (*filter) run_filter_bonafide(filter_args);
    if (*gc) return run_grad_check(gc_args);
    if (*synth) run_make_synth(synth_args);
    if (*score) run_score_cm(score_args);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
