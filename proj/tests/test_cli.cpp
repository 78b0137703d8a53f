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

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const std::string kBin = SASVKIT_BIN;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("sasvkit-cli-" + std::to_string(std::rand()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  fs::path operator/(const std::string &name) const { return path / name; }
};

int run(const std::string &args, const fs::path &stdout_file = {}) {
  std::string cmd = kBin + " " + args;
  if (!stdout_file.empty()) cmd += " > " + stdout_file.string();
  cmd += " 2>/dev/null";
  int status = std::system(cmd.c_str());
  return status < 0 ? status : WEXITSTATUS(status);
}

void write_file(const fs::path &p, const std::string &text) {
  std::ofstream out(p);
  out << text;
}

std::string slurp(const fs::path &p) {
  std::ifstream in(p);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Pull the numeric value after a "NAME " prefix out of a report.
double report_value(const std::string &text, const std::string &name) {
  auto at = text.find(name + " ");
  REQUIRE(at != std::string::npos);
  return std::stod(text.substr(at + name.size() + 1));
}

}  // namespace

TEST_CASE("eer: perfectly separated fixture reports zeros") {
  TempDir dir;
  write_file(dir / "t.trials",
             "a x target\nb y nontarget\nc z spoof:A01\n");
  write_file(dir / "s.score", "a x 0.9\nb y 0.1\nc z 0.2\n");
  REQUIRE(run("eer --trials " + (dir / "t.trials").string() + " --scores " +
                  (dir / "s.score").string(),
              dir / "out.txt") == 0);
  std::string out = slurp(dir / "out.txt");
  CHECK(out.find("SV-EER 0.000") != std::string::npos);
  CHECK(out.find("SPF-EER 0.000") != std::string::npos);
  CHECK(out.find("SASV-EER 0.000") != std::string::npos);
}

TEST_CASE("eer: spoofs that fool the system raise SPF and SASV above SV") {
  TempDir dir;
  // Targets and nontargets separate cleanly; spoof trials score high.
  std::ostringstream trials, scores;
  for (int i = 0; i < 10; ++i) {
    trials << "s" << i << " tgt" << i << " target\n";
    scores << "s" << i << " tgt" << i << " " << 0.8 + 0.01 * i << "\n";
    trials << "s" << i << " non" << i << " nontarget\n";
    scores << "s" << i << " non" << i << " " << 0.1 + 0.01 * i << "\n";
    trials << "s" << i << " spf" << i << " spoof:A01\n";
    scores << "s" << i << " spf" << i << " " << 0.75 + 0.02 * i << "\n";
  }
  write_file(dir / "t.trials", trials.str());
  write_file(dir / "s.score", scores.str());
  REQUIRE(run("eer --trials " + (dir / "t.trials").string() + " --scores " +
                  (dir / "s.score").string(),
              dir / "out.txt") == 0);
  std::string out = slurp(dir / "out.txt");
  double sv = report_value(out, "SV-EER");
  double spf = report_value(out, "SPF-EER");
  double sasv = report_value(out, "SASV-EER");
  CHECK(sv == 0.0);
  CHECK(spf > sv);
  CHECK(sasv > sv);
}

TEST_CASE("eer: missing input file exits nonzero") {
  TempDir dir;
  write_file(dir / "t.trials", "a x target\nb y nontarget\nc z spoof\n");
  CHECK(run("eer --trials " + (dir / "t.trials").string() +
            " --scores " + (dir / "nope.score").string()) != 0);
}

TEST_CASE("eer: malformed trial file exits nonzero") {
  TempDir dir;
  write_file(dir / "t.trials", "a x bogus\n");
  write_file(dir / "s.score", "a x 0.5\n");
  CHECK(run("eer --trials " + (dir / "t.trials").string() +
            " --scores " + (dir / "s.score").string()) != 0);
}

TEST_CASE("fuse: sigmoid-product tolerates scale mismatch better than sum") {
  TempDir dir;
  // System A separates classes on a small scale. System B carries no
  // information: large positive scores with noise whose range swamps A's
  // margin. A raw sum is dominated by B's noise; squashing maps all of B
  // close to one, so the product keeps A's ordering.
  std::ostringstream trials, sa, sb;
  for (int i = 0; i < 42; ++i) {
    std::string kind = (i % 3 == 0) ? "target"
                       : (i % 3 == 1) ? "nontarget"
                                      : "spoof:A01";
    double a = (i % 3 == 0 ? 1.0 : -1.0) + 0.01 * (i % 7);
    double b = 10.0 + 8.0 * ((i * 37) % 100) / 100.0;  // pseudo-random noise
    trials << "e" << i << " u" << i << " " << kind << "\n";
    sa << "e" << i << " u" << i << " " << a << "\n";
    sb << "e" << i << " u" << i << " " << b << "\n";
  }
  write_file(dir / "t.trials", trials.str());
  write_file(dir / "a.score", sa.str());
  write_file(dir / "b.score", sb.str());

  auto fuse_and_eer = [&](const std::string &method) {
    std::string fused = (dir / (method + ".score")).string();
    REQUIRE(run("fuse --method " + method + " --trials " +
                (dir / "t.trials").string() + " -o " + fused + " " +
                (dir / "a.score").string() + " " +
                (dir / "b.score").string()) == 0);
    REQUIRE(run("eer --trials " + (dir / "t.trials").string() + " --scores " +
                    fused,
                dir / "eer.txt") == 0);
    return report_value(slurp(dir / "eer.txt"), "SASV-EER");
  };
  double sum_eer = fuse_and_eer("sum");
  double prod_eer = fuse_and_eer("sigmoid-product");
  CHECK(prod_eer < sum_eer);
  CHECK(prod_eer == 0.0);
}

TEST_CASE("fuse: emits a manifest next to the output") {
  TempDir dir;
  write_file(dir / "t.trials", "a x target\nb y nontarget\n");
  write_file(dir / "s.score", "a x 0.9\nb y 0.1\n");
  std::string out = (dir / "fused.score").string();
  REQUIRE(run("fuse --method sum --trials " + (dir / "t.trials").string() +
              " -o " + out + " " + (dir / "s.score").string()) == 0);
  std::string manifest = slurp(dir / "fused.score.manifest.json");
  CHECK(manifest.find("\"subcommand\": \"fuse\"") != std::string::npos);
}

TEST_CASE("train-toy: same seed produces byte-identical encoders") {
  TempDir dir;
  REQUIRE(run("make-synth --out-dir " + dir.path.string() +
              " --seed 5 --dim 3 --spoof-types 2 --per-class 20") == 0);
  std::string data = (dir / "train.data").string();
  std::string common = "train-toy --data " + data +
                       " --epochs 10 --batch-size 16 --seed 7 -o ";
  REQUIRE(run(common + (dir / "enc1.txt").string()) == 0);
  REQUIRE(run(common + (dir / "enc2.txt").string()) == 0);
  std::string e1 = slurp(dir / "enc1.txt");
  CHECK(!e1.empty());
  CHECK(e1 == slurp(dir / "enc2.txt"));
}

TEST_CASE("cascade: rejected trials carry the epsilon floor") {
  TempDir dir;
  write_file(dir / "dev.trials",
             "a x target\nb y nontarget\nc z spoof:A01\n");
  write_file(dir / "dev.sv", "a x 0.9\nb y 0.1\nc z 0.8\n");
  write_file(dir / "dev.cm", "a x 0.9\nb y 0.8\nc z 0.2\n");
  write_file(dir / "eval.trials",
             "d p target\ne q nontarget\nf r spoof:A01\n");
  write_file(dir / "eval.sv", "d p 0.95\ne q 0.05\nf r 0.85\n");
  write_file(dir / "eval.cm", "d p 0.9\ne q 0.7\nf r 0.1\n");
  fs::path out_dir = dir / "casc";
  REQUIRE(run("cascade --order asv-cm"
              " --dev-trials " + (dir / "dev.trials").string() +
              " --dev-sv " + (dir / "dev.sv").string() +
              " --dev-cm " + (dir / "dev.cm").string() +
              " --eval-trials " + (dir / "eval.trials").string() +
              " --eval-sv " + (dir / "eval.sv").string() +
              " --eval-cm " + (dir / "eval.cm").string() +
              " --epsilon -7.5 --out-dir " + out_dir.string()) == 0);
  // The nontarget eval trial fails the SV gate and must score exactly -7.5.
  std::string eval_scores = slurp(out_dir / "eval.cascade.score");
  CHECK(eval_scores.find("e q -7.5") != std::string::npos);
  // Accepted trials keep their stage-two scores.
  CHECK(eval_scores.find("d p 0.9") != std::string::npos);
  CHECK(fs::exists(out_dir / "manifest.json"));
  CHECK(fs::exists(out_dir / "dev.report.txt"));
}

TEST_CASE("filter-bonafide reports how many records were kept") {
  TempDir dir;
  REQUIRE(run("make-synth --out-dir " + dir.path.string() +
              " --seed 2 --dim 2 --spoof-types 1 --per-class 15") == 0);
  std::string data = (dir / "train.data").string();
  REQUIRE(run("train-toy --data " + data +
              " --epochs 30 --batch-size 10 --seed 2 -o " +
              (dir / "enc.txt").string()) == 0);
  REQUIRE(run("filter-bonafide --data " + data + " --encoder " +
                  (dir / "enc.txt").string() + " --threshold 0.5 -o " +
                  (dir / "kept.data").string(),
              dir / "out.txt") == 0);
  std::string out = slurp(dir / "out.txt");
  CHECK(out.find("kept") != std::string::npos);
  CHECK(out.find("of 30") != std::string::npos);
}

TEST_CASE("grad-check subcommand passes at the default tolerance") {
  CHECK(run("grad-check --configs 5 --seed 3") == 0);
}

TEST_CASE("unknown subcommand exits nonzero") {
  CHECK(run("frobnicate") != 0);
}
