/* Copyright 2026 The ssvep-sfda Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "sfda/checkpoint.hpp"
#include "sfda/network.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const fs::path& work() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / ("sfda_cli_test_" + std::to_string(getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun sfda(const std::string& args) {
  const fs::path log = work() / "last_output.txt";
  const std::string cmd = std::string(SFDA_CLI) + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  CliRun r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(log);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t csv_rows(const fs::path& p) {
  std::ifstream in(p);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) ++n;
  return n - 1;
}

// Two participants, one block, near-noiseless and unmixed.
const fs::path& clean_data() {
  static const fs::path dir = [] {
    const fs::path d = work() / "clean";
    const CliRun r = sfda("synth --participants 2 --blocks 1 --fs 250 --duration 1.0 --snr-db 40 --mixing 0 --seed 3 --out " +
                       d.string());
    EXPECT_EQ(r.code, 0) << r.out;
    return d;
  }();
  return dir;
}

TEST(CliTest, SynthWritesEveryTrial) {
  const fs::path d = work() / "synth";
  const CliRun r = sfda("synth --participants 3 --blocks 2 --fs 250 --duration 0.4 --snr-db 0 --mixing 0.5 --seed 7 --out " +
                     d.string());
  ASSERT_EQ(r.code, 0) << r.out;
  std::size_t files = 0;
  for (const auto& e : fs::recursive_directory_iterator(d)) files += e.path().extension() == ".f32";
  EXPECT_EQ(files, 3u * 2u * 40u);
  const std::string first = slurp(d / "manifest.json");
  ASSERT_EQ(sfda("synth --participants 3 --blocks 2 --fs 250 --duration 0.4 --snr-db 0 --mixing 0.5 --seed 7 --out " +
                 (work() / "synth2").string())
                .code,
            0);
  EXPECT_EQ(first, slurp(work() / "synth2" / "manifest.json"));
  EXPECT_EQ(slurp(d / "S02" / fs::directory_iterator(d / "S02")->path().filename()),
            slurp(work() / "synth2" / "S02" / fs::directory_iterator(d / "S02")->path().filename()));
}

TEST(CliTest, UsageErrors) {
  EXPECT_EQ(sfda("synth --participants 2").code, 2);
  EXPECT_EQ(sfda("synth --participants 2 --bogus 1 --out x").code, 2);
  EXPECT_EQ(sfda("synth --participants zero --out x").code, 2);
  EXPECT_EQ(sfda("").code, 2);
  EXPECT_EQ(sfda("teleport").code, 2);
}

TEST(CliTest, AdaptHelpShowsDefaults) {
  const CliRun r = sfda("adapt --help");
  ASSERT_EQ(r.code, 0);
  for (const char* s : {"--alpha", "0.0001", "--beta", "0.001", "--max-stalled", "--adapt-epochs", "50",
                        "0,0.2,0.4,0.6,0.8,1", "--delta", "0.15", "--config"}) {
    EXPECT_NE(r.out.find(s), std::string::npos) << s;
  }
  EXPECT_NE(r.out.find("--max-stalled INT [3]"), std::string::npos) << r.out;
}

TEST(CliTest, PretrainZeroEpochsIsInitialization) {
  const fs::path out = work() / "pre0";
  const CliRun r = sfda("pretrain --data " + clean_data().string() +
                     " --exclude S01 --epochs 0 --filters 4 --train-seed 11 --duration 0.4 --out " + out.string());
  ASSERT_EQ(r.code, 0) << r.out;
  const sfda::NetworkParams p = sfda::checkpoint_load(out / "pretrained.ckpt");
  EXPECT_EQ(p.to_double(), sfda::initialize_params(p.arch(), 11).to_double());
  std::ifstream in(out / "pretrain_trace.json");
  const json trace = json::parse(in);
  EXPECT_EQ(trace.at("participants"), 1);
  EXPECT_EQ(trace.at("trials"), 40);
  EXPECT_TRUE(trace.at("loss").empty());
}

TEST(CliTest, PretrainUnknownExclusion) {
  EXPECT_EQ(sfda("pretrain --data " + clean_data().string() + " --exclude S09 --epochs 0 --out " +
                 (work() / "bad").string())
                .code,
            1);
  EXPECT_EQ(sfda("pretrain --data " + (work() / "nowhere").string() + " --out " + (work() / "bad").string()).code, 1);
}

TEST(CliTest, AdaptSingleLambdaDeterministic) {
  const fs::path pre = work() / "pre";
  ASSERT_EQ(sfda("pretrain --data " + clean_data().string() +
                 " --exclude S01 --epochs 3 --filters 4 --lr 1e-3 --duration 0.4 --out " + pre.string())
                .code,
            0);
  const std::string base = "adapt --data " + clean_data().string() + " --target S01 --ckpt " +
                           (pre / "pretrained.ckpt").string() +
                           " --duration 0.4 --lambda-grid 0.4 --adapt-epochs 2 --max-iterations 2 --out ";
  const CliRun a = sfda(base + (work() / "ad1").string());
  ASSERT_EQ(a.code, 0) << a.out;
  ASSERT_EQ(sfda(base + (work() / "ad2").string()).code, 0);
  std::ifstream in(work() / "ad1" / "adaptation_trace.json");
  const json trace = json::parse(in);
  EXPECT_EQ(trace.at("lambda_max"), 0.4);
  EXPECT_EQ(trace.at("runs").size(), 1u);
  EXPECT_EQ(trace.at("labels").size(), 40u);
  EXPECT_EQ(slurp(work() / "ad1" / "adapted.ckpt"), slurp(work() / "ad2" / "adapted.ckpt"));
  EXPECT_EQ(slurp(work() / "ad1" / "adaptation_trace.json"), slurp(work() / "ad2" / "adaptation_trace.json"));

  EXPECT_EQ(sfda("adapt --data " + clean_data().string() + " --target S07 --ckpt " + (pre / "pretrained.ckpt").string() +
                 " --out " + (work() / "ad3").string())
                .code,
            1);
}

TEST(CliTest, EvalCcaOnCleanData) {
  const fs::path rep = work() / "report";
  const CliRun r = sfda("eval --data " + clean_data().string() + " --methods standard_cca,fbcca --durations 0.4,1.0 --quiet --report-dir " +
                     rep.string());
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(csv_rows(rep / "results.csv"), 2u * 2u * 2u);
  std::ifstream in(rep / "report.json");
  const json report = json::parse(in);
  for (const auto& rec : report.at("records")) EXPECT_EQ(rec.at("accuracy"), 1.0) << rec.dump();
}

TEST(CliTest, EvalConfigFlagsOverride) {
  const fs::path cfg = work() / "cfg.json";
  std::ofstream(cfg) << R"({"evaluation": {"methods": ["fbcca"], "durations": [0.4]}})";
  const fs::path rep = work() / "report_cfg";
  ASSERT_EQ(sfda("eval --data " + clean_data().string() + " --config " + cfg.string() + " --quiet --report-dir " +
                 rep.string())
                .code,
            0);
  EXPECT_EQ(csv_rows(rep / "results.csv"), 2u);
  ASSERT_EQ(sfda("eval --data " + clean_data().string() + " --config " + cfg.string() +
                 " --durations 0.4,0.6 --quiet --report-dir " + rep.string())
                .code,
            0);
  EXPECT_EQ(csv_rows(rep / "results.csv"), 4u);

  std::ofstream(work() / "bad_cfg.json") << R"({"evaluation": {"speed": 3}})";
  EXPECT_EQ(sfda("eval --data " + clean_data().string() + " --config " + (work() / "bad_cfg.json").string() +
                 " --report-dir " + rep.string())
                .code,
            1);
}

TEST(CliTest, EvalUnlabeledTargetFails) {
  const fs::path d = work() / "unlabeled";
  fs::remove_all(d);
  fs::copy(clean_data(), d, fs::copy_options::recursive);
  json manifest;
  {
    std::ifstream in(d / "manifest.json");
    manifest = json::parse(in);
  }
  for (auto& t : manifest["participants"][0]["trials"]) t["char"] = nullptr;
  std::ofstream(d / "manifest.json") << manifest.dump();
  const CliRun r = sfda("eval --data " + d.string() + " --methods fbcca --durations 0.4 --quiet --report-dir " +
                     (work() / "report_unlabeled").string());
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("unlabeled"), std::string::npos) << r.out;
}

}  // namespace
