// Copyright 2026 The teles Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "teles/cli.h"

#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "json.hpp"
#include "test_util.h"

namespace teles {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome RunCli(std::vector<std::string> args) {
  args.insert(args.begin(), "teles");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::Run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string ReadFile(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> SynthArgs(const fs::path& dir, const std::string& extra_sub = "0") {
  return {"synth",         "--out",        dir.string(), "--utterances", "40",
          "--vocab",       "20",           "--alphabet-size", "8",       "--attention-dim",
          "3",             "--decoder-dim", "3",         "--char-sub",   extra_sub};
}

TEST(CliTest, HelpShowsDefaults) {
  Outcome train = RunCli({"train", "--help"});
  EXPECT_EQ(train.code, 0);
  for (const char* needle : {"--alpha", "0.75", "--beta", "0.5", "--gamma", "5",
                             "--kappa", "0.2", "--lr", "0.0001", "--epochs", "50",
                             "--threads", "--loss-mode", "per-word"})
    EXPECT_NE(train.out.find(needle), std::string::npos) << needle;
  Outcome acquire = RunCli({"acquire", "--help"});
  EXPECT_NE(acquire.out.find("--delta"), std::string::npos);
  EXPECT_NE(acquire.out.find("0.8"), std::string::npos);
  EXPECT_NE(acquire.out.find("--budget-fraction"), std::string::npos);
  Outcome eval = RunCli({"eval", "--help"});
  EXPECT_NE(eval.out.find("--bins"), std::string::npos);
  EXPECT_NE(eval.out.find("10"), std::string::npos);
}

TEST(CliTest, UsageErrors) {
  EXPECT_NE(RunCli({}).code, 0);
  EXPECT_NE(RunCli({"fly"}).code, 0);
  EXPECT_NE(RunCli({"synth", "--bogus", "1"}).code, 0);
  Outcome missing = RunCli({"score"});
  EXPECT_NE(missing.code, 0);
  EXPECT_NE(missing.err.find("--alphabet"), std::string::npos);
}

TEST(CliTest, SynthIsByteIdenticalAcrossRuns) {
  fs::path a = testing::TempDir("cli_synth_a"), b = testing::TempDir("cli_synth_b");
  ASSERT_EQ(RunCli(SynthArgs(a, "0.1")).code, 0);
  ASSERT_EQ(RunCli(SynthArgs(b, "0.1")).code, 0);
  for (const char* f : {"alphabet.json", "manifest.jsonl", "oracle.jsonl", "splits.json",
                        "train.jsonl", "val.jsonl", "test.jsonl"}) {
    ASSERT_TRUE(fs::exists(a / f)) << f;
    EXPECT_EQ(ReadFile(a / f), ReadFile(b / f)) << f;
  }
}

TEST(CliTest, ScoreOnCleanCorpus) {
  fs::path d = testing::TempDir("cli_score");
  ASSERT_EQ(RunCli(SynthArgs(d)).code, 0);
  Outcome r = RunCli({"score", "--alphabet", (d / "alphabet.json").string(), "--manifest",
                      (d / "manifest.jsonl").string(), "--out", (d / "scores.jsonl").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  Json summary = Json::parse(r.out);
  EXPECT_GE(summary["mean_c"].get<double>(), 0.999);
  EXPECT_EQ(summary["wer"].get<double>(), 0.0);
  std::ifstream in(d / "scores.jsonl");
  std::string line;
  std::getline(in, line);
  Json first = Json::parse(line);
  EXPECT_TRUE(first.contains("ops"));
  EXPECT_TRUE(first["words"][0].contains("c_t"));
  EXPECT_TRUE(first["words"][0].contains("c_l"));
}

TEST(CliTest, ConfigFileWithFlagOverrides) {
  fs::path d = testing::TempDir("cli_config");
  {
    std::ofstream cfg(d / "config.json");
    cfg << R"({"utterances": 5, "vocab": 12, "alphabet-size": 6, "delta": 0.9})";
  }
  Outcome r = RunCli({"synth", "--config", (d / "config.json").string(), "--out",
                      (d / "out").string(), "--utterances", "7"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(Json::parse(r.out)["utterances"].get<int>(), 7);
  Json alphabet = Json::parse(ReadFile(d / "out" / "alphabet.json"));
  EXPECT_EQ(alphabet["tokens"].size(), 8u);  // 6 letters + blank + space

  {
    std::ofstream cfg(d / "bad.json");
    cfg << R"({"no-such-flag": 1})";
  }
  Outcome bad = RunCli({"synth", "--config", (d / "bad.json").string(), "--out",
                        (d / "out2").string()});
  EXPECT_NE(bad.code, 0);
  EXPECT_NE(bad.err.find("no-such-flag"), std::string::npos);
}

TEST(CliTest, EvalReportsMismatchedCounts) {
  fs::path d = testing::TempDir("cli_eval_mismatch");
  {
    std::ofstream p(d / "pred.jsonl");
    p << R"({"id":"u1","pred":[0.5,0.6,0.7],"target":[1,0],"correct":[true,false,true]})"
      << "\n";
  }
  Outcome r = RunCli({"eval", "--predictions", (d / "pred.jsonl").string()});
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.err.find("3 predictions"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("2 targets"), std::string::npos) << r.err;
}

TEST(CliTest, EndToEnd) {
  fs::path d = testing::TempDir("cli_e2e");
  ASSERT_EQ(RunCli(SynthArgs(d, "0.2")).code, 0);
  const std::string alphabet = (d / "alphabet.json").string();
  auto train = [&](const std::string& model) {
    return RunCli({"train", "--alphabet", alphabet, "--train", (d / "train.jsonl").string(),
                   "--val", (d / "val.jsonl").string(), "--model", model, "--epochs", "2",
                   "--hidden", "8,4,2", "--history", (d / "history.csv").string()});
  };
  Outcome t1 = train((d / "model.json").string());
  ASSERT_EQ(t1.code, 0) << t1.err;
  Outcome t2 = train((d / "model2.json").string());
  ASSERT_EQ(t2.code, 0);
  EXPECT_EQ(ReadFile(d / "model.json"), ReadFile(d / "model2.json"));
  EXPECT_EQ(Json::parse(t1.out)["history"].size(), 2u);

  Outcome p = RunCli({"predict", "--alphabet", alphabet, "--manifest",
                      (d / "test.jsonl").string(), "--model", (d / "model.json").string(),
                      "--out", (d / "pred.jsonl").string()});
  ASSERT_EQ(p.code, 0) << p.err;

  for (const char* score : {"pred", "classprob", "entropy"}) {
    Outcome e = RunCli({"eval", "--predictions", (d / "pred.jsonl").string(), "--score", score,
                        "--reliability", (d / "rel.csv").string()});
    ASSERT_EQ(e.code, 0) << e.err;
    Json m = Json::parse(e.out);
    EXPECT_GE(m["ece"].get<double>(), 0.0);
    EXPECT_LE(m["ece"].get<double>(), m["mce"].get<double>() + 1e-12);
  }
  std::ifstream rel(d / "rel.csv");
  std::string header;
  std::getline(rel, header);
  EXPECT_EQ(header, "lower,upper,confidence,accuracy,count");

  Outcome a = RunCli({"acquire", "--alphabet", alphabet, "--manifest",
                      (d / "manifest.jsonl").string(), "--model", (d / "model.json").string(),
                      "--out", (d / "acq").string(), "--budget-fraction", "0.1"});
  ASSERT_EQ(a.code, 0) << a.err;
  Json report = Json::parse(ReadFile(d / "acq" / "report.json"));
  EXPECT_LE(report["budget_used_s"].get<double>(), report["budget_s"].get<double>());
  EXPECT_EQ(report["comparison"].size(), 5u);
  EXPECT_TRUE(fs::exists(d / "acq" / "annotate.jsonl"));
  EXPECT_TRUE(fs::exists(d / "acq" / "pseudo.jsonl"));
  EXPECT_NE(RunCli({"acquire", "--alphabet", alphabet, "--manifest",
                    (d / "manifest.jsonl").string(), "--model", (d / "model.json").string(),
                    "--out", (d / "acq2").string()})
                .code,
            0);  // no budget given

  Outcome dec = RunCli({"decode", "--alphabet", alphabet, "--manifest",
                        (d / "test.jsonl").string(), "--dump"});
  ASSERT_EQ(dec.code, 0);
  std::istringstream lines(dec.out);
  std::string line;
  std::getline(lines, line);
  Json first = Json::parse(line);
  ASSERT_TRUE(first.contains("spans"));
  if (!first["spans"].empty()) EXPECT_GE(first["spans"][0]["first_frame"].get<int>(), 1);

  Outcome grid = RunCli({"grid", "--alphabet", alphabet, "--train",
                         (d / "train.jsonl").string(), "--val", (d / "val.jsonl").string(),
                         "--alpha-grid", "0.5,1", "--beta-grid", "0.5", "--probe-epochs", "1",
                         "--hidden", "4,4,2"});
  ASSERT_EQ(grid.code, 0) << grid.err;
  EXPECT_EQ(Json::parse(grid.out)["table"].size(), 2u);
}

}  // namespace
}  // namespace teles
