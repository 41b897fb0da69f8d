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


#include "teles/acquisition.h"

#include <algorithm>
#include <set>
#include <unordered_map>

#include <gtest/gtest.h>

#include "teles/pipeline.h"

namespace teles {
namespace {

std::vector<UtteranceConfidence> Pool(const std::vector<double>& a,
                                      double duration = 10.0) {
  std::vector<UtteranceConfidence> pool;
  for (std::size_t i = 0; i < a.size(); ++i)
    pool.push_back({"#" + std::to_string(i + 1), a[i], duration, 3});
  return pool;
}

TEST(MeanConfidenceTest, HandCases) {
  EXPECT_DOUBLE_EQ(MeanConfidence(std::vector<double>{0.5, 0.7}), 0.6);
  EXPECT_EQ(MeanConfidence(std::vector<double>{}), 0.0);
  EXPECT_EQ(MeanConfidence(std::vector<double>{1.0}), 1.0);
}

TEST(AcquireTest, PicksTheLeastConfidentWithinBudget) {
  AcquisitionReport r = Acquire(Pool({0.9, 0.3, 0.6}), 10.0, 0.8);
  EXPECT_EQ(r.annotate, (std::vector<std::string>{"#2"}));
  EXPECT_EQ(r.pseudo, (std::vector<std::string>{"#1"}));
  EXPECT_EQ(r.ranked, (std::vector<std::string>{"#2", "#3", "#1"}));
  EXPECT_DOUBLE_EQ(r.budget_used_s, 10.0);
  EXPECT_DOUBLE_EQ(r.annotate_hours(), 10.0 / 3600.0);
}

TEST(AcquireTest, ZeroBudgetAndFullThreshold) {
  AcquisitionReport r = Acquire(Pool({0.9, 0.3, 0.85}), 0.0, 0.8);
  EXPECT_TRUE(r.annotate.empty());
  EXPECT_EQ(r.pseudo, (std::vector<std::string>{"#3", "#1"}));
  r = Acquire(Pool({0.9, 0.3, 0.99}), 5.0, 1.0);
  EXPECT_TRUE(r.pseudo.empty());
  r = Acquire(Pool({0.9, 0.3, 0.6}), 10.0, 0.0);
  EXPECT_EQ(r.pseudo, (std::vector<std::string>{"#3", "#1"}));
}

TEST(AcquireTest, SkipsWhatDoesNotFitAndContinues) {
  std::vector<UtteranceConfidence> pool{
      {"a", 0.1, 8.0, 2}, {"b", 0.2, 5.0, 2}, {"c", 0.3, 2.0, 2}};
  AcquisitionReport r = Acquire(pool, 10.0, 0.8);
  EXPECT_EQ(r.annotate, (std::vector<std::string>{"a", "c"}));
  EXPECT_DOUBLE_EQ(r.budget_used_s, 10.0);
}

TEST(AcquireTest, TiesBreakById) {
  std::vector<UtteranceConfidence> pool{{"z", 0.5, 1, 1}, {"a", 0.5, 1, 1}, {"m", 0.5, 1, 1}};
  AcquisitionReport r = Acquire(pool, 2.0, 0.8);
  EXPECT_EQ(r.ranked, (std::vector<std::string>{"a", "m", "z"}));
  EXPECT_EQ(r.annotate, (std::vector<std::string>{"a", "m"}));
}

TEST(AcquireTest, RejectsBadArguments) {
  EXPECT_THROW(Acquire(Pool({0.5}), -1.0, 0.8), std::invalid_argument);
  EXPECT_THROW(Acquire(Pool({0.5}), 1.0, 1.5), std::invalid_argument);
}

TEST(AcquireTest, InvariantsHoldOnRandomPools) {
  Rng rng(77);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = rng.UniformIndex(30);
    std::vector<UtteranceConfidence> pool;
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      // Coarse confidences so ties are common.
      const double a = rng.Bernoulli(0.2) ? 0.0 : std::round(rng.Uniform() * 20) / 20;
      const double d = 0.5 + 10.0 * rng.Uniform();
      pool.push_back({"u" + std::to_string(rng.UniformIndex(1000000)) + "_" + std::to_string(i),
                      a, d, 1});
      total += d;
    }
    const double budget = rng.Uniform() * total;
    const double delta = rng.Uniform();
    AcquisitionReport r = Acquire(pool, budget, delta);

    std::unordered_map<std::string, const UtteranceConfidence*> by_id;
    for (const auto& u : pool) by_id[u.id] = &u;
    std::set<std::string> annotate(r.annotate.begin(), r.annotate.end());
    double used = 0.0;
    for (std::size_t i = 0; i < r.annotate.size(); ++i) {
      used += by_id[r.annotate[i]]->duration_s;
      if (i > 0) {
        const auto* prev = by_id[r.annotate[i - 1]];
        const auto* cur = by_id[r.annotate[i]];
        ASSERT_TRUE(prev->a < cur->a || (prev->a == cur->a && prev->id < cur->id));
      }
    }
    ASSERT_LE(r.budget_used_s, budget);
    ASSERT_NEAR(used, r.budget_used_s, 1e-9);
    for (const auto& id : r.pseudo) {
      ASSERT_EQ(annotate.count(id), 0u);
      ASSERT_GE(by_id[id]->a, delta);
    }
    // Everything left out of the annotate set either would not fit or
    // ranks after it.
    std::size_t expected_pseudo = 0;
    for (const auto& u : pool)
      if (u.a >= delta && !annotate.count(u.id)) ++expected_pseudo;
    ASSERT_EQ(r.pseudo.size(), expected_pseudo);
    for (const auto& u : pool)
      if (!annotate.count(u.id)) ASSERT_GT(u.duration_s + r.budget_used_s, budget - 1e-9);
    ASSERT_EQ(r.ranked.size(), pool.size());
  }
}

TEST(PathProbabilityTest, GeometricMeanOfArgmax) {
  Matrix probs(2, 3, std::vector<double>{0.8, 0.1, 0.1, 0.2, 0.5, 0.3});
  EXPECT_NEAR(PathProbability(probs), std::sqrt(0.8 * 0.5), 1e-15);
  EXPECT_THROW(PathProbability(Matrix()), std::invalid_argument);
}

class SimulateRoundTest : public ::testing::Test {
 protected:
  static SynthCorpus Corpus(double sub) {
    SynthConfig cfg;
    cfg.n_utterances = 40;
    cfg.vocab_size = 20;
    cfg.alphabet_size = 8;
    cfg.attention_dim = 3;
    cfg.decoder_dim = 3;
    cfg.char_sub_rate = sub;
    return SynthGenerate(cfg);
  }
  static WlcModel Model(const SynthCorpus& c) {
    Dataset d = BuildDataset(c.records, c.alphabet, TelesParams{});
    TrainConfig config;
    config.epochs = 1;
    config.hidden = {8, 4, 2};
    return Train(d.examples, {}, d.layout, config, ShrinkParams{}).model;
  }
};

TEST_F(SimulateRoundTest, CleanCorpusHasZeroWerEverywhere) {
  SynthCorpus c = Corpus(0.0);
  WlcModel model = Model(c);
  double total = 0.0;
  for (const auto& r : c.records) total += r.duration_s();
  RoundResult round = SimulateRound(c.records, c.alphabet, model, total / 10, 0.8, 1);
  ASSERT_EQ(round.comparison.size(), 5u);
  EXPECT_EQ(*round.Find("annotate").wer, 0.0);
  EXPECT_EQ(*round.Find("corpus").wer, 0.0);
  EXPECT_EQ(round.Find("random").size, round.Find("annotate").size);
  EXPECT_LE(round.Find("path-prob").duration_s, total / 10 + 1e-9);
  EXPECT_THROW(round.Find("nothing"), std::out_of_range);
}

TEST_F(SimulateRoundTest, ZeroThresholdPseudoLabelsTheRest) {
  SynthCorpus c = Corpus(0.2);
  WlcModel model = Model(c);
  RoundResult round = SimulateRound(c.records, c.alphabet, model, 20.0, 0.0, 3, false);
  EXPECT_EQ(round.report.annotate.size() + round.report.pseudo.size(), c.records.size());
  EXPECT_EQ(round.comparison.size(), 4u);
  // Deterministic for a fixed seed.
  RoundResult again = SimulateRound(c.records, c.alphabet, model, 20.0, 0.0, 3, false);
  EXPECT_EQ(again.Find("random").wer, round.Find("random").wer);
}

TEST_F(SimulateRoundTest, MissingInputsAreErrors) {
  SynthCorpus c = Corpus(0.0);
  EXPECT_THROW(SimulateRound(c.records, c.alphabet, WlcModel(), 10.0, 0.8, 1),
               std::invalid_argument);
  auto records = c.records;
  records[3].reference.clear();
  EXPECT_THROW(SimulateRound(records, c.alphabet, Model(c), 10.0, 0.8, 1),
               std::invalid_argument);
}

}  // namespace
}  // namespace teles
