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


#include "teles/pipeline.h"

#include <gtest/gtest.h>

#include "test_util.h"

namespace teles {
namespace {

SynthConfig Config(double sub, double del, double ins) {
  SynthConfig c;
  c.n_utterances = 60;
  c.vocab_size = 30;
  c.alphabet_size = 12;
  c.attention_dim = 4;
  c.decoder_dim = 4;
  c.char_sub_rate = sub;
  c.word_del_rate = del;
  c.word_ins_rate = ins;
  return c;
}

TEST(PipelineTest, CleanCorpusTargetsAreOne) {
  SynthCorpus c = SynthGenerate(Config(0, 0, 0));
  Dataset d = BuildDataset(c.records, c.alphabet, TelesParams{});
  ASSERT_FALSE(d.examples.empty());
  for (const auto& ex : d.examples) {
    EXPECT_EQ(ex.op, EditOp::kCorrect);
    EXPECT_NEAR(ex.target, 1.0, 1e-9);
  }
  EXPECT_EQ(d.num_utterances(), c.records.size());
  EXPECT_EQ(d.offsets.back(), d.examples.size());
}

TEST(PipelineTest, InsertedWordsScoreZero) {
  SynthCorpus c = SynthGenerate(Config(0, 0, 0.3));
  Dataset d = BuildDataset(c.records, c.alphabet, TelesParams{});
  std::size_t inserted = 0;
  for (const auto& ex : d.examples)
    if (ex.op == EditOp::kInsertion) {
      ++inserted;
      EXPECT_EQ(ex.target, 0.0);
    }
  EXPECT_GT(inserted, 0u);
}

TEST(PipelineTest, ThreadCountDoesNotChangeTheDataset) {
  SynthCorpus c = SynthGenerate(Config(0.15, 0.05, 0.05));
  Dataset one = BuildDataset(c.records, c.alphabet, TelesParams{}, 1);
  Dataset four = BuildDataset(c.records, c.alphabet, TelesParams{}, 4);
  ASSERT_EQ(one.examples.size(), four.examples.size());
  for (std::size_t i = 0; i < one.examples.size(); ++i) {
    EXPECT_EQ(one.examples[i].x, four.examples[i].x);
    EXPECT_EQ(one.examples[i].target, four.examples[i].target);
  }
}

TEST(PipelineTest, RelabelAndBinarize) {
  SynthCorpus c = SynthGenerate(Config(0.3, 0, 0.1));
  Dataset d = BuildDataset(c.records, c.alphabet, TelesParams{});
  auto relabeled = d.examples;
  Relabel(relabeled, {1.0, 1.0});
  for (const auto& ex : relabeled) {
    if (ex.op == EditOp::kCorrect || ex.op == EditOp::kSubstitution)
      EXPECT_DOUBLE_EQ(ex.target, ex.c_l);
    else
      EXPECT_EQ(ex.target, 0.0);
  }
  auto binary = d.examples;
  BinarizeTargets(binary);
  bool saw_zero = false, saw_one = false;
  for (const auto& ex : binary) {
    EXPECT_EQ(ex.target, ex.correct() ? 1.0 : 0.0);
    saw_zero = saw_zero || ex.target == 0.0;
    saw_one = saw_one || ex.target == 1.0;
  }
  EXPECT_TRUE(saw_zero && saw_one);
}

TEST(PipelineTest, MixedWidthsAreRejected) {
  SynthCorpus c = SynthGenerate(Config(0, 0, 0));
  auto records = c.records;
  records[1].attention = Matrix(records[1].num_frames(), 7, 0.0);
  EXPECT_THROW(BuildDataset(records, c.alphabet, TelesParams{}), std::invalid_argument);
}

}  // namespace
}  // namespace teles
