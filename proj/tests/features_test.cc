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


#include "teles/features.h"

#include <cmath>
#include <fstream>

#include <gtest/gtest.h>

#include "teles/pipeline.h"
#include "test_util.h"

namespace teles {
namespace {

using testing::LetterAlphabet;
using testing::MakeRecord;
using testing::PathOf;

WordSpan Span(std::size_t b, std::size_t l) {
  WordSpan s;
  s.first_frame = b;
  s.last_frame = l;
  return s;
}

TEST(AggregateSpanTest, HandCases) {
  Matrix m(3, 2, std::vector<double>{0, 2, 2, 0, 5, 7});
  EXPECT_EQ(AggregateSpan(m, Span(2, 2)), (std::vector<double>{2, 0}));
  EXPECT_EQ(AggregateSpan(m, Span(1, 2)), (std::vector<double>{1, 1}));
  Matrix constant(4, 3, 0.25);
  EXPECT_EQ(AggregateSpan(constant, Span(1, 4)), (std::vector<double>{0.25, 0.25, 0.25}));
  EXPECT_THROW(AggregateSpan(m, Span(2, 4)), std::out_of_range);
  EXPECT_THROW(AggregateSpan(m, Span(0, 1)), std::out_of_range);
}

TEST(BuildExamplesTest, OneExamplePerHypothesisWord) {
  Alphabet a = LetterAlphabet("ab");  // |L'| = 4
  auto r = MakeRecord("u", PathOf("aa|bb|ab", a), a,
                      {{"a", 0.0, 0.08}, {"b", 0.12, 0.2}, {"ab", 0.24, 0.32}});
  auto analysis = AnalyzeUtterance(r, a, TelesParams{});
  auto ex = BuildExamples(r, analysis.spans, analysis.scored);
  ASSERT_EQ(ex.size(), 3u);
  for (std::size_t n = 0; n < ex.size(); ++n) {
    EXPECT_EQ(ex[n].x.size(), 8u);  // D_a=2, D_h=2, |L'|=4
    EXPECT_EQ(ex[n].hyp_index, n);
    EXPECT_EQ(ex[n].utterance_id, "u");
    double s_sum = 0.0;
    for (std::size_t d = 4; d < 8; ++d) {
      EXPECT_GE(ex[n].x[d], 0.0);
      EXPECT_LE(ex[n].x[d], 1.0);
      s_sum += ex[n].x[d];
    }
    EXPECT_NEAR(s_sum, 1.0, 1e-6);
  }
  // The attention segment of word 2 (frames 4-5) is the mean of those rows.
  EXPECT_DOUBLE_EQ(ex[1].x[0], 0.5 * (r.attention(3, 0) + r.attention(4, 0)));

  auto empty = MakeRecord("e", PathOf("___", a), a, {{"a", 0.0, 0.04}});
  auto none = AnalyzeUtterance(empty, a, TelesParams{});
  EXPECT_TRUE(BuildExamples(empty, none.spans, none.scored).empty());
  EXPECT_THROW(BuildExamples(r, analysis.spans, {}), std::invalid_argument);
}

TEST(StandardizerTest, FitsOnStatesAndLeavesProbabilitiesAlone) {
  FeatureLayout layout{1, 1, 2};
  std::vector<WordExample> ex(3);
  ex[0].x = {1, 10, 0.2, 0.8};
  ex[1].x = {2, 10, 0.4, 0.6};
  ex[2].x = {3, 10, 0.6, 0.4};
  Standardizer s = Standardizer::Fit(ex, layout);
  EXPECT_DOUBLE_EQ(s.mean()[0], 2.0);
  EXPECT_DOUBLE_EQ(s.scale()[0], std::sqrt(2.0 / 3.0));
  EXPECT_DOUBLE_EQ(s.scale()[1], 1.0);  // constant column keeps unit scale
  EXPECT_DOUBLE_EQ(s.mean()[2], 0.0);
  EXPECT_DOUBLE_EQ(s.scale()[3], 1.0);
  auto y = s.Apply(ex[2].x);
  EXPECT_DOUBLE_EQ(y[0], 1.0 / std::sqrt(2.0 / 3.0));
  EXPECT_DOUBLE_EQ(y[1], 0.0);
  EXPECT_DOUBLE_EQ(y[2], 0.6);
  EXPECT_THROW(s.Apply({1.0}), std::invalid_argument);
}

TEST(DatasetTest, OrderOfUtterancesOnlyPermutesExamples) {
  SynthConfig cfg;
  cfg.n_utterances = 12;
  cfg.vocab_size = 20;
  cfg.alphabet_size = 8;
  cfg.attention_dim = 3;
  cfg.decoder_dim = 3;
  cfg.char_sub_rate = 0.2;
  SynthCorpus c = SynthGenerate(cfg);
  Dataset forward = BuildDataset(c.records, c.alphabet, TelesParams{});
  std::vector<UtteranceRecord> reversed(c.records.rbegin(), c.records.rend());
  Dataset backward = BuildDataset(reversed, c.alphabet, TelesParams{}, 3);
  ASSERT_EQ(forward.examples.size(), backward.examples.size());
  const std::size_t u = c.records.size();
  for (std::size_t i = 0; i < u; ++i) {
    const std::size_t j = u - 1 - i;
    const std::size_t n = forward.offsets[i + 1] - forward.offsets[i];
    ASSERT_EQ(n, backward.offsets[j + 1] - backward.offsets[j]);
    for (std::size_t k = 0; k < n; ++k) {
      const auto& x = forward.examples[forward.offsets[i] + k];
      const auto& y = backward.examples[backward.offsets[j] + k];
      EXPECT_EQ(x.x, y.x);
      EXPECT_EQ(x.target, y.target);
    }
  }
}

TEST(FeatureCsvTest, HeaderAndRows) {
  Alphabet a = LetterAlphabet("ab");
  auto r = MakeRecord("u", PathOf("aa|bb", a), a, {{"a", 0.0, 0.08}, {"b", 0.12, 0.2}});
  auto analysis = AnalyzeUtterance(r, a, TelesParams{});
  auto ex = BuildExamples(r, analysis.spans, analysis.scored);
  auto path = testing::TempDir("features_csv") / "f.csv";
  WriteFeatureCsv(path, ex);
  std::ifstream in(path);
  std::string header, row;
  std::getline(in, header);
  EXPECT_EQ(header, "utterance_id,hyp_index,op,c_t,c_l,c,x0,x1,x2,x3,x4,x5,x6,x7");
  int rows = 0;
  while (std::getline(in, row)) ++rows;
  EXPECT_EQ(rows, 2);
}

}  // namespace
}  // namespace teles
