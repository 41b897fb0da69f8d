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


#include "teles/decode.h"

#include <gtest/gtest.h>

#include "test_util.h"

namespace teles {
namespace {

using testing::LetterAlphabet;
using testing::PathOf;
using testing::PeakyProbs;

TEST(GreedyDecodeTest, AllBlank) {
  Alphabet a = LetterAlphabet("ab");
  Matrix probs = PeakyProbs(PathOf("____", a), a.size());
  EXPECT_EQ(GreedyDecode(probs), (FramePath{0, 0, 0, 0}));
}

TEST(GreedyDecodeTest, PeaksFollowThePath) {
  Alphabet a = LetterAlphabet("ab");
  EXPECT_EQ(GreedyDecode(PeakyProbs(PathOf("a_b", a), a.size())), PathOf("a_b", a));
}

TEST(GreedyDecodeTest, TiesGoToTheLowestIndex) {
  Matrix probs(1, 6, 0.0);
  probs(0, 2) = 0.4;
  probs(0, 5) = 0.4;
  probs(0, 0) = 0.2;
  EXPECT_EQ(GreedyDecode(probs), (FramePath{2}));
}

TEST(GreedyDecodeTest, EmptyMatrixThrows) {
  EXPECT_THROW(GreedyDecode(Matrix()), std::invalid_argument);
}

TEST(CollapseTest, MergesRepeatsThenDropsBlanks) {
  Alphabet a = LetterAlphabet("ab");
  EXPECT_EQ(CollapsePath(PathOf("_aa_b", a), a), (std::vector<int>{2, 3}));
  EXPECT_EQ(CollapsePath(PathOf("a_a", a), a), (std::vector<int>{2, 2}));
  EXPECT_TRUE(CollapsePath(PathOf("___", a), a).empty());
}

TEST(WordSpansTest, InteriorBlanksStayInsideTheSpan) {
  Alphabet a = LetterAlphabet("ab");
  auto spans = WordSpans(PathOf("aa_b_", a), a, 0.04);
  ASSERT_EQ(spans.size(), 1u);
  EXPECT_EQ(spans[0].text, "ab");
  EXPECT_EQ(spans[0].first_frame, 1u);
  EXPECT_EQ(spans[0].last_frame, 4u);
  EXPECT_DOUBLE_EQ(spans[0].start_s, 0.0);
  EXPECT_DOUBLE_EQ(spans[0].end_s, 0.16);
}

TEST(WordSpansTest, SpaceSeparatesWords) {
  Alphabet a = LetterAlphabet("ab");
  auto spans = WordSpans(PathOf("a_|_bb", a), a, 0.1);
  ASSERT_EQ(spans.size(), 2u);
  EXPECT_EQ(spans[0].text, "a");
  EXPECT_EQ(spans[1].text, "b");
  EXPECT_LT(spans[0].last_frame, spans[1].first_frame);
  EXPECT_EQ(spans[1].first_frame, 5u);
  EXPECT_EQ(spans[1].last_frame, 6u);
}

TEST(WordSpansTest, DegenerateSpacingYieldsNoEmptyWords) {
  Alphabet a = LetterAlphabet("ab");
  auto spans = WordSpans(PathOf("||a||_|b|", a), a, 0.04);
  EXPECT_EQ(SpanTexts(spans), (std::vector<std::string>{"a", "b"}));
  EXPECT_TRUE(WordSpans({}, a, 0.04).empty());
}

TEST(WordSpansTest, MatchesCollapsedRenderingOnRandomPaths) {
  Alphabet a = LetterAlphabet("abcd");
  Rng rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t len = 1 + rng.UniformIndex(30);
    FramePath path(len);
    for (auto& t : path) t = static_cast<int>(rng.UniformIndex(a.size()));

    // Oracle: build the transcript directly from the frame sequence.
    std::string direct;
    int prev = -1;
    for (int t : path) {
      if (t != prev && t != a.blank_index())
        direct += t == a.space_index() ? std::string(" ") : a.token(t);
      prev = t;
    }
    std::vector<std::string> words;
    std::string cur;
    for (char ch : direct + " ") {
      if (ch == ' ') {
        if (!cur.empty()) words.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }

    auto spans = WordSpans(path, a, 0.04);
    ASSERT_EQ(SpanTexts(spans), words);
    // Re-collapsing a collapsed sequence only merges the repeats that a
    // blank had kept apart; without such repeats it is a fixed point.
    auto once = CollapsePath(path, a);
    std::vector<int> merged;
    for (int t : once)
      if (merged.empty() || merged.back() != t) merged.push_back(t);
    EXPECT_EQ(CollapsePath(once, a), merged);
    EXPECT_EQ(CollapsePath(merged, a), merged);
    for (std::size_t i = 0; i < spans.size(); ++i) {
      EXPECT_LE(1u, spans[i].first_frame);
      EXPECT_LE(spans[i].first_frame, spans[i].last_frame);
      EXPECT_LE(spans[i].last_frame, len);
      if (i + 1 < spans.size()) EXPECT_LT(spans[i].last_frame, spans[i + 1].first_frame);
      const int first = path[spans[i].first_frame - 1];
      const int last = path[spans[i].last_frame - 1];
      EXPECT_NE(first, a.blank_index());
      EXPECT_NE(first, a.space_index());
      EXPECT_NE(last, a.blank_index());
      EXPECT_NE(last, a.space_index());
    }
  }
}

}  // namespace
}  // namespace teles
