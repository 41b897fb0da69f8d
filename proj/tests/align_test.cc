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


#include "teles/align.h"

#include <gtest/gtest.h>

#include "teles/corpus.h"

namespace teles {
namespace {

using Words = std::vector<std::string>;

// Plain recursion, no memo: the definition of edit distance.
std::size_t BruteForceCost(const Words& r, std::size_t i, const Words& h,
                           std::size_t j) {
  if (i == r.size()) return h.size() - j;
  if (j == h.size()) return r.size() - i;
  return std::min({BruteForceCost(r, i + 1, h, j + 1) + (r[i] == h[j] ? 0 : 1),
                   BruteForceCost(r, i + 1, h, j) + 1,
                   BruteForceCost(r, i, h, j + 1) + 1});
}

// Checks the structural invariants of a trace over (ref, hyp).
void ExpectValidTrace(const AlignmentTrace& t, const Words& ref, const Words& hyp) {
  std::size_t next_ref = 0, next_hyp = 0;
  for (const auto& e : t.ops) {
    switch (e.op) {
      case EditOp::kCorrect:
      case EditOp::kSubstitution:
        ASSERT_TRUE(e.ref_index && e.hyp_index);
        EXPECT_EQ(*e.ref_index, next_ref++);
        EXPECT_EQ(*e.hyp_index, next_hyp++);
        EXPECT_EQ(ref[*e.ref_index] == hyp[*e.hyp_index], e.op == EditOp::kCorrect);
        break;
      case EditOp::kDeletion:
        ASSERT_TRUE(e.ref_index && !e.hyp_index);
        EXPECT_EQ(*e.ref_index, next_ref++);
        break;
      case EditOp::kInsertion:
        ASSERT_TRUE(!e.ref_index && e.hyp_index);
        EXPECT_EQ(*e.hyp_index, next_hyp++);
        break;
    }
  }
  EXPECT_EQ(next_ref, ref.size());
  EXPECT_EQ(next_hyp, hyp.size());
}

TEST(AlignWordsTest, IdenticalSequences) {
  Words w{"a", "b", "c"};
  EXPECT_EQ(AlignWords(w, w).OpString(), "CCC");
}

TEST(AlignWordsTest, TamilExampleOps) {
  Words ref = SplitWords(
      "whatsapp kuzhumam ceydhu kondirukkiradhu adharku valla rahman kooli "
      "kodukka podhumaanavan");
  Words hyp = SplitWords(
      "Maarshak kuzhumam teydhu kondirukkiradhu adharku valla ratman kali "
      "kodukka podhum aanavan");
  ASSERT_EQ(ref.size(), 10u);
  ASSERT_EQ(hyp.size(), 11u);
  AlignmentTrace t = AlignWords(ref, hyp);
  EXPECT_EQ(t.OpString(), "SCSCCCSSCIS");
  ExpectValidTrace(t, ref, hyp);
}

TEST(AlignWordsTest, EmptyHypothesisDeletesEverything) {
  EXPECT_EQ(AlignWords({"a", "b"}, {}).OpString(), "DD");
  EXPECT_EQ(AlignWords({}, {"a"}).OpString(), "I");
  EXPECT_EQ(AlignWords({}, {}).OpString(), "");
}

TEST(AlignWordsTest, TieBreakPrefersDiagonalThenDeletion) {
  // [a,b] vs [c]: S+D and D+S both cost 2; backtrace from the end takes
  // the diagonal first, so the last reference word is substituted.
  EXPECT_EQ(AlignWords({"a", "b"}, {"c"}).OpString(), "DS");
  EXPECT_EQ(AlignWords({"a"}, {"b", "c"}).OpString(), "IS");
}

TEST(AlignWordsTest, CostMatchesRecursionOnSmallExhaustiveSet) {
  const Words vocab{"x", "y", "z"};
  auto enumerate = [&](std::size_t len) {
    std::vector<Words> all{{}};
    for (std::size_t k = 0; k < len; ++k) {
      std::vector<Words> next;
      for (const auto& w : all)
        for (const auto& v : vocab) {
          next.push_back(w);
          next.back().push_back(v);
        }
      all = std::move(next);
    }
    return all;
  };
  for (std::size_t n = 0; n <= 4; ++n)
    for (std::size_t m = 0; m <= 4; ++m)
      for (const auto& ref : enumerate(n))
        for (const auto& hyp : enumerate(m)) {
          AlignmentTrace t = AlignWords(ref, hyp);
          ASSERT_EQ(t.Cost(), BruteForceCost(ref, 0, hyp, 0));
          ExpectValidTrace(t, ref, hyp);
          // Swapping the roles swaps insertions and deletions.
          AlignmentTrace s = AlignWords(hyp, ref);
          EXPECT_EQ(s.Cost(), t.Cost());
        }
}

TEST(ErrorRateTest, WordErrorRate) {
  EXPECT_DOUBLE_EQ(Wer({{{"a", "b"}, {"a", "b"}}}), 0.0);
  EXPECT_DOUBLE_EQ(Wer({{{"a", "b", "c", "d"}, {"a", "x", "c"}}}), 50.0);
  EXPECT_DOUBLE_EQ(Wer({{{"a", "b", "c", "d"}, {"a", "b", "e", "c", "d"}}}), 25.0);
  // Not capped at 100.
  EXPECT_DOUBLE_EQ(Wer({{{"a"}, {"b", "c", "d"}}}), 300.0);
  EXPECT_THROW(Wer({{{}, {"a"}}}), std::invalid_argument);
}

TEST(ErrorRateTest, CorpusWerPoolsCounts) {
  ErrorCounts c = WordErrors({{{"a", "b"}, {"a"}}, {{"c", "d", "e", "f"}, {"c", "d", "e", "f", "g"}}});
  EXPECT_EQ(c.deletions, 1u);
  EXPECT_EQ(c.insertions, 1u);
  EXPECT_EQ(c.reference_length, 6u);
  EXPECT_DOUBLE_EQ(c.Rate(), 100.0 * 2.0 / 6.0);
}

TEST(ErrorRateTest, CharacterErrorRate) {
  EXPECT_DOUBLE_EQ(Cer({{"abc", "abc"}}), 0.0);
  EXPECT_NEAR(Cer({{"abc", "abd"}}), 33.333333, 1e-5);
  EXPECT_DOUBLE_EQ(Cer({{"ab", ""}}), 100.0);
  // Space counts as a character; multibyte characters count once.
  EXPECT_DOUBLE_EQ(Cer({{"a b", "ab"}}), 100.0 / 3.0);
  EXPECT_DOUBLE_EQ(Cer({{"\xe0\xae\x95\xe0\xae\xbe", "\xe0\xae\x95"}}), 50.0);
}

TEST(SplitTest, WordsAndCodePoints) {
  EXPECT_EQ(SplitWords("  a  bc d "), (Words{"a", "bc", "d"}));
  EXPECT_EQ(SplitCodePoints("a\xc3\xa9z"), (Words{"a", "\xc3\xa9", "z"}));
  EXPECT_EQ(EditOpFromChar(EditOpChar(EditOp::kInsertion)), EditOp::kInsertion);
}

TEST(AlignSequencesTest, RandomTracesAreValid) {
  Rng rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    Words ref(rng.UniformIndex(12)), hyp(rng.UniformIndex(12));
    for (auto& w : ref) w = std::string(1, static_cast<char>('a' + rng.UniformIndex(4)));
    for (auto& w : hyp) w = std::string(1, static_cast<char>('a' + rng.UniformIndex(4)));
    AlignmentTrace t = AlignWords(ref, hyp);
    ExpectValidTrace(t, ref, hyp);
    EXPECT_EQ(t.Cost(), t.Count(EditOp::kSubstitution) + t.Count(EditOp::kInsertion) +
                            t.Count(EditOp::kDeletion));
  }
}

}  // namespace
}  // namespace teles
