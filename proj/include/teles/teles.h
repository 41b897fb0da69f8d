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

#ifndef TELES_TELES_H_
#define TELES_TELES_H_

#include <optional>
#include <string>
#include <vector>

#include "teles/align.h"
#include "teles/corpus.h"
#include "teles/decode.h"

namespace teles {

// Weights of lexeme similarity against temporal agreement, for correct (C)
// and substituted (S) words respectively.
struct TelesParams {
  double alpha = 0.75;
  double beta = 0.5;

  void Validate() const;
};

struct TimeInterval {
  double start_s = 0.0;
  double end_s = 0.0;
};

// Per-hypothesis-word target. For insertions c_T = c_L = c = 0.
struct ScoredWord {
  std::size_t hyp_index = 0;
  std::optional<std::size_t> ref_index;
  EditOp op = EditOp::kInsertion;
  double c_t = 0.0;
  double c_l = 0.0;
  double c = 0.0;
};

// max(0, 1 - (|dStart| + |dEnd|) / reference duration) for C/S, else 0.
double TemporalScore(const TimeInterval& ref, const TimeInterval& hyp,
                     EditOp op);

// Multiset Jaccard similarity between grapheme bags for C/S, else 0.
double LexemeScore(const std::vector<std::string>& ref_graphemes,
                   const std::vector<std::string>& hyp_graphemes, EditOp op);
double LexemeScore(const std::string& ref_word, const std::string& hyp_word,
                   EditOp op, const Alphabet& alphabet);

double TelesScore(double c_l, double c_t, EditOp op, const TelesParams& params);

// One ScoredWord per hypothesis span, in hypothesis order. Deletions carry
// no hypothesis word and produce no entry.
std::vector<ScoredWord> LabelUtterance(const UtteranceRecord& record,
                                       const std::vector<WordSpan>& spans,
                                       const AlignmentTrace& trace,
                                       const TelesParams& params,
                                       const Alphabet& alphabet);

}  // namespace teles

#endif  // TELES_TELES_H_
