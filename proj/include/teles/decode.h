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

#ifndef TELES_DECODE_H_
#define TELES_DECODE_H_

#include <string>
#include <vector>

#include "teles/corpus.h"
#include "teles/matrix.h"

namespace teles {

// Frame-wise argmax token indices, one per row of S.
using FramePath = std::vector<int>;

// A hypothesis word with its frame span. Frame indices are 1-based:
// 1 <= first_frame <= last_frame <= T'.
struct WordSpan {
  std::string text;
  std::size_t first_frame = 0;
  std::size_t last_frame = 0;
  double start_s = 0.0;  // (first_frame - 1) * frame duration
  double end_s = 0.0;    // last_frame * frame duration

  friend bool operator==(const WordSpan&, const WordSpan&) = default;
};

// Per-frame argmax; ties go to the lowest token index.
FramePath GreedyDecode(const Matrix& probs);

// CTC collapse: merge adjacent repeats, then drop blanks. Space tokens are
// kept.
std::vector<int> CollapsePath(const FramePath& path, const Alphabet& alphabet);

// Splits the collapsed path into words on the space token and records each
// word's first and last contributing (non-blank, non-space) frame. Empty
// words from leading, trailing or doubled spaces are dropped.
std::vector<WordSpan> WordSpans(const FramePath& path, const Alphabet& alphabet,
                                double frame_duration_s);

std::vector<std::string> SpanTexts(const std::vector<WordSpan>& spans);

}  // namespace teles

#endif  // TELES_DECODE_H_
