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

#ifndef TELES_PIPELINE_H_
#define TELES_PIPELINE_H_

#include <string>
#include <vector>

#include "teles/align.h"
#include "teles/corpus.h"
#include "teles/decode.h"
#include "teles/features.h"
#include "teles/teles.h"

namespace teles {

// Everything derived from one record: greedy path, hypothesis spans, the
// word alignment against the reference, and per-word targets.
struct UtteranceAnalysis {
  FramePath path;
  std::vector<WordSpan> spans;
  AlignmentTrace trace;
  std::vector<ScoredWord> scored;

  std::vector<std::string> HypothesisWords() const { return SpanTexts(spans); }
};

UtteranceAnalysis AnalyzeUtterance(const UtteranceRecord& record,
                                   const Alphabet& alphabet,
                                   const TelesParams& params);

// Word examples of a set of utterances. Examples of utterance u occupy
// [offsets[u], offsets[u + 1]).
struct Dataset {
  FeatureLayout layout;
  std::vector<WordExample> examples;
  std::vector<std::string> utterance_ids;
  std::vector<std::size_t> offsets{0};

  std::size_t num_utterances() const { return utterance_ids.size(); }
};

// Throws if records disagree on matrix widths.
Dataset BuildDataset(const std::vector<UtteranceRecord>& records,
                     const Alphabet& alphabet, const TelesParams& params,
                     int threads = 1);

// Recomputes every target from the stored (op, c_T, c_L) components.
void Relabel(std::vector<WordExample>& examples, const TelesParams& params);

// Replaces targets with 1{op == C}.
void BinarizeTargets(std::vector<WordExample>& examples);

}  // namespace teles

#endif  // TELES_PIPELINE_H_
