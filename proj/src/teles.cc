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

#include "teles/teles.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace teles {

namespace {

bool IsAligned(EditOp op) {
  return op == EditOp::kCorrect || op == EditOp::kSubstitution;
}

double Clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

void TelesParams::Validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument("alpha must be in [0, 1]");
  if (!(beta >= 0.0 && beta <= 1.0))
    throw std::invalid_argument("beta must be in [0, 1]");
}

double TemporalScore(const TimeInterval& ref, const TimeInterval& hyp,
                     EditOp op) {
  if (!IsAligned(op)) return 0.0;
  const double duration = ref.end_s - ref.start_s;
  if (!(duration > 0.0))
    throw std::invalid_argument(
        "TemporalScore: reference word has non-positive duration");
  const double shift =
      std::abs(ref.start_s - hyp.start_s) + std::abs(ref.end_s - hyp.end_s);
  return Clamp01(1.0 - shift / duration);
}

double LexemeScore(const std::vector<std::string>& ref_graphemes,
                   const std::vector<std::string>& hyp_graphemes, EditOp op) {
  if (!IsAligned(op)) return 0.0;
  if (ref_graphemes.empty() || hyp_graphemes.empty())
    throw std::invalid_argument("LexemeScore: aligned words must be non-empty");
  std::map<std::string, std::pair<std::size_t, std::size_t>> bags;
  for (const auto& g : ref_graphemes) ++bags[g].first;
  for (const auto& g : hyp_graphemes) ++bags[g].second;
  std::size_t inter = 0, uni = 0;
  for (const auto& [g, counts] : bags) {
    inter += std::min(counts.first, counts.second);
    uni += std::max(counts.first, counts.second);
  }
  return static_cast<double>(inter) / static_cast<double>(uni);
}

double LexemeScore(const std::string& ref_word, const std::string& hyp_word,
                   EditOp op, const Alphabet& alphabet) {
  if (!IsAligned(op)) return 0.0;
  return LexemeScore(alphabet.Tokenize(ref_word), alphabet.Tokenize(hyp_word),
                     op);
}

double TelesScore(double c_l, double c_t, EditOp op,
                  const TelesParams& params) {
  switch (op) {
    case EditOp::kCorrect:
      return Clamp01(params.alpha * c_l + (1.0 - params.alpha) * c_t);
    case EditOp::kSubstitution:
      return Clamp01(params.beta * c_l + (1.0 - params.beta) * c_t);
    default:
      return 0.0;
  }
}

std::vector<ScoredWord> LabelUtterance(const UtteranceRecord& record,
                                       const std::vector<WordSpan>& spans,
                                       const AlignmentTrace& trace,
                                       const TelesParams& params,
                                       const Alphabet& alphabet) {
  params.Validate();
  std::vector<ScoredWord> scored;
  scored.reserve(spans.size());
  for (const auto& entry : trace.ops) {
    if (!entry.hyp_index) continue;
    const std::size_t h = *entry.hyp_index;
    if (h != scored.size() || h >= spans.size())
      throw std::invalid_argument(
          "LabelUtterance: trace hypothesis indices do not match the spans of "
          "utterance '" + record.id + "'");
    ScoredWord w;
    w.hyp_index = h;
    w.ref_index = entry.ref_index;
    w.op = entry.op;
    if (IsAligned(entry.op)) {
      if (!entry.ref_index || *entry.ref_index >= record.reference.size())
        throw std::invalid_argument(
            "LabelUtterance: trace reference index out of range in '" +
            record.id + "'");
      const auto& ref = record.reference[*entry.ref_index];
      const auto& span = spans[h];
      w.c_t = TemporalScore({ref.start_s, ref.end_s},
                            {span.start_s, span.end_s}, entry.op);
      w.c_l = LexemeScore(ref.text, span.text, entry.op, alphabet);
      w.c = TelesScore(w.c_l, w.c_t, entry.op, params);
    }
    scored.push_back(w);
  }
  if (scored.size() != spans.size())
    throw std::invalid_argument(
        "LabelUtterance: trace covers " + std::to_string(scored.size()) +
        " hypothesis words but there are " + std::to_string(spans.size()) +
        " spans in '" + record.id + "'");
  return scored;
}

}  // namespace teles
