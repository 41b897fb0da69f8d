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

#include <stdexcept>

#include "teles/parallel.h"

namespace teles {

UtteranceAnalysis AnalyzeUtterance(const UtteranceRecord& record,
                                   const Alphabet& alphabet,
                                   const TelesParams& params) {
  UtteranceAnalysis a;
  a.path = GreedyDecode(record.probs);
  a.spans = WordSpans(a.path, alphabet, record.frame_duration_s);
  a.trace = AlignWords(record.ReferenceWords(), SpanTexts(a.spans));
  a.scored = LabelUtterance(record, a.spans, a.trace, params, alphabet);
  return a;
}

Dataset BuildDataset(const std::vector<UtteranceRecord>& records,
                     const Alphabet& alphabet, const TelesParams& params,
                     int threads) {
  Dataset ds;
  if (!records.empty()) ds.layout = LayoutOf(records.front());
  for (const auto& r : records)
    if (LayoutOf(r) != ds.layout)
      throw std::invalid_argument("BuildDataset: record '" + r.id +
                                  "' has matrix widths that differ from '" +
                                  records.front().id + "'");

  std::vector<std::vector<WordExample>> per_utt(records.size());
  ParallelFor(records.size(), threads, [&](std::size_t u) {
    const auto analysis = AnalyzeUtterance(records[u], alphabet, params);
    per_utt[u] = BuildExamples(records[u], analysis.spans, analysis.scored);
  });
  for (std::size_t u = 0; u < records.size(); ++u) {
    ds.utterance_ids.push_back(records[u].id);
    for (auto& ex : per_utt[u]) ds.examples.push_back(std::move(ex));
    ds.offsets.push_back(ds.examples.size());
  }
  return ds;
}

void Relabel(std::vector<WordExample>& examples, const TelesParams& params) {
  params.Validate();
  for (auto& ex : examples) ex.target = TelesScore(ex.c_l, ex.c_t, ex.op, params);
}

void BinarizeTargets(std::vector<WordExample>& examples) {
  for (auto& ex : examples) ex.target = ex.correct() ? 1.0 : 0.0;
}

}  // namespace teles
