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
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "teles/align.h"
#include "teles/decode.h"
#include "teles/features.h"
#include "teles/parallel.h"

namespace teles {

double MeanConfidence(std::span<const double> word_confidences) {
  if (word_confidences.empty()) return 0.0;
  return std::accumulate(word_confidences.begin(), word_confidences.end(), 0.0) /
         static_cast<double>(word_confidences.size());
}

namespace {

void SortAscending(std::vector<UtteranceConfidence>& items) {
  std::stable_sort(items.begin(), items.end(),
                   [](const UtteranceConfidence& x, const UtteranceConfidence& y) {
                     if (x.a != y.a) return x.a < y.a;
                     return x.id < y.id;
                   });
}

void CheckBudget(double budget_s) {
  if (!(budget_s >= 0.0))
    throw std::invalid_argument("budget must be a non-negative number of seconds");
}

}  // namespace

std::vector<std::string> FillBudget(std::vector<UtteranceConfidence> scores,
                                    double budget_s) {
  CheckBudget(budget_s);
  SortAscending(scores);
  std::vector<std::string> taken;
  double used = 0.0;
  for (const auto& u : scores) {
    if (used + u.duration_s <= budget_s) {
      used += u.duration_s;
      taken.push_back(u.id);
    }
  }
  return taken;
}

AcquisitionReport Acquire(std::vector<UtteranceConfidence> confidences,
                          double budget_s, double delta) {
  CheckBudget(budget_s);
  if (!(delta >= 0.0 && delta <= 1.0))
    throw std::invalid_argument("delta must be in [0, 1]");
  SortAscending(confidences);

  AcquisitionReport report;
  report.budget_s = budget_s;
  report.delta = delta;
  std::unordered_set<std::string> annotated;
  for (const auto& u : confidences) {
    report.ranked.push_back(u.id);
    if (report.budget_used_s + u.duration_s <= budget_s) {
      report.budget_used_s += u.duration_s;
      report.annotate.push_back(u.id);
      annotated.insert(u.id);
    }
  }
  for (const auto& u : confidences)
    if (u.a >= delta && !annotated.count(u.id)) report.pseudo.push_back(u.id);
  return report;
}

double PathProbability(const Matrix& probs) {
  if (probs.rows() == 0)
    throw std::invalid_argument("PathProbability: empty probability matrix");
  double log_sum = 0.0;
  for (std::size_t t = 0; t < probs.rows(); ++t) {
    auto row = probs.Row(t);
    log_sum += std::log(*std::max_element(row.begin(), row.end()));
  }
  return std::exp(log_sum / static_cast<double>(probs.rows()));
}

std::vector<double> ScoreHypothesis(const WlcModel& model,
                                    const UtteranceRecord& record,
                                    const Alphabet& alphabet) {
  const auto spans = WordSpans(GreedyDecode(record.probs), alphabet,
                               record.frame_duration_s);
  std::vector<double> confidences;
  confidences.reserve(spans.size());
  std::vector<double> x;
  for (const auto& span : spans) {
    x.clear();
    for (const Matrix* m : {&record.attention, &record.decoder, &record.probs}) {
      auto part = AggregateSpan(*m, span);
      x.insert(x.end(), part.begin(), part.end());
    }
    confidences.push_back(model.Predict(x));
  }
  return confidences;
}

std::vector<UtteranceConfidence> ScoreUtterances(
    const WlcModel& model, const std::vector<UtteranceRecord>& records,
    const Alphabet& alphabet, int threads) {
  std::vector<UtteranceConfidence> out(records.size());
  ParallelFor(records.size(), threads, [&](std::size_t i) {
    const auto conf = ScoreHypothesis(model, records[i], alphabet);
    out[i] = {records[i].id, MeanConfidence(conf), records[i].duration_s(),
              conf.size()};
  });
  return out;
}

SetQuality MeasureSet(const std::string& name,
                      const std::vector<UtteranceRecord>& records,
                      const Alphabet& alphabet,
                      const std::vector<std::string>& ids) {
  std::unordered_map<std::string, const UtteranceRecord*> by_id;
  for (const auto& r : records) by_id.emplace(r.id, &r);
  SetQuality q;
  q.name = name;
  q.size = ids.size();
  std::vector<WordPair> words;
  std::vector<StringPair> chars;
  for (const auto& id : ids) {
    auto it = by_id.find(id);
    if (it == by_id.end())
      throw std::invalid_argument("MeasureSet: unknown utterance '" + id + "'");
    const UtteranceRecord& r = *it->second;
    q.duration_s += r.duration_s();
    auto ref = r.ReferenceWords();
    auto hyp = SpanTexts(WordSpans(GreedyDecode(r.probs), alphabet,
                                   r.frame_duration_s));
    auto join = [](const std::vector<std::string>& w) {
      std::string s;
      for (std::size_t i = 0; i < w.size(); ++i) s += (i ? " " : "") + w[i];
      return s;
    };
    chars.emplace_back(join(ref), join(hyp));
    words.emplace_back(std::move(ref), std::move(hyp));
  }
  const ErrorCounts counts = WordErrors(words);
  if (counts.reference_length > 0) {
    q.wer = counts.Rate();
    q.cer = Cer(chars);
  }
  return q;
}

const SetQuality& RoundResult::Find(const std::string& name) const {
  for (const auto& q : comparison)
    if (q.name == name) return q;
  throw std::out_of_range("no set named '" + name + "' in the comparison");
}

RoundResult SimulateRound(const std::vector<UtteranceRecord>& records,
                          const Alphabet& alphabet, const WlcModel& model,
                          double budget_s, double delta, std::uint64_t seed,
                          bool path_prob_baseline, int threads) {
  if (records.empty()) throw std::invalid_argument("SimulateRound: empty pool");
  if (model.input_dim() == 0)
    throw std::invalid_argument("SimulateRound: model has no layers");
  for (const auto& r : records)
    if (r.reference.empty())
      throw std::invalid_argument("SimulateRound: utterance '" + r.id +
                                  "' has no reference transcript");

  RoundResult result;
  result.confidences = ScoreUtterances(model, records, alphabet, threads);
  result.report = Acquire(result.confidences, budget_s, delta);

  std::vector<std::string> all;
  for (const auto& r : records) all.push_back(r.id);
  std::vector<std::string> random = all;
  Rng rng(seed);
  rng.Shuffle(random);
  random.resize(result.report.annotate.size());

  result.comparison.push_back(
      MeasureSet("annotate", records, alphabet, result.report.annotate));
  result.comparison.push_back(MeasureSet("random", records, alphabet, random));
  result.comparison.push_back(
      MeasureSet("pseudo", records, alphabet, result.report.pseudo));
  if (path_prob_baseline) {
    std::vector<UtteranceConfidence> path(records.size());
    ParallelFor(records.size(), threads, [&](std::size_t i) {
      path[i] = {records[i].id, PathProbability(records[i].probs),
                 records[i].duration_s(), 0};
    });
    result.comparison.push_back(MeasureSet("path-prob", records, alphabet,
                                           FillBudget(std::move(path), budget_s)));
  }
  result.comparison.push_back(MeasureSet("corpus", records, alphabet, all));
  return result;
}

}  // namespace teles
