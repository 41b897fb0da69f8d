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


#ifndef TELES_ACQUISITION_H_
#define TELES_ACQUISITION_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "teles/corpus.h"
#include "teles/matrix.h"
#include "teles/wlc.h"

namespace teles {

struct UtteranceConfidence {
  std::string id;
  double a = 0.0;  // mean word confidence, 0 for an empty hypothesis
  double duration_s = 0.0;
  std::size_t word_count = 0;
};

// Arithmetic mean; 0 for an empty list.
double MeanConfidence(std::span<const double> word_confidences);

struct AcquisitionReport {
  std::vector<std::string> ranked;    // ascending confidence, ties by id
  std::vector<std::string> annotate;  // in ranked order
  std::vector<std::string> pseudo;    // in ranked order
  double budget_s = 0.0;
  double budget_used_s = 0.0;
  double delta = 0.0;

  double annotate_hours() const { return budget_used_s / 3600.0; }
};

// Walks the ranking from least confident upward, taking every utterance
// whose duration still fits the remaining budget. The pseudo-label set is
// every utterance with confidence >= delta that was not taken for annotation.
AcquisitionReport Acquire(std::vector<UtteranceConfidence> confidences,
                          double budget_s, double delta);

// Same budget walk over an arbitrary ascending score (used for baselines).
std::vector<std::string> FillBudget(std::vector<UtteranceConfidence> scores,
                                    double budget_s);

// Length-normalized probability of the greedy path: geometric mean of the
// per-frame argmax probabilities.
double PathProbability(const Matrix& probs);

// Word confidences for the greedy hypothesis of one utterance. Needs no
// reference.
std::vector<double> ScoreHypothesis(const WlcModel& model,
                                    const UtteranceRecord& record,
                                    const Alphabet& alphabet);

std::vector<UtteranceConfidence> ScoreUtterances(
    const WlcModel& model, const std::vector<UtteranceRecord>& records,
    const Alphabet& alphabet, int threads = 1);

struct SetQuality {
  std::string name;
  std::size_t size = 0;
  double duration_s = 0.0;
  std::optional<double> wer;  // percent; none for an empty set
  std::optional<double> cer;
};

struct RoundResult {
  AcquisitionReport report;
  std::vector<UtteranceConfidence> confidences;
  // annotate, random, pseudo, path-prob (when requested), corpus.
  std::vector<SetQuality> comparison;

  const SetQuality& Find(const std::string& name) const;
};

// One simulated acquisition round with the reference transcripts acting as
// the annotator.
RoundResult SimulateRound(const std::vector<UtteranceRecord>& records,
                          const Alphabet& alphabet, const WlcModel& model,
                          double budget_s, double delta, std::uint64_t seed,
                          bool path_prob_baseline = true, int threads = 1);

// Oracle quality of the subset `ids` of `records`.
SetQuality MeasureSet(const std::string& name,
                      const std::vector<UtteranceRecord>& records,
                      const Alphabet& alphabet,
                      const std::vector<std::string>& ids);

}  // namespace teles

#endif  // TELES_ACQUISITION_H_
