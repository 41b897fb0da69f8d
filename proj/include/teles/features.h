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

#ifndef TELES_FEATURES_H_
#define TELES_FEATURES_H_

#include <filesystem>
#include <string>
#include <vector>

#include "teles/corpus.h"
#include "teles/decode.h"
#include "teles/matrix.h"
#include "teles/teles.h"

namespace teles {

// Widths of the [a_bar, h_bar, s_bar] segments of a feature vector.
struct FeatureLayout {
  std::size_t attention_dim = 0;
  std::size_t decoder_dim = 0;
  std::size_t prob_dim = 0;

  std::size_t size() const { return attention_dim + decoder_dim + prob_dim; }
  friend bool operator==(const FeatureLayout&, const FeatureLayout&) = default;
};

FeatureLayout LayoutOf(const UtteranceRecord& record);

struct WordExample {
  std::vector<double> x;
  double target = 0.0;
  std::string utterance_id;
  std::size_t hyp_index = 0;
  // Alignment context kept so targets can be recomputed for other
  // (alpha, beta) settings or replaced by binary correctness.
  EditOp op = EditOp::kInsertion;
  double c_t = 0.0;
  double c_l = 0.0;

  bool correct() const { return op == EditOp::kCorrect; }
};

// Mean of rows first_frame..last_frame (1-based, inclusive).
std::vector<double> AggregateSpan(const Matrix& matrix, const WordSpan& span);

// One example per hypothesis word: x = [mean A, mean H, mean S] over the
// word's frame span, target = the word's TeLeS score.
std::vector<WordExample> BuildExamples(const UtteranceRecord& record,
                                       const std::vector<WordSpan>& spans,
                                       const std::vector<ScoredWord>& scored);

// Per-dimension standardization fitted on training data. The probability
// segment passes through unchanged.
class Standardizer {
 public:
  Standardizer() = default;
  Standardizer(FeatureLayout layout, std::vector<double> mean,
               std::vector<double> scale);

  static Standardizer Fit(const std::vector<WordExample>& examples,
                          const FeatureLayout& layout);

  std::vector<double> Apply(const std::vector<double>& x) const;
  void ApplyInPlace(std::vector<double>& x) const;

  const FeatureLayout& layout() const { return layout_; }
  const std::vector<double>& mean() const { return mean_; }
  const std::vector<double>& scale() const { return scale_; }

 private:
  FeatureLayout layout_;
  std::vector<double> mean_;
  std::vector<double> scale_;
};

// One CSV row per example: utterance id, hyp index, op, c_T, c_L, c, then x.
void WriteFeatureCsv(const std::filesystem::path& path,
                     const std::vector<WordExample>& examples);

}  // namespace teles

#endif  // TELES_FEATURES_H_
