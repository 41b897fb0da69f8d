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

#ifndef TELES_CALIB_H_
#define TELES_CALIB_H_

#include <optional>
#include <span>
#include <vector>

namespace teles {

// Probabilities are clamped to [kProbEpsilon, 1 - kProbEpsilon] before any
// logarithm.
inline constexpr double kProbEpsilon = 1e-7;

double ClampProb(double p);

struct DivergenceMetrics {
  double mae = 0.0;
  double kld = 0.0;  // mean Bernoulli KL(y || y_hat), nats
  double jsd = 0.0;  // mean Bernoulli JS divergence, bits
};

DivergenceMetrics DivergenceSuite(std::span<const double> predicted,
                                  std::span<const double> target);

// Normalized cross entropy against binary correctness. Undefined (nullopt)
// when every word is correct or every word is wrong.
std::optional<double> Nce(std::span<const double> predicted,
                          const std::vector<bool>& correct);

struct Bin {
  double lower = 0.0;
  double upper = 0.0;
  std::size_t count = 0;
  double confidence = 0.0;  // mean prediction of members
  double accuracy = 0.0;    // fraction of members that are correct
};

struct CalibrationMetrics {
  double ece = 0.0;
  double mce = 0.0;
  std::vector<Bin> bins;
};

// Equal-width bins [i/M, (i+1)/M), the last bin closed. Empty bins carry no
// weight and are left out of the maximum.
CalibrationMetrics CalibrationSuite(std::span<const double> predicted,
                                    const std::vector<bool>& correct,
                                    std::size_t num_bins = 10);

struct UtteranceScores {
  std::vector<double> predicted;
  std::vector<bool> correct;
};

struct RmseWcrResult {
  double rmse = 0.0;
  std::size_t utterances = 0;  // utterances that entered the RMSE
  std::size_t excluded = 0;    // utterances without predicted words
};

// RMS gap between each utterance's mean confidence and its word
// correctness ratio.
RmseWcrResult RmseWcr(const std::vector<UtteranceScores>& utterances);

}  // namespace teles

#endif  // TELES_CALIB_H_
