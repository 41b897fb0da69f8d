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

#include "teles/calib.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace teles {

namespace {

void CheckSizes(std::size_t a, std::size_t b, const char* what) {
  if (a == 0) throw std::invalid_argument(std::string(what) + ": empty input");
  if (a != b)
    throw std::invalid_argument(std::string(what) + ": " + std::to_string(a) +
                                " predictions but " + std::to_string(b) +
                                " targets");
}

// Bernoulli KL(p || q) in the given log base; p and q already clamped.
double BernoulliKl(double p, double q, double log_base) {
  return (p * std::log(p / q) + (1.0 - p) * std::log((1.0 - p) / (1.0 - q))) /
         log_base;
}

}  // namespace

double ClampProb(double p) {
  return std::clamp(p, kProbEpsilon, 1.0 - kProbEpsilon);
}

DivergenceMetrics DivergenceSuite(std::span<const double> predicted,
                                  std::span<const double> target) {
  CheckSizes(predicted.size(), target.size(), "DivergenceSuite");
  DivergenceMetrics m;
  const double ln2 = std::log(2.0);
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    m.mae += std::abs(target[i] - predicted[i]);
    const double y = ClampProb(target[i]);
    const double y_hat = ClampProb(predicted[i]);
    m.kld += BernoulliKl(y, y_hat, 1.0);
    const double mid = 0.5 * (y + y_hat);
    m.jsd += 0.5 * (BernoulliKl(y, mid, ln2) + BernoulliKl(y_hat, mid, ln2));
  }
  const double n = static_cast<double>(predicted.size());
  m.mae /= n;
  m.kld /= n;
  m.jsd /= n;
  return m;
}

std::optional<double> Nce(std::span<const double> predicted,
                          const std::vector<bool>& correct) {
  CheckSizes(predicted.size(), correct.size(), "Nce");
  const double n = static_cast<double>(predicted.size());
  const double n_correct =
      static_cast<double>(std::count(correct.begin(), correct.end(), true));
  const double p = n_correct / n;
  if (p <= 0.0 || p >= 1.0) return std::nullopt;
  const double h_p = -p * std::log(p) - (1.0 - p) * std::log(1.0 - p);
  double cross = 0.0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const double y_hat = ClampProb(predicted[i]);
    cross += correct[i] ? std::log(y_hat) : std::log(1.0 - y_hat);
  }
  const double h_cross = -cross / n;
  return (h_p - h_cross) / h_p;
}

CalibrationMetrics CalibrationSuite(std::span<const double> predicted,
                                    const std::vector<bool>& correct,
                                    std::size_t num_bins) {
  CheckSizes(predicted.size(), correct.size(), "CalibrationSuite");
  if (num_bins == 0)
    throw std::invalid_argument("CalibrationSuite: need at least one bin");
  CalibrationMetrics m;
  m.bins.resize(num_bins);
  const double width = 1.0 / static_cast<double>(num_bins);
  std::vector<double> conf_sum(num_bins, 0.0), correct_sum(num_bins, 0.0);
  for (std::size_t b = 0; b < num_bins; ++b) {
    m.bins[b].lower = static_cast<double>(b) * width;
    m.bins[b].upper = b + 1 == num_bins ? 1.0 : static_cast<double>(b + 1) * width;
  }
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const double p = std::clamp(predicted[i], 0.0, 1.0);
    auto b = static_cast<std::size_t>(p * static_cast<double>(num_bins));
    b = std::min(b, num_bins - 1);
    ++m.bins[b].count;
    conf_sum[b] += predicted[i];
    correct_sum[b] += correct[i] ? 1.0 : 0.0;
  }
  const double n = static_cast<double>(predicted.size());
  for (std::size_t b = 0; b < num_bins; ++b) {
    Bin& bin = m.bins[b];
    if (bin.count == 0) continue;
    const double count = static_cast<double>(bin.count);
    bin.confidence = conf_sum[b] / count;
    bin.accuracy = correct_sum[b] / count;
    const double gap = std::abs(bin.accuracy - bin.confidence);
    m.ece += count / n * gap;
    m.mce = std::max(m.mce, gap);
  }
  return m;
}

RmseWcrResult RmseWcr(const std::vector<UtteranceScores>& utterances) {
  RmseWcrResult r;
  double sum_sq = 0.0;
  for (const auto& u : utterances) {
    if (u.predicted.size() != u.correct.size())
      throw std::invalid_argument("RmseWcr: utterance has " +
                                  std::to_string(u.predicted.size()) +
                                  " predictions but " +
                                  std::to_string(u.correct.size()) + " flags");
    if (u.predicted.empty()) {
      ++r.excluded;
      continue;
    }
    double mean = 0.0, ratio = 0.0;
    for (std::size_t i = 0; i < u.predicted.size(); ++i) {
      mean += u.predicted[i];
      ratio += u.correct[i] ? 1.0 : 0.0;
    }
    const double n = static_cast<double>(u.predicted.size());
    const double gap = mean / n - ratio / n;
    sum_sq += gap * gap;
    ++r.utterances;
  }
  if (r.utterances == 0)
    throw std::invalid_argument("RmseWcr: no utterance has predicted words");
  r.rmse = std::sqrt(sum_sq / static_cast<double>(r.utterances));
  return r;
}

}  // namespace teles
