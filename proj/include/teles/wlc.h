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

#ifndef TELES_WLC_H_
#define TELES_WLC_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "teles/decode.h"
#include "teles/features.h"
#include "teles/matrix.h"
#include "teles/teles.h"

namespace teles {

class TrainingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// kPerWord applies the sigmoid modulation to each word's error before
// averaging. kBatchLiteral modulates the batch-mean squared term by the
// batch-mean absolute error.
enum class LossMode { kPerWord, kBatchLiteral };

const char* LossModeName(LossMode mode);
LossMode LossModeFromName(const std::string& name);

struct ShrinkParams {
  double gamma = 5.0;
  double kappa = 0.2;
  LossMode mode = LossMode::kPerWord;

  void Validate() const;
};

// Shrinkage loss of predictions against targets, both in [0, 1].
double ShrinkageLoss(std::span<const double> predicted,
                     std::span<const double> target, const ShrinkParams& params);

// d loss / d predicted[i], including the dependence of e^{c_hat} and of the
// modulating denominator on each prediction.
std::vector<double> ShrinkageLossGradient(std::span<const double> predicted,
                                          std::span<const double> target,
                                          const ShrinkParams& params);

struct DenseLayer {
  Eigen::MatrixXd weight;  // out x in
  Eigen::VectorXd bias;    // out
};

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

enum class TargetKind { kTeles, kBinary };

struct TrainConfig {
  double learning_rate = 1e-4;
  std::size_t epochs = 50;
  std::size_t batch_size = 32;
  std::uint64_t seed = 7;
  AdamConfig adam;
  std::vector<std::size_t> hidden{512, 256, 128};
  int threads = 1;

  void Validate() const;
};

// Fully connected ReLU network with a single sigmoid output, plus the
// input standardization fitted on its training data.
class WlcModel {
 public:
  WlcModel() = default;

  // Weights and biases drawn uniformly from +-1/sqrt(fan_in).
  static WlcModel Create(std::size_t input_dim,
                         const std::vector<std::size_t>& hidden,
                         std::uint64_t seed);

  std::vector<std::size_t> widths() const;
  std::size_t input_dim() const;
  std::size_t num_parameters() const;

  std::vector<DenseLayer>& layers() { return layers_; }
  const std::vector<DenseLayer>& layers() const { return layers_; }

  // Confidence in (0, 1) for an already-standardized feature column.
  double Forward(std::span<const double> x) const;
  // Columns of `x` are examples.
  Eigen::VectorXd ForwardBatch(const Eigen::MatrixXd& x) const;

  // Standardizes raw features, then runs Forward.
  double Predict(std::span<const double> raw_x) const;
  std::vector<double> Predict(const std::vector<WordExample>& examples) const;

  Standardizer& standardizer() { return standardizer_; }
  const Standardizer& standardizer() const { return standardizer_; }

  // Provenance stored with the weights.
  TrainConfig train_config;
  ShrinkParams shrink;
  TelesParams teles;
  TargetKind targets = TargetKind::kTeles;

  std::string ToJson() const;
  static WlcModel FromJson(const std::string& text);
  void Save(const std::filesystem::path& path) const;
  static WlcModel Load(const std::filesystem::path& path);

 private:
  std::vector<DenseLayer> layers_;
  Standardizer standardizer_;
};

// Parameter gradients, shaped like the model's layers.
struct Gradients {
  std::vector<DenseLayer> layers;
  double MaxAbs() const;
};

// Loss of the model on a batch of standardized feature columns, with the
// analytic gradient written to `grad` when non-null. `threads` splits the
// batch into that many contiguous chunks whose partial gradients are summed
// in chunk order.
double LossAndGradient(const WlcModel& model, const Eigen::MatrixXd& x,
                       std::span<const double> target,
                       const ShrinkParams& params, Gradients* grad,
                       int threads = 1);

class AdamOptimizer {
 public:
  AdamOptimizer(const WlcModel& model, double learning_rate, AdamConfig config);
  void Step(WlcModel& model, const Gradients& grad);

 private:
  double learning_rate_;
  AdamConfig config_;
  std::size_t step_ = 0;
  std::vector<DenseLayer> m_, v_;
};

struct EpochStats {
  std::size_t epoch = 0;
  double train_loss = 0.0;  // size-weighted mean of the epoch's batch losses
  std::optional<double> val_loss;
};

struct TrainResult {
  WlcModel model;
  std::vector<EpochStats> history;
};

// Trains on `train` (targets as given) and reports per-epoch losses.
// Deterministic for a fixed seed and thread count.
TrainResult Train(const std::vector<WordExample>& train,
                  const std::vector<WordExample>& val,
                  const FeatureLayout& layout, const TrainConfig& config,
                  const ShrinkParams& params);

struct GridCell {
  double alpha = 0.0;
  double beta = 0.0;
  std::optional<double> val_nce;
  std::optional<double> val_loss;
};

struct GridResult {
  double best_alpha = 0.0;
  double best_beta = 0.0;
  std::vector<GridCell> table;
};

// For every (alpha, beta) cell: relabel, train `probe_epochs` epochs, and
// score validation NCE against correctness. Ties keep the earliest cell.
GridResult GridSearch(std::vector<WordExample> train,
                      std::vector<WordExample> val, const FeatureLayout& layout,
                      const std::vector<double>& alpha_grid,
                      const std::vector<double>& beta_grid,
                      std::size_t probe_epochs, TrainConfig config,
                      const ShrinkParams& params);

// Mean over the span of each frame's top token probability.
double ClassProbConfidence(const Matrix& probs, const WordSpan& span);

// Minimum over the span of exp(-Tsallis entropy of order t_alpha).
double EntropyConfidence(const Matrix& probs, const WordSpan& span,
                         double t_alpha = 2.0);

}  // namespace teles

#endif  // TELES_WLC_H_
