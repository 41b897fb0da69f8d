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

#include "teles/wlc.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "teles/calib.h"
#include "teles/corpus.h"
#include "teles/parallel.h"
#include "teles/pipeline.h"

namespace teles {

using Json = nlohmann::ordered_json;

// ------------------------------------------------------------------- Loss

const char* LossModeName(LossMode mode) {
  return mode == LossMode::kPerWord ? "per-word" : "batch-literal";
}

LossMode LossModeFromName(const std::string& name) {
  if (name == "per-word") return LossMode::kPerWord;
  if (name == "batch-literal") return LossMode::kBatchLiteral;
  throw std::invalid_argument("unknown loss mode '" + name +
                              "' (expected per-word or batch-literal)");
}

void ShrinkParams::Validate() const {
  if (!(gamma >= 0.0) || !std::isfinite(gamma))
    throw std::invalid_argument("gamma must be a finite value >= 0");
  if (!(kappa >= 0.0 && kappa <= 1.0))
    throw std::invalid_argument("kappa must be in [0, 1]");
}

namespace {

void CheckLossInput(std::span<const double> predicted,
                    std::span<const double> target) {
  if (predicted.empty())
    throw std::invalid_argument("shrinkage loss: empty batch");
  if (predicted.size() != target.size())
    throw std::invalid_argument("shrinkage loss: " +
                                std::to_string(predicted.size()) +
                                " predictions but " +
                                std::to_string(target.size()) + " targets");
}

double Sign(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace

double ShrinkageLoss(std::span<const double> predicted,
                     std::span<const double> target,
                     const ShrinkParams& params) {
  CheckLossInput(predicted, target);
  const double n = static_cast<double>(predicted.size());
  if (params.mode == LossMode::kPerWord) {
    double sum = 0.0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
      const double e = predicted[i] - target[i];
      const double modulation =
          1.0 + std::exp(params.gamma * (params.kappa - std::abs(e)));
      sum += e * e * std::exp(predicted[i]) / modulation;
    }
    return sum / n;
  }
  double weighted_sq = 0.0, abs_err = 0.0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const double e = predicted[i] - target[i];
    weighted_sq += e * e * std::exp(predicted[i]);
    abs_err += std::abs(e);
  }
  const double modulation =
      1.0 + std::exp(params.gamma * (params.kappa - abs_err / n));
  return (weighted_sq / n) / modulation;
}

std::vector<double> ShrinkageLossGradient(std::span<const double> predicted,
                                          std::span<const double> target,
                                          const ShrinkParams& params) {
  CheckLossInput(predicted, target);
  const std::size_t size = predicted.size();
  const double n = static_cast<double>(size);
  std::vector<double> grad(size);
  if (params.mode == LossMode::kPerWord) {
    for (std::size_t i = 0; i < size; ++i) {
      const double e = predicted[i] - target[i];
      const double w = std::exp(predicted[i]);
      const double shrink = std::exp(params.gamma * (params.kappa - std::abs(e)));
      const double denom = 1.0 + shrink;
      grad[i] = ((2.0 * e + e * e) * w / denom +
                 e * e * w * params.gamma * Sign(e) * shrink / (denom * denom)) /
                n;
    }
    return grad;
  }
  double weighted_sq = 0.0, abs_err = 0.0;
  for (std::size_t i = 0; i < size; ++i) {
    const double e = predicted[i] - target[i];
    weighted_sq += e * e * std::exp(predicted[i]);
    abs_err += std::abs(e);
  }
  const double numer = weighted_sq / n;
  const double shrink = std::exp(params.gamma * (params.kappa - abs_err / n));
  const double denom = 1.0 + shrink;
  for (std::size_t i = 0; i < size; ++i) {
    const double e = predicted[i] - target[i];
    const double d_numer = (2.0 * e + e * e) * std::exp(predicted[i]) / n;
    const double d_denom = -params.gamma * shrink * Sign(e) / n;
    grad[i] = d_numer / denom - numer * d_denom / (denom * denom);
  }
  return grad;
}

// ------------------------------------------------------------------ Model

void TrainConfig::Validate() const {
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate))
    throw std::invalid_argument("learning rate must be a finite value >= 0");
  if (epochs == 0) throw std::invalid_argument("epochs must be positive");
  if (batch_size == 0) throw std::invalid_argument("batch size must be positive");
  if (threads < 1) throw std::invalid_argument("threads must be at least 1");
  for (auto w : hidden)
    if (w == 0) throw std::invalid_argument("hidden widths must be positive");
}

namespace {

double Sigmoid(double z) {
  const double s = z >= 0.0 ? 1.0 / (1.0 + std::exp(-z))
                            : std::exp(z) / (1.0 + std::exp(z));
  return std::clamp(s, std::numeric_limits<double>::denorm_min(),
                    std::nextafter(1.0, 0.0));
}

struct ForwardCache {
  std::vector<Eigen::MatrixXd> inputs;  // inputs[l] feeds layer l
  std::vector<Eigen::MatrixXd> pre;     // pre-activations of hidden layers
  Eigen::VectorXd output;
};

ForwardCache RunForward(const std::vector<DenseLayer>& layers,
                        const Eigen::Ref<const Eigen::MatrixXd>& x) {
  ForwardCache cache;
  cache.inputs.reserve(layers.size());
  cache.inputs.emplace_back(x);
  for (std::size_t l = 0; l < layers.size(); ++l) {
    Eigen::MatrixXd z = layers[l].weight * cache.inputs.back();
    z.colwise() += layers[l].bias;
    if (l + 1 < layers.size()) {
      cache.inputs.emplace_back(z.cwiseMax(0.0));
      cache.pre.push_back(std::move(z));
    } else {
      cache.output.resize(z.cols());
      for (Eigen::Index i = 0; i < z.cols(); ++i)
        cache.output[i] = Sigmoid(z(0, i));
    }
  }
  return cache;
}

void RunBackward(const std::vector<DenseLayer>& layers,
                 const ForwardCache& cache, std::span<const double> d_pred,
                 std::vector<DenseLayer>& grad) {
  const Eigen::Index batch = cache.output.size();
  Eigen::MatrixXd dz(1, batch);
  for (Eigen::Index i = 0; i < batch; ++i) {
    const double s = cache.output[i];
    dz(0, i) = d_pred[i] * s * (1.0 - s);
  }
  grad.resize(layers.size());
  for (std::size_t l = layers.size(); l-- > 0;) {
    grad[l].weight.noalias() = dz * cache.inputs[l].transpose();
    grad[l].bias = dz.rowwise().sum();
    if (l == 0) break;
    Eigen::MatrixXd da = layers[l].weight.transpose() * dz;
    dz = da.cwiseProduct(
        (cache.pre[l - 1].array() > 0.0).cast<double>().matrix());
  }
}

Eigen::MatrixXd ToColumns(const std::vector<WordExample>& examples,
                          const Standardizer& standardizer) {
  const std::size_t dim = standardizer.layout().size();
  Eigen::MatrixXd x(dim, examples.size());
  std::vector<double> buf;
  for (std::size_t i = 0; i < examples.size(); ++i) {
    buf = examples[i].x;
    standardizer.ApplyInPlace(buf);
    for (std::size_t d = 0; d < dim; ++d)
      x(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(i)) = buf[d];
  }
  return x;
}

}  // namespace

WlcModel WlcModel::Create(std::size_t input_dim,
                          const std::vector<std::size_t>& hidden,
                          std::uint64_t seed) {
  if (input_dim == 0) throw std::invalid_argument("input width must be positive");
  WlcModel model;
  Rng rng(seed);
  std::vector<std::size_t> widths{input_dim};
  widths.insert(widths.end(), hidden.begin(), hidden.end());
  widths.push_back(1);
  for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
    const auto in = static_cast<Eigen::Index>(widths[l]);
    const auto out = static_cast<Eigen::Index>(widths[l + 1]);
    const double bound = 1.0 / std::sqrt(static_cast<double>(in));
    DenseLayer layer{Eigen::MatrixXd(out, in), Eigen::VectorXd(out)};
    for (Eigen::Index r = 0; r < out; ++r)
      for (Eigen::Index c = 0; c < in; ++c)
        layer.weight(r, c) = (2.0 * rng.Uniform() - 1.0) * bound;
    for (Eigen::Index r = 0; r < out; ++r)
      layer.bias[r] = (2.0 * rng.Uniform() - 1.0) * bound;
    model.layers_.push_back(std::move(layer));
  }
  FeatureLayout identity{input_dim, 0, 0};
  model.standardizer_ = Standardizer(identity, std::vector<double>(input_dim, 0.0),
                                     std::vector<double>(input_dim, 1.0));
  model.train_config.hidden = hidden;
  model.train_config.seed = seed;
  return model;
}

std::vector<std::size_t> WlcModel::widths() const {
  std::vector<std::size_t> w;
  if (layers_.empty()) return w;
  w.push_back(static_cast<std::size_t>(layers_.front().weight.cols()));
  for (const auto& l : layers_) w.push_back(static_cast<std::size_t>(l.weight.rows()));
  return w;
}

std::size_t WlcModel::input_dim() const {
  return layers_.empty() ? 0 : static_cast<std::size_t>(layers_.front().weight.cols());
}

std::size_t WlcModel::num_parameters() const {
  std::size_t n = 0;
  for (const auto& l : layers_)
    n += static_cast<std::size_t>(l.weight.size() + l.bias.size());
  return n;
}

double WlcModel::Forward(std::span<const double> x) const {
  if (x.size() != input_dim())
    throw std::invalid_argument("Forward: feature width " +
                                std::to_string(x.size()) + ", model expects " +
                                std::to_string(input_dim()));
  Eigen::Map<const Eigen::VectorXd> col(x.data(), static_cast<Eigen::Index>(x.size()));
  return RunForward(layers_, col).output[0];
}

Eigen::VectorXd WlcModel::ForwardBatch(const Eigen::MatrixXd& x) const {
  if (static_cast<std::size_t>(x.rows()) != input_dim())
    throw std::invalid_argument("ForwardBatch: feature width " +
                                std::to_string(x.rows()) + ", model expects " +
                                std::to_string(input_dim()));
  return RunForward(layers_, x).output;
}

double WlcModel::Predict(std::span<const double> raw_x) const {
  std::vector<double> x(raw_x.begin(), raw_x.end());
  standardizer_.ApplyInPlace(x);
  return Forward(x);
}

std::vector<double> WlcModel::Predict(
    const std::vector<WordExample>& examples) const {
  if (examples.empty()) return {};
  Eigen::VectorXd out = ForwardBatch(ToColumns(examples, standardizer_));
  return std::vector<double>(out.data(), out.data() + out.size());
}

double Gradients::MaxAbs() const {
  double m = 0.0;
  for (const auto& l : layers)
    m = std::max({m, l.weight.cwiseAbs().maxCoeff(), l.bias.cwiseAbs().maxCoeff()});
  return m;
}

double LossAndGradient(const WlcModel& model, const Eigen::MatrixXd& x,
                       std::span<const double> target,
                       const ShrinkParams& params, Gradients* grad,
                       int threads) {
  const auto batch = static_cast<std::size_t>(x.cols());
  if (batch == 0) throw std::invalid_argument("LossAndGradient: empty batch");
  if (target.size() != batch)
    throw std::invalid_argument("LossAndGradient: " + std::to_string(batch) +
                                " examples but " + std::to_string(target.size()) +
                                " targets");
  if (static_cast<std::size_t>(x.rows()) != model.input_dim())
    throw std::invalid_argument("LossAndGradient: feature width mismatch");
  const std::size_t chunks =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), 1, batch);
  std::vector<std::size_t> bounds(chunks + 1);
  for (std::size_t c = 0; c <= chunks; ++c) bounds[c] = batch * c / chunks;

  std::vector<ForwardCache> caches(chunks);
  std::vector<double> predicted(batch);
  ParallelFor(chunks, static_cast<int>(chunks), [&](std::size_t c) {
    const auto begin = static_cast<Eigen::Index>(bounds[c]);
    const auto len = static_cast<Eigen::Index>(bounds[c + 1] - bounds[c]);
    caches[c] = RunForward(model.layers(), x.middleCols(begin, len));
    for (Eigen::Index i = 0; i < len; ++i)
      predicted[bounds[c] + static_cast<std::size_t>(i)] = caches[c].output[i];
  });
  const double loss = ShrinkageLoss(predicted, target, params);
  if (grad == nullptr) return loss;

  const auto d_pred = ShrinkageLossGradient(predicted, target, params);
  std::vector<std::vector<DenseLayer>> partial(chunks);
  ParallelFor(chunks, static_cast<int>(chunks), [&](std::size_t c) {
    RunBackward(model.layers(), caches[c],
                std::span<const double>(d_pred).subspan(bounds[c],
                                                        bounds[c + 1] - bounds[c]),
                partial[c]);
  });
  grad->layers = std::move(partial[0]);
  for (std::size_t c = 1; c < chunks; ++c)
    for (std::size_t l = 0; l < grad->layers.size(); ++l) {
      grad->layers[l].weight += partial[c][l].weight;
      grad->layers[l].bias += partial[c][l].bias;
    }
  return loss;
}

// ------------------------------------------------------------------- Adam

AdamOptimizer::AdamOptimizer(const WlcModel& model, double learning_rate,
                             AdamConfig config)
    : learning_rate_(learning_rate), config_(config) {
  for (const auto& l : model.layers()) {
    DenseLayer zero{Eigen::MatrixXd::Zero(l.weight.rows(), l.weight.cols()),
                    Eigen::VectorXd::Zero(l.bias.size())};
    m_.push_back(zero);
    v_.push_back(std::move(zero));
  }
}

void AdamOptimizer::Step(WlcModel& model, const Gradients& grad) {
  ++step_;
  const double b1 = config_.beta1, b2 = config_.beta2;
  const double correct1 = 1.0 - std::pow(b1, static_cast<double>(step_));
  const double correct2 = 1.0 - std::pow(b2, static_cast<double>(step_));
  auto update = [&](auto& param, auto& m, auto& v, const auto& g) {
    m = b1 * m + (1.0 - b1) * g;
    v = b2 * v + (1.0 - b2) * g.cwiseProduct(g);
    param.array() -= learning_rate_ * (m.array() / correct1) /
                     ((v.array() / correct2).sqrt() + config_.epsilon);
  };
  auto& layers = model.layers();
  for (std::size_t l = 0; l < layers.size(); ++l) {
    update(layers[l].weight, m_[l].weight, v_[l].weight, grad.layers[l].weight);
    update(layers[l].bias, m_[l].bias, v_[l].bias, grad.layers[l].bias);
  }
}

// --------------------------------------------------------------- Training

namespace {

std::vector<double> Targets(const std::vector<WordExample>& examples) {
  std::vector<double> t;
  t.reserve(examples.size());
  for (const auto& ex : examples) t.push_back(ex.target);
  return t;
}

// Size-weighted mean loss over consecutive chunks of `batch` examples.
double EvaluateLoss(const WlcModel& model, const Eigen::MatrixXd& x,
                    const std::vector<double>& target,
                    const ShrinkParams& params, std::size_t batch,
                    int threads) {
  const auto n = static_cast<std::size_t>(x.cols());
  double sum = 0.0;
  for (std::size_t start = 0; start < n; start += batch) {
    const std::size_t len = std::min(batch, n - start);
    Eigen::MatrixXd xb = x.middleCols(static_cast<Eigen::Index>(start),
                                      static_cast<Eigen::Index>(len));
    sum += static_cast<double>(len) *
           LossAndGradient(model, xb,
                           std::span<const double>(target).subspan(start, len),
                           params, nullptr, threads);
  }
  return sum / static_cast<double>(n);
}

bool AllFinite(const Gradients& g) {
  for (const auto& l : g.layers)
    if (!l.weight.allFinite() || !l.bias.allFinite()) return false;
  return true;
}

}  // namespace

TrainResult Train(const std::vector<WordExample>& train,
                  const std::vector<WordExample>& val,
                  const FeatureLayout& layout, const TrainConfig& config,
                  const ShrinkParams& params) {
  config.Validate();
  params.Validate();
  if (train.empty()) throw std::invalid_argument("Train: empty training set");

  TrainResult result;
  WlcModel& model = result.model;
  model = WlcModel::Create(layout.size(), config.hidden,
                           DeriveSeed(config.seed, 0));
  model.standardizer() = Standardizer::Fit(train, layout);
  model.train_config = config;
  model.shrink = params;

  const Eigen::MatrixXd x_train = ToColumns(train, model.standardizer());
  const std::vector<double> t_train = Targets(train);
  const Eigen::MatrixXd x_val = ToColumns(val, model.standardizer());
  const std::vector<double> t_val = Targets(val);

  AdamOptimizer adam(model, config.learning_rate, config.adam);
  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), 0);
  Gradients grad;
  Eigen::MatrixXd xb;
  std::vector<double> tb;

  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    Rng rng(DeriveSeed(config.seed, epoch));
    rng.Shuffle(order);
    double sum = 0.0;
    std::size_t batch_no = 0;
    for (std::size_t start = 0; start < order.size();
         start += config.batch_size, ++batch_no) {
      const std::size_t len = std::min(config.batch_size, order.size() - start);
      xb.resize(x_train.rows(), static_cast<Eigen::Index>(len));
      tb.resize(len);
      for (std::size_t i = 0; i < len; ++i) {
        xb.col(static_cast<Eigen::Index>(i)) =
            x_train.col(static_cast<Eigen::Index>(order[start + i]));
        tb[i] = t_train[order[start + i]];
      }
      const double loss =
          LossAndGradient(model, xb, tb, params, &grad, config.threads);
      if (!std::isfinite(loss) || !AllFinite(grad)) {
        std::ostringstream msg;
        msg << "non-finite loss or gradient at epoch " << epoch << ", batch "
            << batch_no << " (loss " << loss << ", lr " << config.learning_rate
            << ")";
        throw TrainingError(msg.str());
      }
      adam.Step(model, grad);
      sum += static_cast<double>(len) * loss;
    }
    EpochStats stats;
    stats.epoch = epoch;
    stats.train_loss = sum / static_cast<double>(order.size());
    if (!val.empty())
      stats.val_loss = EvaluateLoss(model, x_val, t_val, params,
                                    config.batch_size, config.threads);
    result.history.push_back(stats);
  }
  return result;
}

GridResult GridSearch(std::vector<WordExample> train,
                      std::vector<WordExample> val, const FeatureLayout& layout,
                      const std::vector<double>& alpha_grid,
                      const std::vector<double>& beta_grid,
                      std::size_t probe_epochs, TrainConfig config,
                      const ShrinkParams& params) {
  if (alpha_grid.empty() || beta_grid.empty())
    throw std::invalid_argument("GridSearch: empty grid");
  config.epochs = probe_epochs;
  std::vector<bool> correct;
  for (const auto& ex : val) correct.push_back(ex.correct());

  GridResult result;
  std::optional<double> best_nce;
  bool have_best = false;
  for (double alpha : alpha_grid)
    for (double beta : beta_grid) {
      const TelesParams teles{alpha, beta};
      Relabel(train, teles);
      Relabel(val, teles);
      TrainResult trained = Train(train, val, layout, config, params);
      GridCell cell{alpha, beta, std::nullopt, std::nullopt};
      if (!val.empty()) {
        cell.val_loss = trained.history.back().val_loss;
        cell.val_nce = Nce(trained.model.Predict(val), correct);
      }
      const bool better =
          !have_best ||
          (cell.val_nce && (!best_nce || *cell.val_nce > *best_nce));
      if (better) {
        have_best = true;
        best_nce = cell.val_nce;
        result.best_alpha = alpha;
        result.best_beta = beta;
      }
      result.table.push_back(cell);
    }
  return result;
}

// -------------------------------------------------------------- Baselines

namespace {

void CheckSpan(const Matrix& probs, const WordSpan& span) {
  if (span.first_frame < 1 || span.first_frame > span.last_frame ||
      span.last_frame > probs.rows())
    throw std::out_of_range("baseline: span outside the probability matrix");
}

}  // namespace

double ClassProbConfidence(const Matrix& probs, const WordSpan& span) {
  CheckSpan(probs, span);
  double sum = 0.0;
  for (std::size_t t = span.first_frame - 1; t < span.last_frame; ++t) {
    auto row = probs.Row(t);
    sum += *std::max_element(row.begin(), row.end());
  }
  return sum / static_cast<double>(span.last_frame - span.first_frame + 1);
}

double EntropyConfidence(const Matrix& probs, const WordSpan& span,
                         double t_alpha) {
  CheckSpan(probs, span);
  if (!(t_alpha > 0.0)) throw std::invalid_argument("Tsallis order must be > 0");
  double worst = 1.0;
  for (std::size_t t = span.first_frame - 1; t < span.last_frame; ++t) {
    double entropy = 0.0;
    if (t_alpha == 1.0) {
      for (double p : probs.Row(t))
        if (p > 0.0) entropy -= p * std::log(p);
    } else {
      double power_sum = 0.0;
      for (double p : probs.Row(t)) power_sum += std::pow(p, t_alpha);
      entropy = (1.0 - power_sum) / (t_alpha - 1.0);
    }
    worst = std::min(worst, std::exp(-entropy));
  }
  return worst;
}

// ------------------------------------------------------------ Persistence

std::string WlcModel::ToJson() const {
  Json j;
  j["format"] = "teles-wlc-model";
  j["version"] = 1;
  j["widths"] = widths();
  Json layers = Json::array();
  for (const auto& l : layers_) {
    std::vector<double> w;
    w.reserve(static_cast<std::size_t>(l.weight.size()));
    for (Eigen::Index r = 0; r < l.weight.rows(); ++r)
      for (Eigen::Index c = 0; c < l.weight.cols(); ++c) w.push_back(l.weight(r, c));
    layers.push_back({{"weight", w},
                      {"bias", std::vector<double>(l.bias.data(),
                                                   l.bias.data() + l.bias.size())}});
  }
  j["layers"] = std::move(layers);
  const auto& layout = standardizer_.layout();
  j["standardizer"] = {{"attention_dim", layout.attention_dim},
                       {"decoder_dim", layout.decoder_dim},
                       {"prob_dim", layout.prob_dim},
                       {"mean", standardizer_.mean()},
                       {"scale", standardizer_.scale()}};
  j["loss"] = {{"mode", LossModeName(shrink.mode)},
               {"gamma", shrink.gamma},
               {"kappa", shrink.kappa}};
  j["targets"] = targets == TargetKind::kTeles ? "teles" : "binary";
  j["teles"] = {{"alpha", teles.alpha}, {"beta", teles.beta}};
  j["train_config"] = {{"learning_rate", train_config.learning_rate},
                       {"epochs", train_config.epochs},
                       {"batch_size", train_config.batch_size},
                       {"seed", train_config.seed},
                       {"hidden", train_config.hidden},
                       {"threads", train_config.threads},
                       {"adam", {{"beta1", train_config.adam.beta1},
                                 {"beta2", train_config.adam.beta2},
                                 {"epsilon", train_config.adam.epsilon}}}};
  return j.dump();
}

WlcModel WlcModel::FromJson(const std::string& text) {
  try {
    const Json j = Json::parse(text);
    if (j.at("format") != "teles-wlc-model")
      throw std::runtime_error("not a teles-wlc-model document");
    const auto widths = j.at("widths").get<std::vector<std::size_t>>();
    const Json& layers = j.at("layers");
    if (widths.size() < 2 || layers.size() != widths.size() - 1)
      throw std::runtime_error("widths and layers disagree");
    WlcModel model;
    for (std::size_t l = 0; l < layers.size(); ++l) {
      const auto in = static_cast<Eigen::Index>(widths[l]);
      const auto out = static_cast<Eigen::Index>(widths[l + 1]);
      const auto w = layers[l].at("weight").get<std::vector<double>>();
      const auto b = layers[l].at("bias").get<std::vector<double>>();
      if (w.size() != static_cast<std::size_t>(in * out) ||
          b.size() != static_cast<std::size_t>(out))
        throw std::runtime_error("layer " + std::to_string(l) +
                                 " has the wrong number of parameters");
      DenseLayer layer{Eigen::MatrixXd(out, in), Eigen::VectorXd(out)};
      for (Eigen::Index r = 0; r < out; ++r)
        for (Eigen::Index c = 0; c < in; ++c)
          layer.weight(r, c) = w[static_cast<std::size_t>(r * in + c)];
      for (Eigen::Index r = 0; r < out; ++r) layer.bias[r] = b[static_cast<std::size_t>(r)];
      model.layers_.push_back(std::move(layer));
    }
    if (widths.back() != 1) throw std::runtime_error("output width must be 1");
    const Json& s = j.at("standardizer");
    FeatureLayout layout{s.at("attention_dim").get<std::size_t>(),
                         s.at("decoder_dim").get<std::size_t>(),
                         s.at("prob_dim").get<std::size_t>()};
    if (layout.size() != widths.front())
      throw std::runtime_error("standardizer width does not match input width");
    model.standardizer_ = Standardizer(layout,
                                       s.at("mean").get<std::vector<double>>(),
                                       s.at("scale").get<std::vector<double>>());
    const Json& loss = j.at("loss");
    model.shrink = {loss.at("gamma").get<double>(), loss.at("kappa").get<double>(),
                    LossModeFromName(loss.at("mode").get<std::string>())};
    model.targets = j.at("targets") == "binary" ? TargetKind::kBinary
                                                : TargetKind::kTeles;
    model.teles = {j.at("teles").at("alpha").get<double>(),
                   j.at("teles").at("beta").get<double>()};
    const Json& tc = j.at("train_config");
    model.train_config.learning_rate = tc.at("learning_rate").get<double>();
    model.train_config.epochs = tc.at("epochs").get<std::size_t>();
    model.train_config.batch_size = tc.at("batch_size").get<std::size_t>();
    model.train_config.seed = tc.at("seed").get<std::uint64_t>();
    model.train_config.hidden = tc.at("hidden").get<std::vector<std::size_t>>();
    model.train_config.threads = tc.at("threads").get<int>();
    model.train_config.adam = {tc.at("adam").at("beta1").get<double>(),
                               tc.at("adam").at("beta2").get<double>(),
                               tc.at("adam").at("epsilon").get<double>()};
    return model;
  } catch (const Json::exception& e) {
    throw std::runtime_error(std::string("model JSON: ") + e.what());
  }
}

void WlcModel::Save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write model " + path.string());
  out << ToJson() << '\n';
}

WlcModel WlcModel::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return FromJson(ss.str());
}

}  // namespace teles
