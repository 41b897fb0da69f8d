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

#include "teles/features.h"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <stdexcept>

namespace teles {

FeatureLayout LayoutOf(const UtteranceRecord& record) {
  return {record.attention.cols(), record.decoder.cols(), record.probs.cols()};
}

std::vector<double> AggregateSpan(const Matrix& matrix, const WordSpan& span) {
  if (span.first_frame < 1 || span.first_frame > span.last_frame ||
      span.last_frame > matrix.rows())
    throw std::out_of_range("AggregateSpan: span [" +
                            std::to_string(span.first_frame) + ", " +
                            std::to_string(span.last_frame) +
                            "] outside a matrix with " +
                            std::to_string(matrix.rows()) + " rows");
  std::vector<double> mean(matrix.cols(), 0.0);
  for (std::size_t t = span.first_frame - 1; t < span.last_frame; ++t) {
    auto row = matrix.Row(t);
    for (std::size_t d = 0; d < row.size(); ++d) mean[d] += row[d];
  }
  const double count =
      static_cast<double>(span.last_frame - span.first_frame + 1);
  for (double& m : mean) m /= count;
  return mean;
}

std::vector<WordExample> BuildExamples(const UtteranceRecord& record,
                                       const std::vector<WordSpan>& spans,
                                       const std::vector<ScoredWord>& scored) {
  if (spans.size() != scored.size())
    throw std::invalid_argument("BuildExamples: " +
                                std::to_string(spans.size()) + " spans but " +
                                std::to_string(scored.size()) +
                                " scored words in '" + record.id + "'");
  std::vector<WordExample> examples;
  examples.reserve(spans.size());
  for (std::size_t n = 0; n < spans.size(); ++n) {
    if (scored[n].hyp_index != n)
      throw std::invalid_argument("BuildExamples: scored words out of order");
    WordExample ex;
    auto a = AggregateSpan(record.attention, spans[n]);
    auto h = AggregateSpan(record.decoder, spans[n]);
    auto s = AggregateSpan(record.probs, spans[n]);
    ex.x.reserve(a.size() + h.size() + s.size());
    ex.x.insert(ex.x.end(), a.begin(), a.end());
    ex.x.insert(ex.x.end(), h.begin(), h.end());
    ex.x.insert(ex.x.end(), s.begin(), s.end());
    ex.target = scored[n].c;
    ex.utterance_id = record.id;
    ex.hyp_index = n;
    ex.op = scored[n].op;
    ex.c_t = scored[n].c_t;
    ex.c_l = scored[n].c_l;
    examples.push_back(std::move(ex));
  }
  return examples;
}

Standardizer::Standardizer(FeatureLayout layout, std::vector<double> mean,
                           std::vector<double> scale)
    : layout_(layout), mean_(std::move(mean)), scale_(std::move(scale)) {
  if (mean_.size() != layout_.size() || scale_.size() != layout_.size())
    throw std::invalid_argument("Standardizer: statistics do not match layout");
}

Standardizer Standardizer::Fit(const std::vector<WordExample>& examples,
                               const FeatureLayout& layout) {
  const std::size_t dim = layout.size();
  const std::size_t scaled = layout.attention_dim + layout.decoder_dim;
  std::vector<double> mean(dim, 0.0), scale(dim, 1.0);
  if (examples.empty()) return Standardizer(layout, mean, scale);
  for (const auto& ex : examples) {
    if (ex.x.size() != dim)
      throw std::invalid_argument("Standardizer::Fit: feature width " +
                                  std::to_string(ex.x.size()) +
                                  " does not match layout width " +
                                  std::to_string(dim));
    for (std::size_t d = 0; d < scaled; ++d) mean[d] += ex.x[d];
  }
  const double n = static_cast<double>(examples.size());
  for (std::size_t d = 0; d < scaled; ++d) mean[d] /= n;
  std::vector<double> var(scaled, 0.0);
  for (const auto& ex : examples)
    for (std::size_t d = 0; d < scaled; ++d) {
      const double diff = ex.x[d] - mean[d];
      var[d] += diff * diff;
    }
  for (std::size_t d = 0; d < scaled; ++d) {
    const double sd = std::sqrt(var[d] / n);
    scale[d] = sd > 1e-12 ? sd : 1.0;
  }
  return Standardizer(layout, std::move(mean), std::move(scale));
}

void Standardizer::ApplyInPlace(std::vector<double>& x) const {
  if (x.size() != mean_.size())
    throw std::invalid_argument("Standardizer: feature width " +
                                std::to_string(x.size()) + ", expected " +
                                std::to_string(mean_.size()));
  for (std::size_t d = 0; d < x.size(); ++d) x[d] = (x[d] - mean_[d]) / scale_[d];
}

std::vector<double> Standardizer::Apply(const std::vector<double>& x) const {
  std::vector<double> out = x;
  ApplyInPlace(out);
  return out;
}

void WriteFeatureCsv(const std::filesystem::path& path,
                     const std::vector<WordExample>& examples) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << std::setprecision(17);
  out << "utterance_id,hyp_index,op,c_t,c_l,c";
  const std::size_t dim = examples.empty() ? 0 : examples.front().x.size();
  for (std::size_t d = 0; d < dim; ++d) out << ",x" << d;
  out << '\n';
  for (const auto& ex : examples) {
    out << ex.utterance_id << ',' << ex.hyp_index << ',' << EditOpChar(ex.op)
        << ',' << ex.c_t << ',' << ex.c_l << ',' << ex.target;
    for (double v : ex.x) out << ',' << v;
    out << '\n';
  }
}

}  // namespace teles
