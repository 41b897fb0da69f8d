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

#include "teles/decode.h"

#include <stdexcept>

namespace teles {

FramePath GreedyDecode(const Matrix& probs) {
  if (probs.rows() == 0 || probs.cols() == 0)
    throw std::invalid_argument("GreedyDecode: empty probability matrix");
  FramePath path(probs.rows());
  for (std::size_t t = 0; t < probs.rows(); ++t) {
    auto row = probs.Row(t);
    std::size_t best = 0;
    for (std::size_t k = 1; k < row.size(); ++k)
      if (row[k] > row[best]) best = k;
    path[t] = static_cast<int>(best);
  }
  return path;
}

std::vector<int> CollapsePath(const FramePath& path,
                              const Alphabet& alphabet) {
  std::vector<int> out;
  int prev = -1;
  for (int token : path) {
    if (token != prev && token != alphabet.blank_index()) out.push_back(token);
    prev = token;
  }
  return out;
}

std::vector<WordSpan> WordSpans(const FramePath& path, const Alphabet& alphabet,
                                double frame_duration_s) {
  std::vector<WordSpan> spans;
  WordSpan current;
  bool open = false;
  auto close = [&] {
    if (!open) return;
    current.start_s =
        static_cast<double>(current.first_frame - 1) * frame_duration_s;
    current.end_s = static_cast<double>(current.last_frame) * frame_duration_s;
    spans.push_back(std::move(current));
    current = WordSpan{};
    open = false;
  };

  int prev = -1;
  for (std::size_t i = 0; i < path.size(); ++i) {
    const int token = path[i];
    const std::size_t frame = i + 1;
    if (token == alphabet.blank_index()) {
      prev = token;
      continue;
    }
    if (token == alphabet.space_index()) {
      close();
      prev = token;
      continue;
    }
    if (!open) {
      open = true;
      current.first_frame = frame;
    }
    // A repeat frame extends the current character; a new emission appends.
    if (token != prev) current.text += alphabet.token(token);
    current.last_frame = frame;
    prev = token;
  }
  close();
  return spans;
}

std::vector<std::string> SpanTexts(const std::vector<WordSpan>& spans) {
  std::vector<std::string> texts;
  texts.reserve(spans.size());
  for (const auto& s : spans) texts.push_back(s.text);
  return texts;
}

}  // namespace teles
