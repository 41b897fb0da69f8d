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

#include "teles/align.h"

#include <stdexcept>

namespace teles {

char EditOpChar(EditOp op) {
  switch (op) {
    case EditOp::kCorrect: return 'C';
    case EditOp::kSubstitution: return 'S';
    case EditOp::kInsertion: return 'I';
    case EditOp::kDeletion: return 'D';
  }
  return '?';
}

EditOp EditOpFromChar(char c) {
  switch (c) {
    case 'C': return EditOp::kCorrect;
    case 'S': return EditOp::kSubstitution;
    case 'I': return EditOp::kInsertion;
    case 'D': return EditOp::kDeletion;
  }
  throw std::invalid_argument(std::string("unknown edit op '") + c + "'");
}

std::size_t AlignmentTrace::Cost() const {
  return ops.size() - Count(EditOp::kCorrect);
}

std::size_t AlignmentTrace::Count(EditOp op) const {
  return static_cast<std::size_t>(
      std::count_if(ops.begin(), ops.end(),
                    [op](const AlignmentEntry& e) { return e.op == op; }));
}

std::string AlignmentTrace::OpString() const {
  std::string s;
  for (const auto& e : ops) s.push_back(EditOpChar(e.op));
  return s;
}

AlignmentTrace AlignWords(const std::vector<std::string>& ref,
                          const std::vector<std::string>& hyp) {
  return AlignSequences(ref, hyp);
}

double ErrorCounts::Rate() const {
  if (reference_length == 0)
    throw std::invalid_argument("error rate undefined: zero reference length");
  return 100.0 * static_cast<double>(errors()) /
         static_cast<double>(reference_length);
}

ErrorCounts& ErrorCounts::operator+=(const ErrorCounts& o) {
  substitutions += o.substitutions;
  insertions += o.insertions;
  deletions += o.deletions;
  reference_length += o.reference_length;
  return *this;
}

ErrorCounts CountErrors(const AlignmentTrace& trace, std::size_t ref_length) {
  ErrorCounts c;
  c.substitutions = trace.Count(EditOp::kSubstitution);
  c.insertions = trace.Count(EditOp::kInsertion);
  c.deletions = trace.Count(EditOp::kDeletion);
  c.reference_length = ref_length;
  return c;
}

ErrorCounts WordErrors(const std::vector<WordPair>& pairs) {
  ErrorCounts total;
  for (const auto& [ref, hyp] : pairs)
    total += CountErrors(AlignWords(ref, hyp), ref.size());
  return total;
}

double Wer(const std::vector<WordPair>& pairs) {
  return WordErrors(pairs).Rate();
}

double Cer(const std::vector<StringPair>& pairs) {
  ErrorCounts total;
  for (const auto& [ref, hyp] : pairs) {
    auto r = SplitCodePoints(ref);
    auto h = SplitCodePoints(hyp);
    total += CountErrors(AlignSequences(r, h), r.size());
  }
  return total.Rate();
}

std::vector<std::string> SplitCodePoints(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const auto lead = static_cast<unsigned char>(text[i]);
    std::size_t len = 1;
    if ((lead >> 5) == 0x6) len = 2;
    else if ((lead >> 4) == 0xE) len = 3;
    else if ((lead >> 3) == 0x1E) len = 4;
    len = std::min(len, text.size() - i);
    out.emplace_back(text.substr(i, len));
    i += len;
  }
  return out;
}

std::vector<std::string> SplitWords(std::string_view text) {
  std::vector<std::string> words;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && text[i] == ' ') ++i;
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ') ++j;
    if (j > i) words.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return words;
}

}  // namespace teles
