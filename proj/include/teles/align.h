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

#ifndef TELES_ALIGN_H_
#define TELES_ALIGN_H_

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace teles {

enum class EditOp { kCorrect, kSubstitution, kInsertion, kDeletion };

char EditOpChar(EditOp op);          // 'C', 'S', 'I', 'D'
EditOp EditOpFromChar(char c);

// One step of a Levenshtein alignment. Indices are 0-based positions in the
// reference and hypothesis sequences.
struct AlignmentEntry {
  EditOp op;
  std::optional<std::size_t> ref_index;
  std::optional<std::size_t> hyp_index;

  friend bool operator==(const AlignmentEntry&, const AlignmentEntry&) = default;
};

struct AlignmentTrace {
  std::vector<AlignmentEntry> ops;

  std::size_t Cost() const;
  std::size_t Count(EditOp op) const;
  std::string OpString() const;  // e.g. "SCSCCCSSCIS"
};

// Unit-cost Levenshtein alignment with a fixed backtrace preference:
// diagonal (C/S) first, then deletion, then insertion.
template <typename T>
AlignmentTrace AlignSequences(const std::vector<T>& ref,
                              const std::vector<T>& hyp) {
  const std::size_t n = ref.size(), m = hyp.size(), cells = (n + 1) * (m + 1);
  // Utterance-sized tables stay on the stack.
  std::array<std::uint32_t, 1024> local;
  std::vector<std::uint32_t> heap;
  std::uint32_t* cost = local.data();
  if (cells > local.size()) {
    heap.resize(cells);
    cost = heap.data();
  }
  auto at = [&](std::size_t i, std::size_t j) -> std::uint32_t& {
    return cost[i * (m + 1) + j];
  };
  for (std::size_t i = 0; i <= n; ++i) at(i, 0) = static_cast<std::uint32_t>(i);
  for (std::size_t j = 0; j <= m; ++j) at(0, j) = static_cast<std::uint32_t>(j);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= m; ++j) {
      const std::uint32_t diag =
          at(i - 1, j - 1) + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      at(i, j) = std::min({diag, at(i - 1, j) + 1, at(i, j - 1) + 1});
    }

  AlignmentTrace trace;
  trace.ops.reserve(n + m);
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0) {
      const bool same = ref[i - 1] == hyp[j - 1];
      if (at(i, j) == at(i - 1, j - 1) + (same ? 0 : 1)) {
        trace.ops.push_back({same ? EditOp::kCorrect : EditOp::kSubstitution,
                             i - 1, j - 1});
        --i;
        --j;
        continue;
      }
    }
    if (i > 0 && at(i, j) == at(i - 1, j) + 1) {
      trace.ops.push_back({EditOp::kDeletion, i - 1, std::nullopt});
      --i;
    } else {
      trace.ops.push_back({EditOp::kInsertion, std::nullopt, j - 1});
      --j;
    }
  }
  std::reverse(trace.ops.begin(), trace.ops.end());
  return trace;
}

AlignmentTrace AlignWords(const std::vector<std::string>& ref,
                          const std::vector<std::string>& hyp);

struct ErrorCounts {
  std::size_t substitutions = 0;
  std::size_t insertions = 0;
  std::size_t deletions = 0;
  std::size_t reference_length = 0;

  std::size_t errors() const { return substitutions + insertions + deletions; }
  // 100 * errors / reference_length. Throws when the reference is empty.
  double Rate() const;
  ErrorCounts& operator+=(const ErrorCounts& other);
};

ErrorCounts CountErrors(const AlignmentTrace& trace, std::size_t ref_length);

using WordPair = std::pair<std::vector<std::string>, std::vector<std::string>>;
using StringPair = std::pair<std::string, std::string>;

// Corpus word error rate in percent. Not capped at 100.
double Wer(const std::vector<WordPair>& pairs);
ErrorCounts WordErrors(const std::vector<WordPair>& pairs);

// Corpus character error rate in percent over UTF-8 code points; the space
// between words counts as a character.
double Cer(const std::vector<StringPair>& pairs);

std::vector<std::string> SplitCodePoints(std::string_view text);
std::vector<std::string> SplitWords(std::string_view text);

}  // namespace teles

#endif  // TELES_ALIGN_H_
