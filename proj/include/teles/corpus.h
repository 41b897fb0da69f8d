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

#ifndef TELES_CORPUS_H_
#define TELES_CORPUS_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "teles/matrix.h"

namespace teles {

// Raised for malformed manifests and records. The message carries the
// line number or record id that failed.
class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Output vocabulary L' of a CTC model: graphemes plus blank and the
// word-separator token.
class Alphabet {
 public:
  Alphabet() = default;
  Alphabet(std::vector<std::string> tokens, int blank_index, int space_index);

  const std::vector<std::string>& tokens() const { return tokens_; }
  int blank_index() const { return blank_index_; }
  int space_index() const { return space_index_; }
  std::size_t size() const { return tokens_.size(); }
  const std::string& token(int index) const { return tokens_.at(index); }

  // Index of `token`, or -1.
  int Find(std::string_view token) const;

  // Splits a word into grapheme units by longest match against the token
  // inventory (blank and space excluded). Characters not covered by any
  // token fall back to single UTF-8 code points.
  std::vector<std::string> Tokenize(std::string_view word) const;

  // Concatenates token strings; the space token renders as ' ' and blank
  // renders as nothing.
  std::string Render(const std::vector<int>& token_ids) const;

  // Empty if the alphabet is well formed, otherwise a list of problems.
  std::vector<std::string> Violations() const;

 private:
  std::vector<std::string> tokens_;
  int blank_index_ = 0;
  int space_index_ = 1;
  std::size_t max_token_bytes_ = 1;
  std::unordered_set<std::string> graphemes_;
};

struct ReferenceWord {
  std::string text;
  double start_s = 0.0;
  double end_s = 0.0;

  friend bool operator==(const ReferenceWord&, const ReferenceWord&) = default;
};

// One utterance's ASR dump: reference words with forced-alignment times,
// and the frame-wise probability (S), attention (A) and decoder (H)
// matrices, all sharing the same subsampled frame count.
struct UtteranceRecord {
  std::string id;
  std::vector<ReferenceWord> reference;
  double frame_duration_s = 0.0;
  Matrix probs;      // S: T' x |L'|
  Matrix attention;  // A: T' x D_a
  Matrix decoder;    // H: T' x D_h

  std::size_t num_frames() const { return probs.rows(); }
  double duration_s() const {
    return static_cast<double>(num_frames()) * frame_duration_s;
  }
  std::vector<std::string> ReferenceWords() const;

  friend bool operator==(const UtteranceRecord&,
                         const UtteranceRecord&) = default;
};

// Returns every violated record invariant; empty means the record is valid.
std::vector<std::string> ValidateRecord(const UtteranceRecord& record);

// Same, additionally checking S's width against the alphabet.
std::vector<std::string> ValidateRecord(const UtteranceRecord& record,
                                        const Alphabet& alphabet);

// JSON (de)serialization. Doubles are written in shortest round-trip form,
// so a write/read cycle is bit-exact.
std::string RecordToJsonLine(const UtteranceRecord& record);
UtteranceRecord RecordFromJsonLine(std::string_view line);

std::vector<UtteranceRecord> LoadManifest(const std::filesystem::path& path);
void WriteManifest(const std::filesystem::path& path,
                   const std::vector<UtteranceRecord>& records);

Alphabet LoadAlphabet(const std::filesystem::path& path);
void WriteAlphabet(const std::filesystem::path& path, const Alphabet& alphabet);
std::string AlphabetToJson(const Alphabet& alphabet);
Alphabet AlphabetFromJson(std::string_view text);

// Deterministic random source. The engine is std::mt19937_64; the
// uniform/normal transforms are spelled out here so generated corpora are
// identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double Uniform();                       // [0, 1)
  std::size_t UniformIndex(std::size_t n);  // [0, n)
  double Normal();                        // N(0, 1), Box-Muller
  bool Bernoulli(double p) { return Uniform() < p; }

  template <typename T>
  void Shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i)
      std::swap(values[i - 1], values[UniformIndex(i)]);
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Mixes (seed, stream) into an independent 64-bit seed (splitmix64).
std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t stream);

struct SynthConfig {
  std::size_t n_utterances = 200;
  std::size_t vocab_size = 60;
  std::size_t alphabet_size = 20;  // letters, excluding blank and space
  std::pair<std::size_t, std::size_t> words_per_utt{3, 8};
  std::pair<std::size_t, std::size_t> word_length{3, 7};
  double char_sub_rate = 0.0;  // per character
  double word_del_rate = 0.0;  // per reference word
  double word_ins_rate = 0.0;  // per reference word (insert after it)
  std::size_t frames_per_char = 2;
  double peakiness = 0.9;
  std::size_t attention_dim = 16;
  std::size_t decoder_dim = 16;
  double frame_duration_s = 0.04;
  // Per-frame Gaussian noise on A and H: state_noise + noise_gain * the
  // fraction of the word's characters that were corrupted.
  double state_noise = 0.1;
  double noise_gain = 0.5;
  std::uint64_t seed = 7;
};

// Throws std::invalid_argument naming the offending field.
void ValidateSynthConfig(const SynthConfig& config);

struct SynthCorpus {
  Alphabet alphabet;
  std::vector<UtteranceRecord> records;
  // The hypothesis the generator rendered into each record's S.
  std::vector<std::vector<std::string>> oracle_hypotheses;
};

SynthCorpus SynthGenerate(const SynthConfig& config);

struct SplitResult {
  std::vector<UtteranceRecord> train;
  std::vector<UtteranceRecord> val;
  std::vector<UtteranceRecord> test;
};

// Shuffled partition with largest-remainder sizing; every part non-empty.
SplitResult Split(std::vector<UtteranceRecord> records,
                  const std::array<double, 3>& ratios, std::uint64_t seed);

// Index-level form of Split: returns the record indices of each part.
std::array<std::vector<std::size_t>, 3> SplitIndices(
    std::size_t n, const std::array<double, 3>& ratios, std::uint64_t seed);

}  // namespace teles

#endif  // TELES_CORPUS_H_
