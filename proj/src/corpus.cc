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

#include "teles/corpus.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"

namespace teles {

using Json = nlohmann::ordered_json;

namespace {

constexpr double kRowSumTolerance = 1e-6;
constexpr std::string_view kSynthLetters =
    "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";

std::size_t Utf8Length(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead >> 5) == 0x6) return 2;
  if ((lead >> 4) == 0xE) return 3;
  if ((lead >> 3) == 0x1E) return 4;
  return 1;
}

Json MatrixToJson(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = m.Row(r);
    rows.push_back(Json(std::vector<double>(row.begin(), row.end())));
  }
  return rows;
}

Matrix MatrixFromJson(const Json& j, const char* name) {
  if (!j.is_array())
    throw CorpusError(std::string("field ") + name + " must be an array");
  const std::size_t rows = j.size();
  std::size_t cols = rows > 0 ? j[0].size() : 0;
  std::vector<double> data;
  data.reserve(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const Json& row = j[r];
    if (!row.is_array() || row.size() != cols)
      throw CorpusError(std::string("field ") + name + " row " +
                        std::to_string(r) + " is ragged");
    for (const Json& v : row) {
      if (!v.is_number())
        throw CorpusError(std::string("field ") + name + " row " +
                          std::to_string(r) + " has a non-numeric entry");
      data.push_back(v.get<double>());
    }
  }
  return Matrix(rows, cols, std::move(data));
}

const Json& Require(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw CorpusError(std::string("missing field ") + key);
  return *it;
}

}  // namespace

// ---------------------------------------------------------------- Alphabet

Alphabet::Alphabet(std::vector<std::string> tokens, int blank_index,
                   int space_index)
    : tokens_(std::move(tokens)),
      blank_index_(blank_index),
      space_index_(space_index) {
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    max_token_bytes_ = std::max(max_token_bytes_, tokens_[i].size());
    const int idx = static_cast<int>(i);
    if (idx != blank_index_ && idx != space_index_ && !tokens_[i].empty())
      graphemes_.insert(tokens_[i]);
  }
}

int Alphabet::Find(std::string_view token) const {
  for (std::size_t i = 0; i < tokens_.size(); ++i)
    if (tokens_[i] == token) return static_cast<int>(i);
  return -1;
}

std::vector<std::string> Alphabet::Tokenize(std::string_view word) const {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos < word.size()) {
    std::size_t len = std::min(max_token_bytes_, word.size() - pos);
    for (; len > 0; --len)
      if (graphemes_.count(std::string(word.substr(pos, len)))) break;
    if (len == 0)
      len = std::min(Utf8Length(static_cast<unsigned char>(word[pos])),
                     word.size() - pos);
    out.emplace_back(word.substr(pos, len));
    pos += len;
  }
  return out;
}

std::string Alphabet::Render(const std::vector<int>& token_ids) const {
  std::string out;
  for (int id : token_ids) {
    if (id == blank_index_) continue;
    if (id == space_index_)
      out.push_back(' ');
    else
      out += tokens_.at(id);
  }
  return out;
}

std::vector<std::string> Alphabet::Violations() const {
  std::vector<std::string> v;
  const int n = static_cast<int>(tokens_.size());
  if (blank_index_ < 0 || blank_index_ >= n)
    v.push_back("blank_index out of range");
  if (space_index_ < 0 || space_index_ >= n)
    v.push_back("space_index out of range");
  if (blank_index_ == space_index_)
    v.push_back("blank_index equals space_index");
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (tokens_[i].empty())
      v.push_back("token " + std::to_string(i) + " is empty");
    else if (!seen.insert(tokens_[i]).second)
      v.push_back("duplicate token '" + tokens_[i] + "'");
  }
  return v;
}

std::string AlphabetToJson(const Alphabet& alphabet) {
  Json j;
  j["tokens"] = alphabet.tokens();
  j["blank_index"] = alphabet.blank_index();
  j["space_index"] = alphabet.space_index();
  return j.dump();
}

Alphabet AlphabetFromJson(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw CorpusError(std::string("alphabet: ") + e.what());
  }
  try {
    Alphabet a(Require(j, "tokens").get<std::vector<std::string>>(),
               Require(j, "blank_index").get<int>(),
               Require(j, "space_index").get<int>());
    auto violations = a.Violations();
    if (!violations.empty())
      throw CorpusError("alphabet: " + violations.front());
    return a;
  } catch (const Json::exception& e) {
    throw CorpusError(std::string("alphabet: ") + e.what());
  }
}

Alphabet LoadAlphabet(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CorpusError("cannot open alphabet file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return AlphabetFromJson(ss.str());
}

void WriteAlphabet(const std::filesystem::path& path,
                   const Alphabet& alphabet) {
  std::ofstream out(path);
  if (!out) throw CorpusError("cannot write " + path.string());
  out << AlphabetToJson(alphabet) << '\n';
}

// ------------------------------------------------------------------ Records

std::vector<std::string> UtteranceRecord::ReferenceWords() const {
  std::vector<std::string> words;
  words.reserve(reference.size());
  for (const auto& w : reference) words.push_back(w.text);
  return words;
}

std::vector<std::string> ValidateRecord(const UtteranceRecord& r) {
  std::vector<std::string> v;
  if (r.id.empty()) v.push_back("empty id");
  if (!(r.frame_duration_s > 0.0) || !std::isfinite(r.frame_duration_s))
    v.push_back("frame_duration_s must be positive");
  if (r.probs.rows() == 0) v.push_back("S has no frames");
  if (r.attention.rows() != r.probs.rows() ||
      r.decoder.rows() != r.probs.rows())
    v.push_back("matrix row mismatch: S has " + std::to_string(r.probs.rows()) +
                " rows, A has " + std::to_string(r.attention.rows()) +
                ", H has " + std::to_string(r.decoder.rows()));
  for (std::size_t t = 0; t < r.probs.rows(); ++t) {
    double sum = 0.0;
    bool bad_entry = false;
    for (double p : r.probs.Row(t)) {
      if (!(p >= 0.0) || !std::isfinite(p)) bad_entry = true;
      sum += p;
    }
    if (bad_entry) {
      v.push_back("prob row " + std::to_string(t) +
                  " has a negative or non-finite entry");
    } else if (std::abs(sum - 1.0) > kRowSumTolerance) {
      std::ostringstream msg;
      msg << "prob row not normalized: row " << t << " sums to " << sum;
      v.push_back(msg.str());
    }
  }
  for (const Matrix* m : {&r.attention, &r.decoder})
    for (double x : m->data())
      if (!std::isfinite(x)) {
        v.push_back(m == &r.attention ? "A has a non-finite entry"
                                      : "H has a non-finite entry");
        break;
      }
  for (std::size_t i = 0; i < r.reference.size(); ++i) {
    const auto& w = r.reference[i];
    const std::string where = "reference word " + std::to_string(i);
    if (w.text.empty()) v.push_back(where + ": empty text");
    if (w.text.find(' ') != std::string::npos)
      v.push_back(where + ": text contains a space");
    if (!(w.start_s >= 0.0) || !(w.start_s < w.end_s))
      v.push_back(where + ": requires 0 <= start_s < end_s");
    if (i > 0 && w.start_s < r.reference[i - 1].start_s)
      v.push_back(where + ": words not ordered by start_s");
  }
  return v;
}

std::vector<std::string> ValidateRecord(const UtteranceRecord& record,
                                        const Alphabet& alphabet) {
  auto v = ValidateRecord(record);
  if (record.probs.cols() != alphabet.size())
    v.push_back("S has " + std::to_string(record.probs.cols()) +
                " columns but the alphabet has " +
                std::to_string(alphabet.size()) + " tokens");
  return v;
}

std::string RecordToJsonLine(const UtteranceRecord& r) {
  Json j;
  j["id"] = r.id;
  j["frame_duration_s"] = r.frame_duration_s;
  Json ref = Json::array();
  for (const auto& w : r.reference)
    ref.push_back({{"text", w.text}, {"start_s", w.start_s},
                   {"end_s", w.end_s}});
  j["reference"] = std::move(ref);
  j["S"] = MatrixToJson(r.probs);
  j["A"] = MatrixToJson(r.attention);
  j["H"] = MatrixToJson(r.decoder);
  return j.dump();
}

UtteranceRecord RecordFromJsonLine(std::string_view line) {
  Json j;
  try {
    j = Json::parse(line);
  } catch (const Json::exception& e) {
    throw CorpusError(std::string("parse error: ") + e.what());
  }
  if (!j.is_object()) throw CorpusError("record is not a JSON object");
  try {
    UtteranceRecord r;
    r.id = Require(j, "id").get<std::string>();
    r.frame_duration_s = Require(j, "frame_duration_s").get<double>();
    for (const Json& w : Require(j, "reference")) {
      r.reference.push_back({Require(w, "text").get<std::string>(),
                             Require(w, "start_s").get<double>(),
                             Require(w, "end_s").get<double>()});
    }
    r.probs = MatrixFromJson(Require(j, "S"), "S");
    r.attention = MatrixFromJson(Require(j, "A"), "A");
    r.decoder = MatrixFromJson(Require(j, "H"), "H");
    return r;
  } catch (const Json::exception& e) {
    throw CorpusError(std::string("bad field: ") + e.what());
  }
}

std::vector<UtteranceRecord> LoadManifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CorpusError("cannot open manifest " + path.string());
  std::vector<UtteranceRecord> records;
  std::unordered_set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = path.filename().string() + ":" +
                              std::to_string(line_no);
    UtteranceRecord r;
    try {
      r = RecordFromJsonLine(line);
    } catch (const CorpusError& e) {
      throw CorpusError(where + ": " + e.what());
    }
    auto violations = ValidateRecord(r);
    if (!violations.empty())
      throw CorpusError(where + ": record '" + r.id + "': " +
                        violations.front());
    if (!ids.insert(r.id).second)
      throw CorpusError(where + ": duplicate record id '" + r.id + "'");
    records.push_back(std::move(r));
  }
  if (in.bad()) throw CorpusError("read error on " + path.string());
  return records;
}

void WriteManifest(const std::filesystem::path& path,
                   const std::vector<UtteranceRecord>& records) {
  std::ofstream out(path);
  if (!out) throw CorpusError("cannot write " + path.string());
  for (const auto& r : records) out << RecordToJsonLine(r) << '\n';
  if (!out) throw CorpusError("write error on " + path.string());
}

// ---------------------------------------------------------------------- Rng

double Rng::Uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::size_t Rng::UniformIndex(std::size_t n) {
  if (n == 0) throw std::invalid_argument("UniformIndex: n must be positive");
  // Rejection sampling keeps the draw unbiased.
  const std::uint64_t range = n;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return static_cast<std::size_t>(x % range);
}

double Rng::Normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1;
  do {
    u1 = Uniform();
  } while (u1 <= 0.0);
  const double u2 = Uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * M_PI * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// ---------------------------------------------------------------- Synthesis

void ValidateSynthConfig(const SynthConfig& c) {
  auto fail = [](const std::string& what) {
    throw std::invalid_argument("SynthConfig: " + what);
  };
  if (c.n_utterances == 0) fail("n_utterances must be positive");
  if (c.vocab_size == 0) fail("vocab_size must be positive");
  if (c.alphabet_size < 2 || c.alphabet_size > kSynthLetters.size())
    fail("alphabet_size must be in [2, " +
         std::to_string(kSynthLetters.size()) + "]");
  if (c.words_per_utt.first == 0 || c.words_per_utt.first > c.words_per_utt.second)
    fail("words_per_utt must satisfy 1 <= min <= max");
  if (c.word_length.first == 0 || c.word_length.first > c.word_length.second)
    fail("word_length must satisfy 1 <= min <= max");
  for (auto [name, rate] : {std::pair{"char_sub_rate", c.char_sub_rate},
                            std::pair{"word_del_rate", c.word_del_rate},
                            std::pair{"word_ins_rate", c.word_ins_rate}})
    if (!(rate >= 0.0 && rate <= 1.0))
      fail(std::string(name) + " must be in [0, 1]");
  if (c.frames_per_char < 2) fail("frames_per_char must be at least 2");
  const double tokens = static_cast<double>(c.alphabet_size + 2);
  if (!(c.peakiness > 1.0 / tokens && c.peakiness <= 1.0))
    fail("peakiness must be in (1/|L'|, 1] so the intended token is the argmax");
  if (!(c.frame_duration_s > 0.0)) fail("frame_duration_s must be positive");
  if (!(c.state_noise >= 0.0) || !(c.noise_gain >= 0.0))
    fail("noise parameters must be non-negative");
  double words_possible = 0.0;
  for (std::size_t len = c.word_length.first; len <= c.word_length.second; ++len)
    words_possible += std::pow(static_cast<double>(c.alphabet_size),
                               static_cast<double>(len));
  if (static_cast<double>(c.vocab_size) > words_possible)
    fail("vocab_size exceeds the number of distinct words");
}

namespace {

enum class SlotKind { kKept, kDeleted, kInserted };

struct Slot {
  SlotKind kind;
  std::vector<int> ref_letters;   // kept/deleted: the reference word
  std::vector<int> emit_letters;  // kept/inserted: what the model emits
  double corruption = 0.0;        // fraction of corrupted characters
};

std::string LettersToWord(const std::vector<int>& letters) {
  std::string s;
  for (int l : letters) s.push_back(kSynthLetters[l]);
  return s;
}

void FillRow(std::span<double> row, std::size_t hot, double peakiness) {
  const double rest = (1.0 - peakiness) / static_cast<double>(row.size() - 1);
  for (double& x : row) x = rest;
  row[hot] = peakiness;
}

}  // namespace

SynthCorpus SynthGenerate(const SynthConfig& c) {
  ValidateSynthConfig(c);
  SynthCorpus corpus;

  std::vector<std::string> tokens = {"<b>", "|"};
  for (std::size_t i = 0; i < c.alphabet_size; ++i)
    tokens.emplace_back(1, kSynthLetters[i]);
  corpus.alphabet = Alphabet(std::move(tokens), 0, 1);
  const std::size_t num_tokens = corpus.alphabet.size();
  constexpr int kFirstLetterToken = 2;

  // Vocabulary and per-letter state embeddings shared by A and H.
  Rng vocab_rng(DeriveSeed(c.seed, 0));
  std::vector<std::vector<int>> vocab;
  std::unordered_set<std::string> seen;
  while (vocab.size() < c.vocab_size) {
    const std::size_t len =
        c.word_length.first +
        vocab_rng.UniformIndex(c.word_length.second - c.word_length.first + 1);
    std::vector<int> letters(len);
    for (auto& l : letters)
      l = static_cast<int>(vocab_rng.UniformIndex(c.alphabet_size));
    if (seen.insert(LettersToWord(letters)).second)
      vocab.push_back(std::move(letters));
  }
  const std::size_t emb_dim = std::max(c.attention_dim, c.decoder_dim);
  Matrix letter_emb(c.alphabet_size, emb_dim);
  for (std::size_t l = 0; l < c.alphabet_size; ++l)
    for (std::size_t d = 0; d < emb_dim; ++d)
      letter_emb(l, d) = vocab_rng.Normal();
  auto embed = [&](const std::vector<int>& letters) {
    std::vector<double> e(emb_dim, 0.0);
    if (letters.empty()) return e;
    const double scale = 1.0 / std::sqrt(static_cast<double>(letters.size()));
    for (int l : letters)
      for (std::size_t d = 0; d < emb_dim; ++d) e[d] += letter_emb(l, d);
    for (double& x : e) x *= scale;
    return e;
  };

  corpus.records.resize(c.n_utterances);
  corpus.oracle_hypotheses.resize(c.n_utterances);
  const std::size_t id_width = std::to_string(c.n_utterances - 1).size();

  for (std::size_t u = 0; u < c.n_utterances; ++u) {
    // Structure draws are consumed in a fixed pattern regardless of the
    // rates, so corpora at different corruption levels stay coupled.
    Rng rng(DeriveSeed(c.seed, 1 + 2 * u));
    Rng noise(DeriveSeed(c.seed, 2 + 2 * u));
    const std::size_t n_words =
        c.words_per_utt.first +
        rng.UniformIndex(c.words_per_utt.second - c.words_per_utt.first + 1);
    std::vector<Slot> slots;
    for (std::size_t w = 0; w < n_words; ++w) {
      const auto& ref = vocab[rng.UniformIndex(vocab.size())];
      const bool deleted = rng.Bernoulli(c.word_del_rate);
      std::vector<int> emitted = ref;
      std::size_t corrupted = 0;
      for (auto& letter : emitted) {
        const bool sub = rng.Bernoulli(c.char_sub_rate);
        const auto offset = 1 + rng.UniformIndex(c.alphabet_size - 1);
        if (sub) {
          letter = static_cast<int>((letter + offset) % c.alphabet_size);
          ++corrupted;
        }
      }
      const bool inserted = rng.Bernoulli(c.word_ins_rate);
      const auto& ins_word = vocab[rng.UniformIndex(vocab.size())];
      if (deleted) {
        slots.push_back({SlotKind::kDeleted, ref, {}, 1.0});
      } else {
        slots.push_back({SlotKind::kKept, ref, std::move(emitted),
                         static_cast<double>(corrupted) /
                             static_cast<double>(ref.size())});
      }
      if (inserted) slots.push_back({SlotKind::kInserted, {}, ins_word, 1.0});
    }

    // Frame layout: slots separated by one space frame; each character is
    // frames_per_char frames followed by one blank frame.
    std::size_t total = 0;
    for (std::size_t s = 0; s < slots.size(); ++s) {
      const auto& letters = slots[s].kind == SlotKind::kInserted
                                ? slots[s].emit_letters
                                : slots[s].ref_letters;
      total += (s > 0 ? 1 : 0) + letters.size() * (c.frames_per_char + 1);
    }

    UtteranceRecord& rec = corpus.records[u];
    std::string id = std::to_string(u);
    rec.id = "utt" + std::string(id_width - id.size(), '0') + id;
    rec.frame_duration_s = c.frame_duration_s;
    rec.probs = Matrix(total, num_tokens);
    rec.attention = Matrix(total, c.attention_dim);
    rec.decoder = Matrix(total, c.decoder_dim);

    const std::vector<double> silence(emb_dim, 0.0);
    auto fill_states = [&](std::size_t frame, const std::vector<double>& a,
                           const std::vector<double>& h, double sigma) {
      for (std::size_t d = 0; d < c.attention_dim; ++d)
        rec.attention(frame, d) = a[d] + sigma * noise.Normal();
      for (std::size_t d = 0; d < c.decoder_dim; ++d)
        rec.decoder(frame, d) = h[d] + sigma * noise.Normal();
    };

    std::size_t frame = 0;
    for (std::size_t s = 0; s < slots.size(); ++s) {
      const Slot& slot = slots[s];
      if (s > 0) {
        FillRow(rec.probs.Row(frame), corpus.alphabet.space_index(),
                c.peakiness);
        fill_states(frame, silence, silence, c.state_noise);
        ++frame;
      }
      const bool emits = slot.kind != SlotKind::kDeleted;
      const auto& layout_letters =
          slot.kind == SlotKind::kInserted ? slot.emit_letters : slot.ref_letters;
      const auto a_vec = slot.kind == SlotKind::kInserted
                             ? silence
                             : embed(slot.ref_letters);
      const auto h_vec = emits ? embed(slot.emit_letters) : silence;
      const double sigma = c.state_noise + c.noise_gain * slot.corruption;
      const std::size_t first = frame + 1;  // 1-based
      for (std::size_t i = 0; i < layout_letters.size(); ++i) {
        const std::size_t token =
            emits ? kFirstLetterToken + slot.emit_letters[i]
                  : static_cast<std::size_t>(corpus.alphabet.blank_index());
        for (std::size_t k = 0; k < c.frames_per_char; ++k) {
          FillRow(rec.probs.Row(frame), token, c.peakiness);
          fill_states(frame, a_vec, h_vec, sigma);
          ++frame;
        }
        FillRow(rec.probs.Row(frame), corpus.alphabet.blank_index(),
                c.peakiness);
        fill_states(frame, a_vec, h_vec, sigma);
        ++frame;
      }
      const std::size_t last = frame - 1;  // last character frame, 1-based
      if (slot.kind != SlotKind::kInserted) {
        rec.reference.push_back(
            {LettersToWord(slot.ref_letters),
             static_cast<double>(first - 1) * c.frame_duration_s,
             static_cast<double>(last) * c.frame_duration_s});
      }
      if (emits)
        corpus.oracle_hypotheses[u].push_back(LettersToWord(slot.emit_letters));
    }
  }
  return corpus;
}

// -------------------------------------------------------------------- Split

std::array<std::vector<std::size_t>, 3> SplitIndices(
    std::size_t n, const std::array<double, 3>& ratios, std::uint64_t seed) {
  double sum = 0.0;
  for (double r : ratios) {
    if (!(r > 0.0)) throw std::invalid_argument("split ratios must be positive");
    sum += r;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("split ratios must sum to 1");
  if (n < ratios.size())
    throw std::invalid_argument("split needs at least 3 records, got " +
                                std::to_string(n));

  std::array<std::size_t, 3> sizes{};
  std::array<double, 3> remainders{};
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    const double exact = ratios[i] * static_cast<double>(n);
    sizes[i] = static_cast<std::size_t>(std::floor(exact + 1e-9));
    remainders[i] = exact - static_cast<double>(sizes[i]);
    assigned += sizes[i];
  }
  while (assigned < n) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < 3; ++i)
      if (remainders[i] > remainders[best]) best = i;
    ++sizes[best];
    remainders[best] = -1.0;
    ++assigned;
  }
  for (std::size_t i = 0; i < 3; ++i) {
    if (sizes[i] > 0) continue;
    std::size_t largest = 0;
    for (std::size_t j = 1; j < 3; ++j)
      if (sizes[j] > sizes[largest]) largest = j;
    --sizes[largest];
    ++sizes[i];
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.Shuffle(order);
  std::array<std::vector<std::size_t>, 3> parts;
  auto it = order.begin();
  for (std::size_t i = 0; i < 3; ++i) {
    parts[i].assign(it, it + static_cast<std::ptrdiff_t>(sizes[i]));
    std::sort(parts[i].begin(), parts[i].end());
    it += static_cast<std::ptrdiff_t>(sizes[i]);
  }
  return parts;
}

SplitResult Split(std::vector<UtteranceRecord> records,
                  const std::array<double, 3>& ratios, std::uint64_t seed) {
  auto parts = SplitIndices(records.size(), ratios, seed);
  SplitResult out;
  std::vector<UtteranceRecord>* dest[3] = {&out.train, &out.val, &out.test};
  for (std::size_t p = 0; p < 3; ++p)
    for (std::size_t idx : parts[p]) dest[p]->push_back(std::move(records[idx]));
  return out;
}

}  // namespace teles
