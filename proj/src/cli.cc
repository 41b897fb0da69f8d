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

#include "teles/cli.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "teles/acquisition.h"
#include "teles/align.h"
#include "teles/calib.h"
#include "teles/corpus.h"
#include "teles/decode.h"
#include "teles/features.h"
#include "teles/pipeline.h"
#include "teles/teles.h"
#include "teles/wlc.h"

namespace teles::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string config;
  int threads = 1;
  std::uint64_t seed = 7;

  std::string alphabet;
  std::string manifest;
  std::string train_manifest;
  std::string val_manifest;
  std::string model;
  std::string out;
  std::string predictions;
  std::string history;
  std::string features;
  std::string reliability;

  double alpha = 0.75;
  double beta = 0.5;
  double gamma = 5.0;
  double kappa = 0.2;
  std::string loss_mode = "per-word";

  double learning_rate = 1e-4;
  std::size_t epochs = 50;
  std::size_t batch_size = 32;
  std::string hidden = "512,256,128";
  std::string targets = "teles";

  std::string alpha_grid = "0.25,0.5,0.75,1";
  std::string beta_grid = "0.25,0.5,0.75,1";
  std::size_t probe_epochs = 10;

  std::size_t bins = 10;
  std::string score = "pred";

  double budget_hours = 0.0;
  double budget_fraction = 0.0;
  double delta = 0.8;
  std::string baseline = "path-prob";

  bool dump = false;

  SynthConfig synth;
  std::string split = "0.8,0.1,0.1";
};

bool Verbose() {
  const char* v = std::getenv("TELES_VERBOSE");
  return v != nullptr && *v != '\0' && std::string(v) != "0";
}

std::vector<std::string> SplitList(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) items.push_back(item);
  return items;
}

std::vector<double> ParseDoubles(const std::string& text, const std::string& flag) {
  std::vector<double> values;
  for (const auto& item : SplitList(text)) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size())
      throw UsageError(flag + ": '" + item + "' is not a number");
    values.push_back(v);
  }
  if (values.empty()) throw UsageError(flag + ": empty list");
  return values;
}

std::vector<std::size_t> ParseWidths(const std::string& text) {
  std::vector<std::size_t> widths;
  for (double v : ParseDoubles(text, "--hidden")) {
    if (v < 1 || v != static_cast<double>(static_cast<std::size_t>(v)))
      throw UsageError("--hidden: widths must be positive integers");
    widths.push_back(static_cast<std::size_t>(v));
  }
  return widths;
}

void Require(const std::string& value, const std::string& flag,
             const std::string& command) {
  if (value.empty()) throw UsageError(command + ": " + flag + " is required");
}

void WriteText(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

// Writes to `path`, or to `fallback` when no path was given.
void Emit(const std::string& path, const std::string& text, std::ostream& fallback) {
  if (path.empty())
    fallback << text;
  else
    WriteText(path, text);
}

TelesParams TelesFrom(const Options& o) {
  TelesParams p{o.alpha, o.beta};
  p.Validate();
  return p;
}

ShrinkParams ShrinkFrom(const Options& o) {
  ShrinkParams p{o.gamma, o.kappa, LossModeFromName(o.loss_mode)};
  p.Validate();
  return p;
}

TrainConfig TrainFrom(const Options& o) {
  TrainConfig c;
  c.learning_rate = o.learning_rate;
  c.epochs = o.epochs;
  c.batch_size = o.batch_size;
  c.seed = o.seed;
  c.hidden = ParseWidths(o.hidden);
  c.threads = o.threads;
  c.Validate();
  return c;
}

Json OpCounts(const std::map<char, std::size_t>& counts) {
  Json j = Json::object();
  for (char op : {'C', 'S', 'I', 'D'}) {
    auto it = counts.find(op);
    j[std::string(1, op)] = it == counts.end() ? 0 : it->second;
  }
  return j;
}

// ------------------------------------------------------------------ synth

int RunSynth(const Options& o, std::ostream& out, std::ostream& err) {
  Require(o.out, "--out", "synth");
  SynthConfig config = o.synth;
  config.seed = o.seed;
  const auto ratios = ParseDoubles(o.split, "--split");
  if (ratios.size() != 3) throw UsageError("--split needs three ratios");
  SynthCorpus corpus = SynthGenerate(config);
  const auto parts = SplitIndices(corpus.records.size(),
                                  {ratios[0], ratios[1], ratios[2]},
                                  DeriveSeed(config.seed, 0x5b17));
  const fs::path dir(o.out);
  fs::create_directories(dir);
  WriteAlphabet(dir / "alphabet.json", corpus.alphabet);
  WriteManifest(dir / "manifest.jsonl", corpus.records);

  std::string oracle;
  for (std::size_t i = 0; i < corpus.records.size(); ++i) {
    Json line = {{"id", corpus.records[i].id},
                 {"hypothesis", corpus.oracle_hypotheses[i]}};
    oracle += line.dump() + "\n";
  }
  WriteText(dir / "oracle.jsonl", oracle);

  static const char* kNames[3] = {"train", "val", "test"};
  Json splits = Json::object();
  for (int p = 0; p < 3; ++p) {
    std::vector<UtteranceRecord> subset;
    Json ids = Json::array();
    for (auto i : parts[p]) {
      subset.push_back(corpus.records[i]);
      ids.push_back(corpus.records[i].id);
    }
    splits[kNames[p]] = std::move(ids);
    WriteManifest(dir / (std::string(kNames[p]) + ".jsonl"), subset);
  }
  WriteText(dir / "splits.json", splits.dump(2) + "\n");

  Json report = {{"out", dir.string()},
                 {"utterances", corpus.records.size()},
                 {"train", parts[0].size()},
                 {"val", parts[1].size()},
                 {"test", parts[2].size()},
                 {"seed", config.seed}};
  out << report.dump(2) << "\n";
  if (Verbose()) err << "[teles] synth: wrote " << corpus.records.size()
                     << " utterances to " << dir.string() << "\n";
  return 0;
}

// ------------------------------------------------------------------ score

int RunScore(const Options& o, std::ostream& out, std::ostream& err) {
  Require(o.alphabet, "--alphabet", "score");
  Require(o.manifest, "--manifest", "score");
  Require(o.out, "--out", "score");
  const Alphabet alphabet = LoadAlphabet(o.alphabet);
  const auto records = LoadManifest(o.manifest);
  const TelesParams params = TelesFrom(o);

  std::string lines;
  std::map<char, std::size_t> counts;
  double sum_c = 0.0;
  std::size_t words = 0;
  std::vector<WordPair> pairs;
  std::vector<WordExample> examples;
  for (const auto& record : records) {
    const UtteranceAnalysis a = AnalyzeUtterance(record, alphabet, params);
    const auto ref = record.ReferenceWords();
    const auto hyp = a.HypothesisWords();
    Json scored = Json::array();
    for (const auto& w : a.scored) {
      Json entry = {{"hyp", hyp[w.hyp_index]},
                    {"ref", w.ref_index ? Json(ref[*w.ref_index]) : Json(nullptr)},
                    {"op", std::string(1, EditOpChar(w.op))},
                    {"c_t", w.c_t},
                    {"c_l", w.c_l},
                    {"c", w.c}};
      scored.push_back(std::move(entry));
      sum_c += w.c;
      ++words;
    }
    for (const auto& e : a.trace.ops) ++counts[EditOpChar(e.op)];
    Json line = {{"id", record.id}, {"ops", a.trace.OpString()}, {"words", scored}};
    lines += line.dump() + "\n";
    pairs.emplace_back(ref, hyp);
    if (!o.features.empty()) {
      auto ex = BuildExamples(record, a.spans, a.scored);
      examples.insert(examples.end(), ex.begin(), ex.end());
    }
  }
  WriteText(o.out, lines);
  if (!o.features.empty()) {
    WriteFeatureCsv(o.features, examples);
  }

  Json summary = {{"utterances", records.size()},
                  {"words", words},
                  {"mean_c", words ? Json(sum_c / static_cast<double>(words))
                                   : Json(nullptr)},
                  {"ops", OpCounts(counts)},
                  {"alpha", params.alpha},
                  {"beta", params.beta}};
  const ErrorCounts errors = WordErrors(pairs);
  summary["wer"] = errors.reference_length ? Json(errors.Rate()) : Json(nullptr);
  out << summary.dump(2) << "\n";
  if (Verbose()) err << "[teles] score: " << words << " hypothesis words\n";
  return 0;
}

// ------------------------------------------------------------------ train

Dataset LoadDataset(const std::string& manifest, const Alphabet& alphabet,
                    const TelesParams& params, bool binary, int threads) {
  Dataset data = BuildDataset(LoadManifest(manifest), alphabet, params, threads);
  if (binary) BinarizeTargets(data.examples);
  return data;
}

TargetKind TargetsFrom(const std::string& name) {
  if (name == "teles") return TargetKind::kTeles;
  if (name == "binary") return TargetKind::kBinary;
  throw UsageError("--targets must be teles or binary");
}

Json HistoryJson(const std::vector<EpochStats>& history) {
  Json h = Json::array();
  for (const auto& e : history)
    h.push_back({{"epoch", e.epoch},
                 {"train_loss", e.train_loss},
                 {"val_loss", e.val_loss ? Json(*e.val_loss) : Json(nullptr)}});
  return h;
}

int RunTrain(const Options& o, std::ostream& out, std::ostream& err) {
  Require(o.alphabet, "--alphabet", "train");
  Require(o.train_manifest, "--train", "train");
  Require(o.model, "--model", "train");
  const Alphabet alphabet = LoadAlphabet(o.alphabet);
  const TelesParams teles = TelesFrom(o);
  const ShrinkParams shrink = ShrinkFrom(o);
  const TrainConfig config = TrainFrom(o);
  const TargetKind kind = TargetsFrom(o.targets);
  const bool binary = kind == TargetKind::kBinary;

  const Dataset train = LoadDataset(o.train_manifest, alphabet, teles, binary, o.threads);
  Dataset val;
  if (!o.val_manifest.empty()) {
    val = LoadDataset(o.val_manifest, alphabet, teles, binary, o.threads);
    if (!val.examples.empty() && !(val.layout == train.layout))
      throw std::runtime_error("train: validation features do not match training features");
  }
  if (Verbose())
    err << "[teles] train: " << train.examples.size() << " training words, "
        << val.examples.size() << " validation words\n";
  TrainResult result = Train(train.examples, val.examples, train.layout, config, shrink);
  result.model.teles = teles;
  result.model.targets = kind;
  result.model.Save(o.model);
  if (Verbose())
    for (const auto& e : result.history)
      err << "[teles] epoch " << e.epoch << " train_loss " << e.train_loss << "\n";

  if (!o.history.empty()) {
    std::ostringstream csv;
    csv << std::setprecision(17) << "epoch,train_loss,val_loss\n";
    for (const auto& e : result.history) {
      csv << e.epoch << "," << e.train_loss << ",";
      if (e.val_loss) csv << *e.val_loss;
      csv << "\n";
    }
    WriteText(o.history, csv.str());
  }
  Json report = {{"model", o.model},
                 {"train_words", train.examples.size()},
                 {"val_words", val.examples.size()},
                 {"parameters", result.model.num_parameters()},
                 {"targets", o.targets},
                 {"loss_mode", LossModeName(shrink.mode)},
                 {"history", HistoryJson(result.history)}};
  out << report.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------- predict

int RunPredict(const Options& o, std::ostream& out, std::ostream& err) {
  Require(o.alphabet, "--alphabet", "predict");
  Require(o.manifest, "--manifest", "predict");
  Require(o.model, "--model", "predict");
  Require(o.out, "--out", "predict");
  const Alphabet alphabet = LoadAlphabet(o.alphabet);
  const auto records = LoadManifest(o.manifest);
  const WlcModel model = WlcModel::Load(o.model);

  std::vector<std::string> lines(records.size());
  std::size_t words = 0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& record = records[i];
    const UtteranceAnalysis a = AnalyzeUtterance(record, alphabet, model.teles);
    const auto examples = BuildExamples(record, a.spans, a.scored);
    const auto pred = model.Predict(examples);
    Json target = Json::array(), correct = Json::array(), ops = Json::array();
    Json classprob = Json::array(), entropy = Json::array();
    for (std::size_t n = 0; n < examples.size(); ++n) {
      target.push_back(model.targets == TargetKind::kBinary
                           ? (examples[n].correct() ? 1.0 : 0.0)
                           : examples[n].target);
      correct.push_back(examples[n].correct());
      ops.push_back(std::string(1, EditOpChar(examples[n].op)));
      classprob.push_back(ClassProbConfidence(record.probs, a.spans[n]));
      entropy.push_back(EntropyConfidence(record.probs, a.spans[n]));
    }
    words += examples.size();
    Json line = {{"id", record.id},
                 {"words", a.HypothesisWords()},
                 {"ops", ops},
                 {"pred", pred},
                 {"target", target},
                 {"correct", correct},
                 {"classprob", classprob},
                 {"entropy", entropy}};
    lines[i] = line.dump() + "\n";
  }
  std::string text;
  for (const auto& l : lines) text += l;
  WriteText(o.out, text);
  Json report = {{"predictions", o.out},
                 {"utterances", records.size()},
                 {"words", words}};
  out << report.dump(2) << "\n";
  if (Verbose()) err << "[teles] predict: " << words << " words\n";
  return 0;
}

// ------------------------------------------------------------------- grid

int RunGrid(const Options& o, std::ostream& out, std::ostream& err) {
  Require(o.alphabet, "--alphabet", "grid");
  Require(o.train_manifest, "--train", "grid");
  Require(o.val_manifest, "--val", "grid");
  const Alphabet alphabet = LoadAlphabet(o.alphabet);
  const TelesParams teles = TelesFrom(o);
  const Dataset train = LoadDataset(o.train_manifest, alphabet, teles, false, o.threads);
  const Dataset val = LoadDataset(o.val_manifest, alphabet, teles, false, o.threads);
  if (Verbose()) err << "[teles] grid: probing " << o.probe_epochs << " epochs per cell\n";
  const GridResult grid =
      GridSearch(train.examples, val.examples, train.layout,
                 ParseDoubles(o.alpha_grid, "--alpha-grid"),
                 ParseDoubles(o.beta_grid, "--beta-grid"), o.probe_epochs,
                 TrainFrom(o), ShrinkFrom(o));
  Json table = Json::array();
  for (const auto& cell : grid.table)
    table.push_back({{"alpha", cell.alpha},
                     {"beta", cell.beta},
                     {"val_nce", cell.val_nce ? Json(*cell.val_nce) : Json(nullptr)},
                     {"val_loss", cell.val_loss ? Json(*cell.val_loss) : Json(nullptr)}});
  Json report = {{"best_alpha", grid.best_alpha},
                 {"best_beta", grid.best_beta},
                 {"selection", "max validation NCE"},
                 {"table", table}};
  Emit(o.out, report.dump(2) + "\n", out);
  if (!o.out.empty()) out << report.dump(2) << "\n";
  return 0;
}

// ------------------------------------------------------------------- eval

int RunEval(const Options& o, std::ostream& out, std::ostream& err) {
  Require(o.predictions, "--predictions", "eval");
  if (o.score != "pred" && o.score != "classprob" && o.score != "entropy")
    throw UsageError("--score must be pred, classprob or entropy");
  std::ifstream in(o.predictions);
  if (!in) throw std::runtime_error("cannot open " + o.predictions);

  std::vector<double> predicted, target;
  std::vector<bool> correct;
  std::vector<UtteranceScores> utterances;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = o.predictions + ":" + std::to_string(line_no);
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::exception& e) {
      throw std::runtime_error(where + ": " + e.what());
    }
    const std::string id = j.value("id", std::string("?"));
    const auto p = j.at(o.score).get<std::vector<double>>();
    const auto t = j.at("target").get<std::vector<double>>();
    const auto c = j.at("correct").get<std::vector<bool>>();
    if (p.size() != t.size())
      throw std::runtime_error(where + ": utterance '" + id + "' has " +
                               std::to_string(p.size()) + " predictions but " +
                               std::to_string(t.size()) + " targets");
    if (p.size() != c.size())
      throw std::runtime_error(where + ": utterance '" + id + "' has " +
                               std::to_string(p.size()) + " predictions but " +
                               std::to_string(c.size()) + " correctness flags");
    predicted.insert(predicted.end(), p.begin(), p.end());
    target.insert(target.end(), t.begin(), t.end());
    correct.insert(correct.end(), c.begin(), c.end());
    utterances.push_back({p, c});
  }
  if (predicted.empty()) throw std::runtime_error("eval: no predicted words");

  const DivergenceMetrics div = DivergenceSuite(predicted, target);
  const CalibrationMetrics cal = CalibrationSuite(predicted, correct, o.bins);
  const auto nce = Nce(predicted, correct);
  const RmseWcrResult rmse = RmseWcr(utterances);
  std::size_t n_correct = 0;
  for (bool b : correct) n_correct += b;

  Json report = {{"score", o.score},
                 {"utterances", utterances.size()},
                 {"words", predicted.size()},
                 {"correct_fraction",
                  static_cast<double>(n_correct) / static_cast<double>(correct.size())},
                 {"mae", div.mae},
                 {"kld", div.kld},
                 {"jsd", div.jsd},
                 {"nce", nce ? Json(*nce) : Json(nullptr)},
                 {"ece", cal.ece},
                 {"mce", cal.mce},
                 {"bins", o.bins},
                 {"rmse_wcr", rmse.rmse},
                 {"rmse_wcr_excluded", rmse.excluded}};
  if (!o.reliability.empty()) {
    std::ostringstream csv;
    csv << std::setprecision(17) << "lower,upper,confidence,accuracy,count\n";
    for (const auto& b : cal.bins)
      csv << b.lower << "," << b.upper << "," << b.confidence << ","
          << b.accuracy << "," << b.count << "\n";
    WriteText(o.reliability, csv.str());
  }
  Emit(o.out, report.dump(2) + "\n", out);
  if (!o.out.empty()) out << report.dump(2) << "\n";
  if (Verbose()) err << "[teles] eval: " << predicted.size() << " words\n";
  return 0;
}

// ---------------------------------------------------------------- acquire

int RunAcquire(const Options& o, bool by_hours, bool by_fraction,
               std::ostream& out, std::ostream& err) {
  Require(o.alphabet, "--alphabet", "acquire");
  Require(o.manifest, "--manifest", "acquire");
  Require(o.model, "--model", "acquire");
  Require(o.out, "--out", "acquire");
  if (by_hours == by_fraction)
    throw UsageError("acquire: give exactly one of --budget-hours and --budget-fraction");
  if (o.baseline != "path-prob" && o.baseline != "none")
    throw UsageError("--baseline must be path-prob or none");
  const Alphabet alphabet = LoadAlphabet(o.alphabet);
  const auto records = LoadManifest(o.manifest);
  const WlcModel model = WlcModel::Load(o.model);

  double total_s = 0.0;
  for (const auto& r : records) total_s += r.duration_s();
  double budget_s = 0.0;
  if (by_hours) {
    if (!(o.budget_hours >= 0.0)) throw UsageError("--budget-hours must be >= 0");
    budget_s = o.budget_hours * 3600.0;
  } else {
    if (!(o.budget_fraction >= 0.0 && o.budget_fraction <= 1.0))
      throw UsageError("--budget-fraction must be in [0, 1]");
    budget_s = o.budget_fraction * total_s;
  }

  bool have_references = !records.empty();
  for (const auto& r : records) have_references = have_references && !r.reference.empty();

  RoundResult round;
  if (have_references) {
    round = SimulateRound(records, alphabet, model, budget_s, o.delta, o.seed,
                          o.baseline == "path-prob", o.threads);
  } else {
    round.confidences = ScoreUtterances(model, records, alphabet, o.threads);
    round.report = Acquire(round.confidences, budget_s, o.delta);
  }
  const AcquisitionReport& rep = round.report;

  std::map<std::string, const UtteranceRecord*> by_id;
  for (const auto& r : records) by_id.emplace(r.id, &r);
  auto subset = [&](const std::vector<std::string>& ids) {
    std::vector<UtteranceRecord> s;
    for (const auto& id : ids) s.push_back(*by_id.at(id));
    return s;
  };
  const fs::path dir(o.out);
  fs::create_directories(dir);
  WriteManifest(dir / "annotate.jsonl", subset(rep.annotate));
  WriteManifest(dir / "pseudo.jsonl", subset(rep.pseudo));

  std::map<std::string, const UtteranceConfidence*> conf_by_id;
  for (const auto& c : round.confidences) conf_by_id.emplace(c.id, &c);
  Json ranked = Json::array();
  for (const auto& id : rep.ranked) {
    const auto& c = *conf_by_id.at(id);
    ranked.push_back({{"id", c.id}, {"a", c.a}, {"duration_s", c.duration_s},
                      {"words", c.word_count}});
  }
  Json comparison = Json::array();
  for (const auto& q : round.comparison)
    comparison.push_back({{"set", q.name},
                          {"utterances", q.size},
                          {"duration_s", q.duration_s},
                          {"wer", q.wer ? Json(*q.wer) : Json(nullptr)},
                          {"cer", q.cer ? Json(*q.cer) : Json(nullptr)}});
  Json report = {{"budget_s", rep.budget_s},
                 {"budget_used_s", rep.budget_used_s},
                 {"annotate_hours", rep.annotate_hours()},
                 {"pool_s", total_s},
                 {"delta", rep.delta},
                 {"annotate", rep.annotate},
                 {"pseudo", rep.pseudo},
                 {"ranked", ranked},
                 {"comparison", comparison}};
  WriteText(dir / "report.json", report.dump(2) + "\n");
  Json summary = {{"out", dir.string()},
                  {"annotate", rep.annotate.size()},
                  {"pseudo", rep.pseudo.size()},
                  {"budget_used_s", rep.budget_used_s},
                  {"comparison", comparison}};
  out << summary.dump(2) << "\n";
  if (Verbose()) err << "[teles] acquire: annotate " << rep.annotate.size()
                     << ", pseudo " << rep.pseudo.size() << "\n";
  return 0;
}

// ----------------------------------------------------------------- decode

int RunDecode(const Options& o, std::ostream& out, std::ostream&) {
  Require(o.alphabet, "--alphabet", "decode");
  Require(o.manifest, "--manifest", "decode");
  const Alphabet alphabet = LoadAlphabet(o.alphabet);
  std::string text;
  for (const auto& record : LoadManifest(o.manifest)) {
    const auto spans = WordSpans(GreedyDecode(record.probs), alphabet,
                                 record.frame_duration_s);
    Json line = {{"id", record.id}};
    if (o.dump) {
      Json js = Json::array();
      for (const auto& s : spans)
        js.push_back({{"text", s.text},
                      {"first_frame", s.first_frame},
                      {"last_frame", s.last_frame},
                      {"start_s", s.start_s},
                      {"end_s", s.end_s}});
      line["spans"] = std::move(js);
    } else {
      std::string words;
      for (std::size_t i = 0; i < spans.size(); ++i)
        words += (i ? " " : "") + spans[i].text;
      line["text"] = words;
    }
    text += line.dump() + "\n";
  }
  Emit(o.out, text, out);
  return 0;
}

// ----------------------------------------------------------------- wiring

void AddCommon(CLI::App* sub, Options& o) {
  sub->add_option("--config", o.config, "JSON file of flag values (flags win)");
  sub->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
  sub->add_option("--seed", o.seed, "Random seed");
}

void AddTeles(CLI::App* sub, Options& o) {
  sub->add_option("--alpha", o.alpha, "Weight of lexeme similarity for correct words")
      ->check(CLI::Range(0.0, 1.0));
  sub->add_option("--beta", o.beta, "Weight of lexeme similarity for substituted words")
      ->check(CLI::Range(0.0, 1.0));
}

void AddTraining(CLI::App* sub, Options& o) {
  sub->add_option("--gamma", o.gamma, "Shrinkage loss sharpness");
  sub->add_option("--kappa", o.kappa, "Shrinkage loss error threshold");
  sub->add_option("--loss-mode", o.loss_mode, "per-word or batch-literal")
      ->check(CLI::IsMember({"per-word", "batch-literal"}));
  sub->add_option("--lr", o.learning_rate, "Adam learning rate");
  sub->add_option("--epochs", o.epochs, "Training epochs");
  sub->add_option("--batch-size", o.batch_size, "Minibatch size");
  sub->add_option("--hidden", o.hidden, "Hidden layer widths, comma separated");
}

void ApplyConfig(const std::string& path, CLI::App& app, CLI::App* active) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config " + path);
  Json cfg;
  try {
    cfg = Json::parse(in);
  } catch (const Json::exception& e) {
    throw UsageError("config " + path + ": " + e.what());
  }
  if (!cfg.is_object()) throw UsageError("config " + path + ": expected a JSON object");
  for (const auto& [key, value] : cfg.items()) {
    const std::string flag = "--" + key;
    CLI::Option* opt = active->get_option_no_throw(flag);
    if (opt == nullptr) {
      bool known = false;
      for (const CLI::App* sub : app.get_subcommands({}))
        known = known || sub->get_option_no_throw(flag) != nullptr;
      if (!known) throw UsageError("config " + path + ": unknown key '" + key + "'");
      continue;  // belongs to another subcommand
    }
    if (key == "config") throw UsageError("config files cannot nest");
    if (opt->count() > 0) continue;  // the command line wins
    std::string text;
    if (value.is_string()) {
      text = value.get<std::string>();
    } else if (value.is_array()) {
      for (std::size_t i = 0; i < value.size(); ++i)
        text += (i ? "," : "") +
                (value[i].is_string() ? value[i].get<std::string>() : value[i].dump());
    } else {
      text = value.dump();
    }
    try {
      opt->add_result(text);
      opt->run_callback();
    } catch (const CLI::Error& e) {
      throw UsageError("config " + path + ": " + key + ": " + e.what());
    }
  }
}

}  // namespace

int Run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Word-level confidence toolkit for CTC speech recognizers", "teles"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus with oracle references");
  AddCommon(synth, o);
  synth->add_option("--out", o.out, "Output directory");
  synth->add_option("--utterances", o.synth.n_utterances, "Number of utterances");
  synth->add_option("--vocab", o.synth.vocab_size, "Vocabulary size");
  synth->add_option("--alphabet-size", o.synth.alphabet_size, "Letters besides blank and space");
  synth->add_option("--char-sub", o.synth.char_sub_rate, "Per-character substitution rate");
  synth->add_option("--word-del", o.synth.word_del_rate, "Per-word deletion rate");
  synth->add_option("--word-ins", o.synth.word_ins_rate, "Per-word insertion rate");
  synth->add_option("--frames-per-char", o.synth.frames_per_char, "Frames per emitted character");
  synth->add_option("--peakiness", o.synth.peakiness, "Probability mass on the emitted token");
  synth->add_option("--attention-dim", o.synth.attention_dim, "Attention state width");
  synth->add_option("--decoder-dim", o.synth.decoder_dim, "Decoder state width");
  synth->add_option("--frame-duration", o.synth.frame_duration_s, "Seconds per frame");
  synth->add_option("--state-noise", o.synth.state_noise, "Base state noise");
  synth->add_option("--noise-gain", o.synth.noise_gain, "Extra state noise per corrupted fraction");
  synth->add_option("--split", o.split, "train,val,test ratios");

  auto* score = app.add_subcommand("score", "Align hypotheses and compute per-word targets");
  AddCommon(score, o);
  AddTeles(score, o);
  score->add_option("--alphabet", o.alphabet, "Alphabet JSON");
  score->add_option("--manifest", o.manifest, "Utterance manifest (JSONL)");
  score->add_option("--out", o.out, "Per-utterance scores (JSONL)");
  score->add_option("--features", o.features, "Optional per-word feature CSV");

  auto* train = app.add_subcommand("train", "Train a word-level confidence model");
  AddCommon(train, o);
  AddTeles(train, o);
  AddTraining(train, o);
  train->add_option("--alphabet", o.alphabet, "Alphabet JSON");
  train->add_option("--train", o.train_manifest, "Training manifest");
  train->add_option("--val", o.val_manifest, "Validation manifest");
  train->add_option("--model", o.model, "Output model JSON");
  train->add_option("--targets", o.targets, "teles or binary")
      ->check(CLI::IsMember({"teles", "binary"}));
  train->add_option("--history", o.history, "Optional loss history CSV");

  auto* predict = app.add_subcommand("predict", "Score hypothesis words with a trained model");
  AddCommon(predict, o);
  predict->add_option("--alphabet", o.alphabet, "Alphabet JSON");
  predict->add_option("--manifest", o.manifest, "Utterance manifest (JSONL)");
  predict->add_option("--model", o.model, "Model JSON");
  predict->add_option("--out", o.out, "Predictions (JSONL)");

  auto* grid = app.add_subcommand("grid", "Search alpha and beta by validation NCE");
  AddCommon(grid, o);
  AddTeles(grid, o);
  AddTraining(grid, o);
  grid->add_option("--alphabet", o.alphabet, "Alphabet JSON");
  grid->add_option("--train", o.train_manifest, "Training manifest");
  grid->add_option("--val", o.val_manifest, "Validation manifest");
  grid->add_option("--alpha-grid", o.alpha_grid, "Candidate alphas");
  grid->add_option("--beta-grid", o.beta_grid, "Candidate betas");
  grid->add_option("--probe-epochs", o.probe_epochs, "Epochs per grid cell");
  grid->add_option("--out", o.out, "Report JSON (stdout if omitted)");

  auto* eval = app.add_subcommand("eval", "Calibration metrics for predictions");
  AddCommon(eval, o);
  eval->add_option("--predictions", o.predictions, "Predictions (JSONL) from predict");
  eval->add_option("--score", o.score, "pred, classprob or entropy");
  eval->add_option("--bins", o.bins, "Calibration bins")->check(CLI::PositiveNumber);
  eval->add_option("--out", o.out, "Metrics JSON (stdout if omitted)");
  eval->add_option("--reliability", o.reliability, "Reliability diagram CSV");

  auto* acquire = app.add_subcommand("acquire", "Select utterances for annotation and pseudo-labels");
  AddCommon(acquire, o);
  acquire->add_option("--alphabet", o.alphabet, "Alphabet JSON");
  acquire->add_option("--manifest", o.manifest, "Unlabeled pool manifest");
  acquire->add_option("--model", o.model, "Model JSON");
  acquire->add_option("--out", o.out, "Output directory");
  auto* hours = acquire->add_option("--budget-hours", o.budget_hours, "Annotation budget in hours");
  auto* fraction = acquire->add_option("--budget-fraction", o.budget_fraction,
                                       "Annotation budget as a fraction of pool audio");
  acquire->add_option("--delta", o.delta, "Pseudo-label confidence threshold")
      ->check(CLI::Range(0.0, 1.0));
  acquire->add_option("--baseline", o.baseline, "path-prob or none")
      ->check(CLI::IsMember({"path-prob", "none"}));

  auto* decode = app.add_subcommand("decode", "Greedy CTC decoding");
  AddCommon(decode, o);
  decode->add_option("--alphabet", o.alphabet, "Alphabet JSON");
  decode->add_option("--manifest", o.manifest, "Utterance manifest (JSONL)");
  decode->add_flag("--dump", o.dump, "Emit word spans instead of text");
  decode->add_option("--out", o.out, "Output JSONL (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help reports success; every other parse failure is a usage error.
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  CLI::App* active = app.get_subcommands().front();
  try {
    if (!o.config.empty()) ApplyConfig(o.config, app, active);
    const std::string name = active->get_name();
    if (name == "synth") return RunSynth(o, out, err);
    if (name == "score") return RunScore(o, out, err);
    if (name == "train") return RunTrain(o, out, err);
    if (name == "predict") return RunPredict(o, out, err);
    if (name == "grid") return RunGrid(o, out, err);
    if (name == "eval") return RunEval(o, out, err);
    if (name == "acquire")
      return RunAcquire(o, hours->count() > 0, fraction->count() > 0, out, err);
    if (name == "decode") return RunDecode(o, out, err);
    throw UsageError("unknown subcommand " + name);
  } catch (const UsageError& e) {
    err << "teles " << active->get_name() << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "teles " << active->get_name() << ": " << e.what() << "\n";
    return 1;
  }
}

}  // namespace teles::cli
