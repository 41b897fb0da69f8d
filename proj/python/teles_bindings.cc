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


// Python bindings for the core operations.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>
#include <string>
#include <vector>

#include "teles/align.h"
#include "teles/calib.h"
#include "teles/cli.h"
#include "teles/corpus.h"
#include "teles/decode.h"
#include "teles/teles.h"
#include "teles/wlc.h"

namespace py = pybind11;

namespace teles {
namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Matrix ToMatrix(const Array& a) {
  if (a.ndim() != 2) throw std::invalid_argument("expected a 2-D array");
  const auto* p = a.data();
  return Matrix(a.shape(0), a.shape(1), std::vector<double>(p, p + a.size()));
}

std::vector<double> ToVector(const Array& a) {
  if (a.ndim() != 1) throw std::invalid_argument("expected a 1-D array");
  return std::vector<double>(a.data(), a.data() + a.size());
}

EditOp OpFromString(const std::string& s) {
  if (s.size() != 1) throw std::invalid_argument("op must be one of C, S, I, D");
  return EditOpFromChar(s[0]);
}

py::tuple RunCli(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"teles"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code;
  {
    py::gil_scoped_release release;
    code = cli::Run(static_cast<int>(argv.size()), argv.data(), out, err);
  }
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace
}  // namespace teles

PYBIND11_MODULE(_core, m) {
  using namespace teles;
  m.doc() = "Word-level confidence estimation with TeLeS targets";

  py::class_<Alphabet>(m, "Alphabet")
      .def(py::init<std::vector<std::string>, int, int>(), py::arg("tokens"),
           py::arg("blank_index") = 0, py::arg("space_index") = 1)
      .def_property_readonly("tokens", &Alphabet::tokens)
      .def_property_readonly("blank_index", &Alphabet::blank_index)
      .def_property_readonly("space_index", &Alphabet::space_index)
      .def("tokenize", &Alphabet::Tokenize)
      .def("__len__", &Alphabet::size);
  m.def("load_alphabet", &LoadAlphabet, py::arg("path"));

  py::class_<WordSpan>(m, "WordSpan")
      .def_readonly("text", &WordSpan::text)
      .def_readonly("first_frame", &WordSpan::first_frame)
      .def_readonly("last_frame", &WordSpan::last_frame)
      .def_readonly("start_s", &WordSpan::start_s)
      .def_readonly("end_s", &WordSpan::end_s)
      .def("__repr__", [](const WordSpan& s) {
        std::ostringstream os;
        os << "WordSpan('" << s.text << "', " << s.start_s << ", " << s.end_s << ")";
        return os.str();
      });

  m.def(
      "greedy_decode", [](const Array& probs) { return GreedyDecode(ToMatrix(probs)); },
      py::arg("probs"), "Per-frame argmax token ids of a T x |L'| matrix.");
  m.def(
      "decode_words",
      [](const Array& probs, const Alphabet& alphabet, double frame_duration_s) {
        return WordSpans(GreedyDecode(ToMatrix(probs)), alphabet, frame_duration_s);
      },
      py::arg("probs"), py::arg("alphabet"), py::arg("frame_duration_s"));

  m.def(
      "align",
      [](const std::vector<std::string>& ref, const std::vector<std::string>& hyp) {
        return AlignWords(ref, hyp).OpString();
      },
      py::arg("ref"), py::arg("hyp"), "Operation string such as 'CSCI'.");
  m.def("wer", &Wer, py::arg("pairs"), "Corpus WER in percent over (ref, hyp) word lists.");
  m.def("cer", &Cer, py::arg("pairs"), "Corpus CER in percent over (ref, hyp) strings.");

  m.def(
      "temporal_score",
      [](double rs, double re, double hs, double he, const std::string& op) {
        return TemporalScore({rs, re}, {hs, he}, OpFromString(op));
      },
      py::arg("ref_start"), py::arg("ref_end"), py::arg("hyp_start"), py::arg("hyp_end"),
      py::arg("op"));
  m.def(
      "lexeme_score",
      [](const std::vector<std::string>& ref, const std::vector<std::string>& hyp,
         const std::string& op) { return LexemeScore(ref, hyp, OpFromString(op)); },
      py::arg("ref_graphemes"), py::arg("hyp_graphemes"), py::arg("op"));
  m.def(
      "teles_score",
      [](double c_l, double c_t, const std::string& op, double alpha, double beta) {
        return TelesScore(c_l, c_t, OpFromString(op), TelesParams{alpha, beta});
      },
      py::arg("c_l"), py::arg("c_t"), py::arg("op"), py::arg("alpha") = 0.75,
      py::arg("beta") = 0.5);

  m.def(
      "shrinkage_loss",
      [](const Array& pred, const Array& target, double gamma, double kappa,
         const std::string& mode) {
        return ShrinkageLoss(ToVector(pred), ToVector(target),
                             ShrinkParams{gamma, kappa, LossModeFromName(mode)});
      },
      py::arg("predicted"), py::arg("target"), py::arg("gamma") = 5.0, py::arg("kappa") = 0.2,
      py::arg("mode") = "per-word");
  m.def(
      "calibration",
      [](const Array& pred, const std::vector<bool>& correct, std::size_t bins) {
        const auto p = ToVector(pred);
        const CalibrationMetrics c = CalibrationSuite(p, correct, bins);
        py::dict d;
        d["ece"] = c.ece;
        d["mce"] = c.mce;
        d["nce"] = Nce(p, correct);
        return d;
      },
      py::arg("predicted"), py::arg("correct"), py::arg("bins") = 10);
  m.def(
      "divergences",
      [](const Array& pred, const Array& target) {
        const DivergenceMetrics d = DivergenceSuite(ToVector(pred), ToVector(target));
        py::dict out;
        out["mae"] = d.mae;
        out["kld"] = d.kld;
        out["jsd"] = d.jsd;
        return out;
      },
      py::arg("predicted"), py::arg("target"));

  py::class_<WlcModel>(m, "WlcModel")
      .def_static("load", &WlcModel::Load, py::arg("path"))
      .def_static(
          "create",
          [](std::size_t input_dim, const std::vector<std::size_t>& hidden, std::uint64_t seed) {
            return WlcModel::Create(input_dim, hidden, seed);
          },
          py::arg("input_dim"), py::arg("hidden") = std::vector<std::size_t>{512, 256, 128},
          py::arg("seed") = 7)
      .def("save", &WlcModel::Save, py::arg("path"))
      .def_property_readonly("widths", &WlcModel::widths)
      .def_property_readonly("num_parameters", &WlcModel::num_parameters)
      .def(
          "predict",
          [](const WlcModel& model, const Array& features) {
            if (features.ndim() == 1) return py::cast(model.Predict(ToVector(features)));
            const Matrix x = ToMatrix(features);
            std::vector<double> out(x.rows());
            for (std::size_t r = 0; r < x.rows(); ++r) out[r] = model.Predict(x.Row(r));
            return py::cast(out);
          },
          py::arg("features"), "Confidence for raw feature rows.");

  m.def("run_cli", &RunCli, py::arg("args"),
        "Runs a teles subcommand in-process; returns (exit code, stdout, stderr).");
}
