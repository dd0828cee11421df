// Copyright 2026 The Salience Authors.
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


#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "salience/corpus.h"
#include "salience/enricher.h"
#include "salience/evaluation.h"
#include "salience/features.h"
#include "salience/graph.h"
#include "salience/model.h"
#include "salience/pipeline.h"
#include "salience/semantics.h"
#include "salience/service.h"
#include "salience/summarizer.h"
#include "salience/synthetic.h"

namespace py = pybind11;

namespace salience {
namespace {

using TokenTuple = std::tuple<std::string, int64_t, int64_t, int>;

std::vector<TokenTuple> PyTokenize(const std::string& text) {
  std::vector<TokenTuple> out;
  for (const Token& t : Tokenize(text).tokens) {
    out.emplace_back(t.surface, t.char_start, t.char_end, t.sentence_index);
  }
  return out;
}

std::vector<double> PyCentrality(const std::vector<std::vector<double>>& weights,
                                 const std::string& name) {
  WeightMatrix m(weights.size());
  for (size_t i = 0; i < weights.size(); ++i) {
    if (weights[i].size() != weights.size()) {
      throw ValidationError("weight matrix must be square");
    }
    for (size_t j = 0; j < weights.size(); ++j) m(i, j) = weights[i][j];
  }
  return ComputeCentrality(m, ParseCentrality(name));
}

std::map<std::string, double> PyStats6(const std::vector<double>& values) {
  const auto stats = ComputeStats6(values).values();
  std::map<std::string, double> out;
  for (size_t i = 0; i < stats.size(); ++i) out[std::string(kStats6Names[i])] = stats[i];
  return out;
}

py::dict PyMetrics(const std::vector<EntityKey>& predicted,
                   const std::vector<EntityKey>& gold,
                   const std::vector<std::string>& docs) {
  const EvaluationReport r =
      Evaluate(EntityKeySet(predicted.begin(), predicted.end()),
               EntityKeySet(gold.begin(), gold.end()), docs);
  auto prf = [](const Prf& p) {
    py::dict d;
    d["precision"] = p.precision;
    d["recall"] = p.recall;
    d["f1"] = p.f1;
    return d;
  };
  py::dict out;
  out["micro"] = prf(r.micro);
  out["macro"] = prf(r.macro);
  return out;
}

PipelineResources LoadResources(const std::string& kb_path,
                                const std::vector<std::string>& embeddings,
                                const std::optional<std::string>& idf_path,
                                bool w2v) {
  PipelineResources res;
  res.kb = LoadKnowledgeBase(kb_path);
  for (const auto& path : embeddings) {
    res.embeddings.Add(LoadEmbeddings(path, PeekEmbeddingKind(path)));
  }
  if (idf_path) res.idf = ParseIdf(ReadFile(*idf_path));
  res.config.w2v_enabled = w2v;
  return res;
}

}  // namespace
}  // namespace salience

PYBIND11_MODULE(_salience, m) {
  using namespace salience;
  m.doc() = "Entity salience pipeline bindings.";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  m.def("tokenize", &PyTokenize, py::arg("text"),
        "Tokens as (surface, char_start, char_end, sentence_index).");
  m.def("textrank",
        py::overload_cast<const std::vector<std::vector<std::string>>&>(&TextRank),
        py::arg("sentences"), "TextRank score per sentence of token lists.");
  m.def("centrality", &PyCentrality, py::arg("weights"), py::arg("name"),
        "Centrality of each node of a square weight matrix.");
  m.def("stats6", &PyStats6, py::arg("values"));
  m.def("hash_categorical", py::overload_cast<std::string_view>(&HashCategorical),
        py::arg("value"));
  m.def("metrics", &PyMetrics, py::arg("predicted"), py::arg("gold"), py::arg("docs"),
        "Micro and macro precision, recall and F1 of (doc_id, entity) pairs.");

  py::class_<KnowledgeBase>(m, "KnowledgeBase")
      .def_static("load", &LoadKnowledgeBase, py::arg("path"))
      .def_static("parse", &ParseKnowledgeBase, py::arg("text"))
      .def("__len__", &KnowledgeBase::size)
      .def("__contains__", &KnowledgeBase::contains);

  m.def(
      "enrich",
      [](const std::string& title, const std::string& content, const KnowledgeBase& kb,
         const std::string& doc_id) {
        return SerializeDocument(Enrich(title, content, kb, doc_id));
      },
      py::arg("title"), py::arg("content"), py::arg("kb"), py::arg("doc_id") = "",
      "Enriched document as a JSON line.");

  m.def(
      "generate_synthetic",
      [](int docs, uint64_t seed, const std::string& out_dir) {
        SyntheticOptions options;
        options.docs = docs;
        options.seed = seed;
        WriteSynthetic(GenerateSynthetic(options), out_dir);
      },
      py::arg("docs"), py::arg("seed"), py::arg("out_dir"));

  m.def(
      "featurize",
      [](const std::string& corpus_path, const std::string& kb_path,
         const std::vector<std::string>& embeddings, const std::string& out_csv,
         bool w2v) {
        const Corpus corpus = LoadCorpus(corpus_path);
        PipelineResources res = LoadResources(kb_path, embeddings, std::nullopt, w2v);
        res.idf = ComputeIdf(corpus);
        const FeatureMatrix matrix = Featurize(corpus, res);
        SaveMatrixCsv(matrix, out_csv);
        return matrix.x.rows;
      },
      py::arg("corpus"), py::arg("kb"), py::arg("embeddings"), py::arg("out"),
      py::arg("w2v") = true, "Writes the feature matrix CSV; returns the row count.");

  m.def(
      "train",
      [](const std::string& matrix_csv, const std::string& out_path, int rounds,
         uint64_t seed) {
        const FeatureMatrix matrix = LoadMatrixCsv(matrix_csv);
        GbdtHyperparams hp = NytHyperparams();
        hp.n_rounds = rounds;
        GbdtTrainOptions options;
        options.feature_names = matrix.schema.names();
        SaveModel(TrainGbdt(matrix.x, matrix.labels(), hp, seed, options), out_path);
      },
      py::arg("matrix"), py::arg("out"), py::arg("rounds") = 200, py::arg("seed") = 1,
      "Trains with the default preset and writes the model JSON.");

  py::class_<GbdtModel>(m, "Model")
      .def_static("load", &LoadModel, py::arg("path"))
      .def_readonly("feature_names", &GbdtModel::feature_names)
      .def("predict_proba", &GbdtModel::PredictProba, py::arg("x"))
      .def("importance", [](const GbdtModel& model) { return FeatureImportance(model); });

  py::class_<SalienceService>(m, "Service")
      .def(py::init([](const std::string& model_path, const std::string& kb_path,
                       const std::string& token, const std::vector<std::string>& embeddings,
                       const std::optional<std::string>& idf_path, bool w2v) {
             return SalienceService(LoadResources(kb_path, embeddings, idf_path, w2v),
                                    LoadModel(model_path), ServiceConfig{token});
           }),
           py::arg("model"), py::arg("kb"), py::arg("token"),
           py::arg("embeddings") = std::vector<std::string>{},
           py::arg("idf") = std::nullopt, py::arg("w2v") = true)
      .def(
          "handle_salience",
          [](const SalienceService& s, const std::string& body,
             const std::optional<std::string>& token) {
            const ServiceResponse r = s.HandleSalience(body, token ? &*token : nullptr);
            return std::make_pair(r.http_status, r.body);
          },
          py::arg("body"), py::arg("token") = std::nullopt,
          "Returns (http_status, json_body).");
}
