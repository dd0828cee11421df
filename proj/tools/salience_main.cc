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

// Command-line front end for the salience pipeline.
//
// Exit status: 0 success, 1 validation or usage error, 2 I/O error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "salience/corpus.h"
#include "salience/evaluation.h"
#include "salience/features.h"
#include "salience/model.h"
#include "salience/pipeline.h"
#include "salience/semantics.h"
#include "salience/service.h"
#include "salience/synthetic.h"
#include "salience/util.h"

namespace {

using namespace salience;

struct ResourceFlags {
  std::string kb;
  std::vector<std::string> embeddings;
  std::string idf;
  std::string cooc;
  bool no_w2v = false;

  void Register(CLI::App* cmd, bool require_idf) {
    cmd->add_option("--kb", kb, "knowledge base (JSONL)")->required();
    cmd->add_option("--emb", embeddings, "embedding table (JSONL), repeatable");
    auto* idf_opt = cmd->add_option("--idf", idf, "idf table (JSON)");
    if (require_idf) idf_opt->required();
    cmd->add_option("--cooc", cooc, "co-occurrence model (JSON)");
    cmd->add_flag("--no-w2v", no_w2v, "leave out the embedding features");
  }

  // Falls back to the corpus' own document frequencies without --idf.
  PipelineResources Load(const Corpus* corpus = nullptr) const {
    PipelineResources res;
    res.kb = LoadKnowledgeBase(kb);
    for (const auto& path : embeddings) {
      res.embeddings.Add(LoadEmbeddings(path, PeekEmbeddingKind(path)));
    }
    if (!idf.empty()) {
      res.idf = ParseIdf(ReadFile(idf));
    } else if (corpus != nullptr) {
      res.idf = ComputeIdf(*corpus);
    }
    if (!cooc.empty()) res.cooccurrence = CooccurrenceModel::Parse(ReadFile(cooc));
    res.config.w2v_enabled = !no_w2v;
    return res;
  }
};

GbdtGrid GridByName(const std::string& name) {
  if (name == "full") return GbdtGrid::Full();
  if (name == "small") return GbdtGrid::Small();
  throw ValidationError("unknown grid: " + name);
}

GbdtHyperparams PresetByName(const std::string& name) {
  if (name == "nyt") return NytHyperparams();
  if (name == "wikinews") return WikinewsHyperparams();
  if (name == "default") return GbdtHyperparams{};
  throw ValidationError("unknown hyperparameter preset: " + name);
}

void Info(const std::string& message) { std::cerr << message << "\n"; }

std::string PrfLine(const char* label, const Prf& prf) {
  return std::string(label) + " p=" + FormatDouble(prf.precision) +
         " r=" + FormatDouble(prf.recall) + " f1=" + FormatDouble(prf.f1);
}

void PrintReport(const EvaluationReport& report) {
  std::cout << PrfLine("micro", report.micro) << "\n"
            << PrfLine("macro", report.macro) << "\n";
}

// Gold is either a corpus with gold labels or a predictions file.
struct Gold {
  std::optional<Corpus> corpus;
  EntityKeySet keys;
  std::vector<std::string> docs;
};

Gold LoadGold(const std::string& path,
              const std::vector<Prediction>& predictions) {
  Gold gold;
  const std::string text = ReadFile(path);
  bool is_predictions = false;
  try {
    const auto j = nlohmann::json::parse(text);
    is_predictions = j.is_object() && j.contains("predictions");
  } catch (const nlohmann::json::exception&) {
  }
  if (is_predictions) {
    const auto gold_predictions = ParsePredictions(text);
    gold.keys = PositiveSet(gold_predictions);
    std::set<std::string> docs;
    for (const auto& p : gold_predictions) docs.insert(p.doc_id);
    for (const auto& p : predictions) docs.insert(p.doc_id);
    gold.docs.assign(docs.begin(), docs.end());
  } else {
    gold.corpus = ParseCorpus(text);
    gold.keys = GoldSet(*gold.corpus);
    gold.docs = DocIds(*gold.corpus);
  }
  return gold;
}

std::vector<double> ParseFractions(const std::string& text) {
  std::vector<double> out;
  size_t start = 0;
  while (start <= text.size()) {
    const size_t comma = text.find(',', start);
    const std::string part =
        text.substr(start, comma == std::string::npos ? std::string::npos
                                                      : comma - start);
    try {
      size_t used = 0;
      out.push_back(std::stod(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw ValidationError("bad fraction list: " + text);
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

Corpus SelectByDocs(const Corpus& corpus, const std::set<std::string>& ids) {
  Corpus out;
  for (const auto& doc : corpus) {
    if (ids.count(doc.doc_id)) out.push_back(doc);
  }
  return out;
}

int Run(int argc, char** argv) {
  CLI::App app{"Entity salience pipeline"};
  app.require_subcommand(1);
  app.fallthrough(false);

  // gen-synthetic
  SyntheticOptions synth;
  std::string synth_out;
  auto* gen = app.add_subcommand("gen-synthetic",
                                 "write a synthetic corpus, KB and embeddings");
  gen->add_option("--docs", synth.docs, "number of documents")
      ->check(CLI::Range(1, 1000000));
  gen->add_option("--seed", synth.seed, "random seed");
  gen->add_option("--out", synth_out, "output directory")->required();

  // idf
  std::string idf_corpus, idf_out, cooc_out;
  auto* idf = app.add_subcommand("idf", "document frequencies of a corpus");
  idf->add_option("--corpus", idf_corpus)->required();
  idf->add_option("--out", idf_out)->required();
  idf->add_option("--cooc-out", cooc_out, "also write a co-occurrence model");

  // featurize
  ResourceFlags feat_res;
  std::string feat_corpus, feat_out;
  auto* featurize = app.add_subcommand("featurize", "write a feature matrix");
  featurize->add_option("--corpus", feat_corpus)->required();
  feat_res.Register(featurize, false);
  featurize->add_option("--out", feat_out, "matrix CSV")->required();

  // train
  std::string train_matrix, train_valid, train_grid = "none", train_out,
      train_metric = "micro-f1", train_preset = "nyt", train_importance;
  uint64_t train_seed = 1;
  int train_rounds = -1;
  auto* train = app.add_subcommand("train", "train a boosted-tree model");
  train->add_option("--matrix", train_matrix)->required();
  train->add_option("--valid", train_valid, "validation matrix CSV");
  train->add_option("--grid", train_grid, "none, small or full")
      ->check(CLI::IsMember({"none", "small", "full"}));
  train->add_option("--preset", train_preset,
                    "hyperparameters without a grid: nyt, wikinews, default")
      ->check(CLI::IsMember({"nyt", "wikinews", "default"}));
  train->add_option("--rounds", train_rounds, "boosting rounds");
  train->add_option("--metric", train_metric, "grid-search metric")
      ->check(CLI::IsMember({"micro-f1", "macro-f1"}));
  train->add_option("--seed", train_seed);
  train->add_option("--importance", train_importance,
                    "write feature importances (JSON)");
  train->add_option("--out", train_out, "model JSON")->required();

  // predict
  ResourceFlags pred_res;
  std::string pred_model, pred_matrix, pred_corpus, pred_out;
  auto* predict = app.add_subcommand("predict", "score annotated entities");
  predict->add_option("--model", pred_model)->required();
  predict->add_option("--matrix", pred_matrix, "feature matrix CSV");
  predict->add_option("--corpus", pred_corpus, "corpus to featurize");
  predict->add_option("--kb", pred_res.kb);
  predict->add_option("--emb", pred_res.embeddings);
  predict->add_option("--idf", pred_res.idf);
  predict->add_option("--cooc", pred_res.cooc);
  predict->add_flag("--no-w2v", pred_res.no_w2v);
  predict->add_option("--out", pred_out, "predictions JSON")->required();

  // evaluate
  std::string eval_pred, eval_gold, eval_report, eval_curve, eval_curve_csv,
      eval_matrix, eval_train_matrix, eval_model, eval_fractions =
                                                      "0.05,0.25,0.5,0.75,1";
  uint64_t eval_seed = 1;
  auto* evaluate = app.add_subcommand("evaluate", "score predictions");
  evaluate->add_option("--pred", eval_pred)->required();
  evaluate->add_option("--gold", eval_gold, "corpus or predictions JSON")
      ->required();
  evaluate->add_option("--report", eval_report, "report JSON");
  evaluate->add_option("--curve", eval_curve)
      ->check(CLI::IsMember({"position", "train-size", "incremental"}));
  evaluate->add_option("--curve-csv", eval_curve_csv);
  evaluate->add_option("--matrix", eval_matrix,
                       "feature matrix of the gold corpus (curves)");
  evaluate->add_option("--train-matrix", eval_train_matrix,
                       "training matrix (incremental curve)");
  evaluate->add_option("--model", eval_model, "trained model (curves)");
  evaluate->add_option("--fractions", eval_fractions);
  evaluate->add_option("--seed", eval_seed);

  // baseline
  std::string base_name, base_corpus, base_kb, base_valid, base_out,
      base_report, base_metric = "micro-f1";
  double base_threshold = 0.0;
  bool base_tune = false;
  auto* baseline = app.add_subcommand("baseline", "run a baseline system");
  baseline->add_option("--name", base_name)
      ->required()
      ->check(CLI::IsMember(
          {"positional", "positional-rho", "textrank", "rel-pagerank"}));
  baseline->add_option("--corpus", base_corpus)->required();
  baseline->add_option("--kb", base_kb)->required();
  auto* thr = baseline->add_option("--threshold", base_threshold);
  auto* tune = baseline->add_flag("--tune", base_tune,
                                  "tune the threshold on --valid (or --corpus)");
  thr->excludes(tune);
  baseline->add_option("--valid", base_valid, "validation corpus");
  baseline->add_option("--metric", base_metric)
      ->check(CLI::IsMember({"micro-f1", "macro-f1"}));
  baseline->add_option("--out", base_out, "predictions JSON");
  baseline->add_option("--report", base_report, "report JSON");

  // cv
  ResourceFlags cv_res;
  std::string cv_corpus, cv_matrix, cv_grid = "small", cv_metric = "macro-f1",
                                    cv_report;
  int cv_k = 5;
  uint64_t cv_seed = 1;
  auto* cv = app.add_subcommand("cv", "k-fold cross-validation");
  cv->add_option("--corpus", cv_corpus)->required();
  cv->add_option("--matrix", cv_matrix, "precomputed matrix of the corpus");
  cv->add_option("--kb", cv_res.kb);
  cv->add_option("--emb", cv_res.embeddings);
  cv->add_option("--idf", cv_res.idf);
  cv->add_option("--cooc", cv_res.cooc);
  cv->add_flag("--no-w2v", cv_res.no_w2v);
  cv->add_option("--k", cv_k)->check(CLI::Range(2, 1000000));
  cv->add_option("--seed", cv_seed);
  cv->add_option("--grid", cv_grid)->check(CLI::IsMember({"small", "full"}));
  cv->add_option("--metric", cv_metric)
      ->check(CLI::IsMember({"micro-f1", "macro-f1"}));
  cv->add_option("--report", cv_report);

  // cross-corpus
  std::string cc_model, cc_matrix, cc_corpus, cc_mode = "clf", cc_grid = "small",
                                              cc_report;
  uint64_t cc_seed = 1;
  auto* cross = app.add_subcommand("cross-corpus",
                                   "apply or re-tune a model on another corpus");
  cross->add_option("--model", cc_model)->required();
  cross->add_option("--matrix", cc_matrix, "target matrix")->required();
  cross->add_option("--corpus", cc_corpus, "target corpus")->required();
  cross->add_option("--mode", cc_mode)->check(CLI::IsMember({"clf", "reg"}));
  cross->add_option("--grid", cc_grid)->check(CLI::IsMember({"small", "full"}));
  cross->add_option("--seed", cc_seed);
  cross->add_option("--report", cc_report);

  // perturb
  std::string pert_matrix, pert_model, pert_gold, pert_group, pert_report;
  int pert_value = 0;
  auto* perturb = app.add_subcommand(
      "perturb", "overwrite a feature group and re-evaluate");
  perturb->add_option("--matrix", pert_matrix)->required();
  perturb->add_option("--model", pert_model)->required();
  perturb->add_option("--gold", pert_gold, "gold corpus")->required();
  perturb->add_option("--group", pert_group)->required();
  perturb->add_option("--value", pert_value)->check(CLI::IsMember({0, 1}));
  perturb->add_option("--report", pert_report);

  // serve
  ResourceFlags serve_res;
  std::string serve_model, serve_token, serve_host = "0.0.0.0";
  int serve_port = 8080;
  size_t serve_limit = 1 << 20;
  auto* serve = app.add_subcommand("serve", "run the HTTP service");
  serve->add_option("--model", serve_model)->required();
  serve_res.Register(serve, true);
  serve->add_option("--token", serve_token)->required();
  serve->add_option("--host", serve_host);
  serve->add_option("--port", serve_port)->check(CLI::Range(1, 65535));
  serve->add_option("--max-content-bytes", serve_limit);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (gen->parsed()) {
    const SyntheticData data = GenerateSynthetic(synth);
    WriteSynthetic(data, synth_out);
    Info("wrote " + std::to_string(data.corpus.size()) + " documents to " +
         synth_out);
    return 0;
  }

  if (idf->parsed()) {
    const Corpus corpus = LoadCorpus(idf_corpus);
    WriteFile(idf_out, SerializeIdf(ComputeIdf(corpus)));
    if (!cooc_out.empty()) {
      WriteFile(cooc_out, CooccurrenceModel::Fit(corpus).Serialize());
    }
    return 0;
  }

  if (featurize->parsed()) {
    const Corpus corpus = LoadCorpus(feat_corpus);
    const PipelineResources res = feat_res.Load(&corpus);
    for (const auto& doc : corpus) ValidateDocument(doc, &res.kb);
    const FeatureMatrix matrix = Featurize(corpus, res);
    SaveMatrixCsv(matrix, feat_out);
    Info("wrote " + std::to_string(matrix.keys.size()) + " rows x " +
         std::to_string(matrix.schema.size()) + " features");
    return 0;
  }

  if (train->parsed()) {
    const FeatureMatrix matrix = LoadMatrixCsv(train_matrix);
    std::optional<FeatureMatrix> valid;
    if (!train_valid.empty()) valid = LoadMatrixCsv(train_valid);
    GbdtModel model;
    if (train_grid == "none") {
      GbdtHyperparams hp = PresetByName(train_preset);
      if (train_rounds >= 0) hp.n_rounds = train_rounds;
      GbdtTrainOptions options;
      options.feature_names = matrix.schema.names();
      std::vector<int> valid_y;
      if (valid) {
        if (valid->schema.names() != matrix.schema.names()) {
          throw ValidationError("training and validation schemas differ");
        }
        valid_y = valid->labels();
        options.valid_x = &valid->x;
        options.valid_y = valid_y;
      }
      model = TrainGbdt(matrix.x, matrix.labels(), hp, train_seed, options);
    } else {
      GbdtGrid grid = GridByName(train_grid);
      if (train_rounds >= 0) grid.base.n_rounds = train_rounds;
      const Metric metric = ParseMetric(train_metric);
      GbdtSelection selection =
          valid ? SelectGbdt(matrix, *valid, grid, metric, train_seed)
                : SelectGbdt(matrix, grid, metric, train_seed);
      model = std::move(selection.model);
      Info("grid search: " + std::to_string(selection.search.scores.size()) +
           " configurations, best " + std::string(MetricName(metric)) + " " +
           FormatDouble(selection.search.best_score));
    }
    SaveModel(model, train_out);
    if (!train_importance.empty()) {
      nlohmann::json j = FeatureImportance(model);
      WriteFile(train_importance, j.dump(1) + "\n");
    }
    Info("trained " + std::to_string(model.trees.size()) + " trees");
    return 0;
  }

  if (predict->parsed()) {
    const GbdtModel model = LoadModel(pred_model);
    FeatureMatrix matrix;
    if (!pred_matrix.empty()) {
      matrix = LoadMatrixCsv(pred_matrix);
    } else if (!pred_corpus.empty() && !pred_res.kb.empty()) {
      const Corpus corpus = LoadCorpus(pred_corpus);
      const PipelineResources res = pred_res.Load(&corpus);
      matrix = Featurize(corpus, res);
    } else {
      throw ValidationError("predict needs --matrix, or --corpus with --kb");
    }
    SavePredictions(Predict(model, matrix), pred_out);
    return 0;
  }

  if (evaluate->parsed()) {
    const auto predictions = LoadPredictions(eval_pred);
    const Gold gold = LoadGold(eval_gold, predictions);
    const EvaluationReport report =
        Evaluate(PositiveSet(predictions), gold.keys, gold.docs);
    std::vector<Curve> curves;
    if (!eval_curve.empty()) {
      if (!gold.corpus) {
        throw ValidationError("curves need a gold corpus");
      }
      Curve curve;
      curve.name = eval_curve;
      if (eval_curve == "position") {
        curve.x_label = "position";
        curve.y_label = "micro_f1";
        curve.points = PositionBucketedF1(PositiveSet(predictions), *gold.corpus);
      } else if (eval_curve == "train-size") {
        if (eval_matrix.empty()) {
          throw ValidationError("--curve train-size needs --matrix");
        }
        GbdtHyperparams hp = NytHyperparams();
        if (!eval_model.empty()) hp = LoadModel(eval_model).hyperparams;
        curve.x_label = "fraction";
        curve.y_label = "micro_f1";
        for (const auto& [f, r] :
             TrainingSizeCurve(LoadMatrixCsv(eval_matrix), *gold.corpus,
                               ParseFractions(eval_fractions), hp, eval_seed)) {
          curve.points.emplace_back(f, r.micro.f1);
        }
      } else {
        if (eval_matrix.empty() || eval_train_matrix.empty() ||
            eval_model.empty()) {
          throw ValidationError(
              "--curve incremental needs --model, --train-matrix and --matrix");
        }
        curve.x_label = "features";
        curve.y_label = "micro_f1";
        for (const auto& [k, f1] : IncrementalFeatureCurve(
                 LoadModel(eval_model), LoadMatrixCsv(eval_train_matrix),
                 LoadMatrixCsv(eval_matrix), *gold.corpus, eval_seed)) {
          curve.points.emplace_back(k, f1);
        }
      }
      if (!eval_curve_csv.empty()) WriteFile(eval_curve_csv, CurveToCsv(curve));
      curves.push_back(std::move(curve));
    }
    if (!eval_report.empty()) WriteFile(eval_report, ReportToJson(report, curves));
    PrintReport(report);
    return 0;
  }

  if (baseline->parsed()) {
    const Baseline which = ParseBaseline(base_name);
    const Corpus corpus = LoadCorpus(base_corpus);
    const KnowledgeBase kb = LoadKnowledgeBase(base_kb);
    double threshold = base_threshold;
    if (base_tune) {
      const Corpus valid = base_valid.empty() ? corpus : LoadCorpus(base_valid);
      threshold =
          TuneBaselineThreshold(valid, which, kb, ParseMetric(base_metric));
      Info("tuned threshold " + FormatDouble(threshold));
    }
    const EntityKeySet predicted = RunBaseline(corpus, which, kb, threshold);
    if (!base_out.empty()) {
      std::vector<Prediction> out;
      for (const auto& doc : corpus) {
        for (EntityId e : doc.entities()) {
          const bool pos = predicted.count({doc.doc_id, e}) > 0;
          out.push_back({doc.doc_id, e, pos ? 1.0 : 0.0, pos ? 1 : 0});
        }
      }
      SavePredictions(out, base_out);
    }
    const EvaluationReport report = Evaluate(predicted, corpus);
    if (!base_report.empty()) WriteFile(base_report, ReportToJson(report));
    PrintReport(report);
    return 0;
  }

  if (cv->parsed()) {
    const Corpus corpus = LoadCorpus(cv_corpus);
    FeatureMatrix matrix;
    if (!cv_matrix.empty()) {
      matrix = LoadMatrixCsv(cv_matrix);
    } else if (!cv_res.kb.empty()) {
      matrix = Featurize(corpus, cv_res.Load(&corpus));
    } else {
      throw ValidationError("cv needs --matrix or --kb");
    }
    const auto result =
        CrossValidate(matrix, corpus, cv_k, cv_seed,
                      GbdtTrainer(GridByName(cv_grid), ParseMetric(cv_metric)));
    nlohmann::json j;
    j["k"] = cv_k;
    j["seed"] = cv_seed;
    j["macro"] = {{"precision", result.macro.precision},
                  {"recall", result.macro.recall},
                  {"f1", result.macro.f1}};
    j["micro"] = {{"precision", result.micro.precision},
                  {"recall", result.micro.recall},
                  {"f1", result.micro.f1}};
    j["folds"] = nlohmann::json::array();
    for (const auto& fold : result.folds) {
      j["folds"].push_back(nlohmann::json::parse(ReportToJson(fold)));
    }
    if (!cv_report.empty()) WriteFile(cv_report, j.dump(2) + "\n");
    std::cout << PrfLine("macro", result.macro) << "\n"
              << PrfLine("micro", result.micro) << "\n";
    return 0;
  }

  if (cross->parsed()) {
    const EvaluationReport report = CrossCorpus(
        LoadModel(cc_model), LoadMatrixCsv(cc_matrix), LoadCorpus(cc_corpus),
        ParseTransferMode(cc_mode), GridByName(cc_grid), cc_seed);
    if (!cc_report.empty()) WriteFile(cc_report, ReportToJson(report));
    PrintReport(report);
    return 0;
  }

  if (perturb->parsed()) {
    const FeatureMatrix matrix = LoadMatrixCsv(pert_matrix);
    const Corpus gold = LoadCorpus(pert_gold);
    std::set<std::string> ids;
    for (const auto& key : matrix.keys) ids.insert(key.doc_id);
    const EvaluationReport report =
        EvaluatePerturbed(matrix, ParseFeatureGroup(pert_group), pert_value,
                          LoadModel(pert_model), SelectByDocs(gold, ids));
    if (!pert_report.empty()) WriteFile(pert_report, ReportToJson(report));
    PrintReport(report);
    std::cout << "tp=" << report.counts.tp << " fp=" << report.counts.fp
              << " fn=" << report.counts.fn << "\n";
    return 0;
  }

  if (serve->parsed()) {
    ServiceConfig config;
    config.token = serve_token;
    config.max_content_bytes = serve_limit;
    const SalienceService service(serve_res.Load(), LoadModel(serve_model),
                                  config);
    Info("listening on " + serve_host + ":" + std::to_string(serve_port));
    service.Serve(serve_host, serve_port);
    return 0;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return Run(argc, argv);
  } catch (const salience::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const salience::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
