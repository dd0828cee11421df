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

#include "salience/evaluation.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "json.hpp"
#include "salience/semantics.h"
#include "salience/summarizer.h"
#include "salience/util.h"

namespace salience {

using json = nlohmann::json;

namespace {

double Ratio(int64_t num, int64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

double HarmonicF1(double p, double r) {
  return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

EntityKeySet RestrictToDocs(const EntityKeySet& keys,
                            const std::set<std::string>& docs) {
  EntityKeySet out;
  for (const auto& key : keys) {
    if (docs.count(key.first)) out.insert(key);
  }
  return out;
}

}  // namespace

Prf PrfFromCounts(const Counts& c) {
  Prf out;
  out.precision = Ratio(c.tp, c.tp + c.fp);
  out.recall = Ratio(c.tp, c.tp + c.fn);
  out.f1 = HarmonicF1(out.precision, out.recall);
  return out;
}

Counts CountMatches(const EntityKeySet& predicted, const EntityKeySet& gold) {
  Counts c;
  for (const auto& key : predicted) {
    if (gold.count(key)) {
      ++c.tp;
    } else {
      ++c.fp;
    }
  }
  c.fn = static_cast<int64_t>(gold.size()) - c.tp;
  return c;
}

Prf MicroMetrics(const EntityKeySet& predicted, const EntityKeySet& gold) {
  return PrfFromCounts(CountMatches(predicted, gold));
}

Prf DocumentPrf(const Counts& c) {
  const int64_t n_pred = c.tp + c.fp;
  const int64_t n_gold = c.tp + c.fn;
  if (n_pred == 0 && n_gold == 0) return {1.0, 1.0, 1.0};
  return PrfFromCounts(c);
}

Prf MacroMetrics(const EntityKeySet& predicted, const EntityKeySet& gold,
                 const std::vector<std::string>& docs,
                 std::vector<DocMetrics>* per_doc) {
  std::map<std::string, Counts> counts;
  for (const auto& doc : docs) counts[doc];
  for (const auto& key : predicted) {
    auto it = counts.find(key.first);
    if (it == counts.end()) continue;
    if (gold.count(key)) {
      ++it->second.tp;
    } else {
      ++it->second.fp;
    }
  }
  for (const auto& key : gold) {
    auto it = counts.find(key.first);
    if (it != counts.end() && !predicted.count(key)) ++it->second.fn;
  }
  Prf sum;
  for (const auto& [doc, c] : counts) {
    const Prf prf = DocumentPrf(c);
    sum.precision += prf.precision;
    sum.recall += prf.recall;
    sum.f1 += prf.f1;
    if (per_doc != nullptr) per_doc->push_back({doc, prf});
  }
  if (counts.empty()) return {};
  const double n = static_cast<double>(counts.size());
  return {sum.precision / n, sum.recall / n, sum.f1 / n};
}

EvaluationReport Evaluate(const EntityKeySet& predicted,
                          const EntityKeySet& gold,
                          const std::vector<std::string>& docs) {
  const std::set<std::string> doc_set(docs.begin(), docs.end());
  const EntityKeySet p = RestrictToDocs(predicted, doc_set);
  const EntityKeySet g = RestrictToDocs(gold, doc_set);
  EvaluationReport report;
  report.counts = CountMatches(p, g);
  report.micro = PrfFromCounts(report.counts);
  report.macro = MacroMetrics(p, g, docs, &report.per_doc);
  return report;
}

EvaluationReport Evaluate(const EntityKeySet& predicted, const Corpus& corpus) {
  return Evaluate(predicted, GoldSet(corpus), DocIds(corpus));
}

std::vector<std::string> DocIds(const Corpus& corpus) {
  std::vector<std::string> ids;
  for (const auto& doc : corpus) ids.push_back(doc.doc_id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::string_view MetricName(Metric metric) {
  return metric == Metric::kMicroF1 ? "micro-f1" : "macro-f1";
}

Metric ParseMetric(std::string_view name) {
  if (name == "micro-f1" || name == "micro") return Metric::kMicroF1;
  if (name == "macro-f1" || name == "macro") return Metric::kMacroF1;
  throw ValidationError("unknown metric: " + std::string(name));
}

double MetricValue(const EvaluationReport& report, Metric metric) {
  return metric == Metric::kMicroF1 ? report.micro.f1 : report.macro.f1;
}

// ---------------------------------------------------------------------------
// Baselines

std::string_view BaselineName(Baseline baseline) {
  switch (baseline) {
    case Baseline::kPositional:
      return "positional";
    case Baseline::kPositionalRho:
      return "positional-rho";
    case Baseline::kTextRank:
      return "textrank";
    case Baseline::kRelPageRank:
      return "rel-pagerank";
  }
  return "";
}

Baseline ParseBaseline(std::string_view name) {
  for (Baseline b : {Baseline::kPositional, Baseline::kPositionalRho,
                     Baseline::kTextRank, Baseline::kRelPageRank}) {
    if (BaselineName(b) == name) return b;
  }
  throw ValidationError("unknown baseline: " + std::string(name));
}

std::map<EntityId, double> BaselineScores(const EnrichedDocument& doc,
                                          Baseline baseline,
                                          const KnowledgeBase& kb) {
  std::map<EntityId, double> scores;
  if (doc.annotations.empty()) return scores;
  switch (baseline) {
    case Baseline::kPositional:
    case Baseline::kPositionalRho: {
      const double absent = -std::numeric_limits<double>::infinity();
      for (EntityId e : doc.entities()) scores[e] = absent;
      for (const Annotation& a : doc.annotations) {
        if (a.sentence_index != 0) continue;
        double& s = scores[a.entity];
        s = baseline == Baseline::kPositional ? 1.0 : std::max(s, a.rho);
      }
      if (baseline == Baseline::kPositional) {
        for (auto& [e, s] : scores) {
          if (s != 1.0) s = -1.0;
        }
      }
      break;
    }
    case Baseline::kTextRank: {
      const SentenceScores tr = TextRank(doc);
      for (EntityId e : doc.entities()) scores[e] = 0.0;
      for (const Annotation& a : doc.annotations) {
        double& s = scores[a.entity];
        s = std::max(s, tr[a.sentence_index]);
      }
      break;
    }
    case Baseline::kRelPageRank: {
      const EntityGraph graph =
          BuildGraph(doc, Weighting::kJaccard, &kb, nullptr);
      const auto pr = WeightedPageRank(graph.weights);
      for (size_t i = 0; i < graph.nodes.size(); ++i) {
        scores[graph.nodes[i]] = pr[i];
      }
      break;
    }
  }
  return scores;
}

namespace {

std::set<EntityId> AboveThreshold(const std::map<EntityId, double>& scores,
                                  double threshold) {
  std::set<EntityId> out;
  for (const auto& [e, s] : scores) {
    if (s > threshold) out.insert(e);
  }
  return out;
}

// Positional decisions do not depend on the threshold.
double EffectiveThreshold(Baseline baseline, double threshold) {
  return baseline == Baseline::kPositional ? 0.0 : threshold;
}

}  // namespace

std::set<EntityId> PositionalBaseline(const EnrichedDocument& doc) {
  return AboveThreshold(BaselineScores(doc, Baseline::kPositional, {}), 0.0);
}

std::set<EntityId> PositionalRhoBaseline(const EnrichedDocument& doc,
                                         double threshold) {
  return AboveThreshold(BaselineScores(doc, Baseline::kPositionalRho, {}),
                        threshold);
}

std::set<EntityId> TextRankBaseline(const EnrichedDocument& doc,
                                    double threshold) {
  return AboveThreshold(BaselineScores(doc, Baseline::kTextRank, {}),
                        threshold);
}

std::set<EntityId> RelPageRankBaseline(const EnrichedDocument& doc,
                                       const KnowledgeBase& kb,
                                       double threshold) {
  return AboveThreshold(BaselineScores(doc, Baseline::kRelPageRank, kb),
                        threshold);
}

EntityKeySet RunBaseline(const Corpus& corpus, Baseline baseline,
                         const KnowledgeBase& kb, double threshold) {
  EntityKeySet out;
  const double t = EffectiveThreshold(baseline, threshold);
  for (const auto& doc : corpus) {
    for (EntityId e : AboveThreshold(BaselineScores(doc, baseline, kb), t)) {
      out.emplace(doc.doc_id, e);
    }
  }
  return out;
}

double TuneThreshold(const std::function<double(double)>& metric_at) {
  double best_threshold = 0.0;
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 100; ++i) {
    const double t = i / 100.0;
    const double m = metric_at(t);
    if (m > best) {
      best = m;
      best_threshold = t;
    }
  }
  return best_threshold;
}

double TuneBaselineThreshold(const Corpus& validation, Baseline baseline,
                             const KnowledgeBase& kb, Metric metric) {
  std::vector<std::pair<std::string, std::map<EntityId, double>>> scores;
  for (const auto& doc : validation) {
    scores.emplace_back(doc.doc_id, BaselineScores(doc, baseline, kb));
  }
  const EntityKeySet gold = GoldSet(validation);
  const std::vector<std::string> docs = DocIds(validation);
  return TuneThreshold([&](double threshold) {
    const double t = EffectiveThreshold(baseline, threshold);
    EntityKeySet predicted;
    for (const auto& [doc_id, doc_scores] : scores) {
      for (const auto& [e, s] : doc_scores) {
        if (s > t) predicted.emplace(doc_id, e);
      }
    }
    return MetricValue(Evaluate(predicted, gold, docs), metric);
  });
}

// ---------------------------------------------------------------------------
// Protocols

DocSplit SplitDocs(const std::vector<std::string>& doc_ids,
                   double held_out_fraction, uint64_t seed) {
  if (doc_ids.empty()) throw ValidationError("cannot split an empty corpus");
  if (!(held_out_fraction > 0 && held_out_fraction < 1)) {
    throw ValidationError("held-out fraction must lie in (0, 1)");
  }
  std::vector<std::string> ids = doc_ids;
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  Rng rng(seed);
  rng.Shuffle(ids);
  const size_t n = ids.size();
  size_t held = static_cast<size_t>(std::llround(held_out_fraction * n));
  held = std::max<size_t>(held, 1);
  if (n >= 2) held = std::min(held, n - 1);
  DocSplit split;
  for (size_t i = 0; i < n; ++i) {
    (i < held ? split.held_out : split.train).insert(ids[i]);
  }
  return split;
}

namespace {

std::vector<std::string> MatrixDocs(const FeatureMatrix& matrix) {
  std::set<std::string> docs;
  for (const auto& key : matrix.keys) docs.insert(key.doc_id);
  return {docs.begin(), docs.end()};
}

EntityKeySet LabeledPositives(const FeatureMatrix& matrix) {
  EntityKeySet out;
  for (const auto& key : matrix.keys) {
    if (key.label && *key.label == 1) out.emplace(key.doc_id, key.entity);
  }
  return out;
}

std::vector<Prediction> ApplyThreshold(std::vector<Prediction> predictions,
                                       double threshold) {
  for (auto& p : predictions) p.label = p.score >= threshold ? 1 : 0;
  return predictions;
}

Corpus SelectCorpus(const Corpus& corpus, const std::set<std::string>& ids) {
  Corpus out;
  for (const auto& doc : corpus) {
    if (ids.count(doc.doc_id)) out.push_back(doc);
  }
  return out;
}

}  // namespace

Classifier ModelClassifier(GbdtModel model, double threshold) {
  return [model = std::move(model), threshold](const FeatureMatrix& matrix) {
    return ApplyThreshold(Predict(model, matrix), threshold);
  };
}

GbdtSelection SelectGbdt(const FeatureMatrix& train, const GbdtGrid& grid,
                         Metric metric, uint64_t seed) {
  const DocSplit split = SplitDocs(MatrixDocs(train), 0.2, seed);
  return SelectGbdt(train.SelectDocs(split.train),
                    train.SelectDocs(split.held_out), grid, metric, seed);
}

GbdtSelection SelectGbdt(const FeatureMatrix& train, const FeatureMatrix& valid,
                         const GbdtGrid& grid, Metric metric, uint64_t seed) {
  if (train.schema.names() != valid.schema.names()) {
    throw ValidationError("training and validation schemas differ");
  }
  const std::vector<int> y = train.labels();
  const std::vector<int> valid_y = valid.labels();
  const EntityKeySet valid_gold = LabeledPositives(valid);
  const std::vector<std::string> valid_docs = MatrixDocs(valid);

  GbdtTrainOptions options;
  options.feature_names = train.schema.names();
  options.valid_x = &valid.x;
  options.valid_y = valid_y;

  GbdtSelection selection;
  bool have_model = false;
  double best = 0.0;
  selection.search = GridSearch(grid, [&](const GbdtHyperparams& hp) {
    GbdtModel model = TrainGbdt(train.x, y, hp, seed, options);
    const double score = MetricValue(
        Evaluate(PositiveSet(Predict(model, valid)), valid_gold, valid_docs),
        metric);
    if (!have_model || score > best) {
      best = score;
      selection.model = std::move(model);
      have_model = true;
    }
    return score;
  });
  return selection;
}

ClassifierTrainer GbdtTrainer(GbdtGrid grid, Metric metric) {
  return [grid = std::move(grid), metric](const FeatureMatrix& train,
                                          uint64_t seed) {
    return ModelClassifier(SelectGbdt(train, grid, metric, seed).model);
  };
}

CrossValidationResult CrossValidate(const FeatureMatrix& matrix,
                                    const Corpus& corpus, int k, uint64_t seed,
                                    const ClassifierTrainer& trainer) {
  const FoldAssignment folds = MakeFolds(corpus, k, seed);
  const auto fold_docs = folds.folds();
  CrossValidationResult result;
  for (int f = 0; f < k; ++f) {
    std::set<std::string> test(fold_docs[f].begin(), fold_docs[f].end());
    std::set<std::string> train;
    for (int g = 0; g < k; ++g) {
      if (g != f) train.insert(fold_docs[g].begin(), fold_docs[g].end());
    }
    const Classifier classifier =
        trainer(matrix.SelectDocs(train), seed + static_cast<uint64_t>(f));
    const auto predictions = classifier(matrix.SelectDocs(test));
    result.folds.push_back(Evaluate(PositiveSet(predictions), GoldSet(corpus),
                                    fold_docs[f]));
  }
  for (const auto& report : result.folds) {
    result.macro.precision += report.macro.precision / k;
    result.macro.recall += report.macro.recall / k;
    result.macro.f1 += report.macro.f1 / k;
    result.micro.precision += report.micro.precision / k;
    result.micro.recall += report.micro.recall / k;
    result.micro.f1 += report.micro.f1 / k;
  }
  return result;
}

std::string_view TransferModeName(TransferMode mode) {
  return mode == TransferMode::kClf ? "clf" : "reg";
}

TransferMode ParseTransferMode(std::string_view name) {
  if (name == "clf") return TransferMode::kClf;
  if (name == "reg") return TransferMode::kReg;
  throw ValidationError("unknown transfer mode: " + std::string(name));
}

EvaluationReport CrossCorpus(const GbdtModel& source_model,
                             const FeatureMatrix& target_matrix,
                             const Corpus& target, TransferMode mode,
                             const GbdtGrid& grid, uint64_t seed) {
  if (target.empty()) throw ValidationError("target corpus is empty");
  if (mode == TransferMode::kClf) {
    return Evaluate(PositiveSet(Predict(source_model, target_matrix)), target);
  }
  const DocSplit split = SplitDocs(DocIds(target), 0.2, seed);
  const FeatureMatrix train = target_matrix.SelectDocs(split.train);
  const GbdtModel model =
      SelectGbdt(train, grid, Metric::kMacroF1, seed).model;
  const auto train_predictions = Predict(model, train);
  const Corpus train_corpus = SelectCorpus(target, split.train);
  const double threshold = TuneThreshold([&](double t) {
    return Evaluate(PositiveSet(ApplyThreshold(train_predictions, t)),
                    train_corpus)
        .macro.f1;
  });
  const auto test_predictions = ApplyThreshold(
      Predict(model, target_matrix.SelectDocs(split.held_out)), threshold);
  return Evaluate(PositiveSet(test_predictions),
                  SelectCorpus(target, split.held_out));
}

std::vector<std::pair<double, EvaluationReport>> TrainingSizeCurve(
    const FeatureMatrix& matrix, const Corpus& corpus,
    const std::vector<double>& fractions, const GbdtHyperparams& hp,
    uint64_t seed) {
  for (double f : fractions) {
    if (!(f > 0 && f <= 1)) {
      throw ValidationError("training fraction " + FormatDouble(f) +
                            " is outside (0, 1]");
    }
  }
  const DocSplit outer = SplitDocs(DocIds(corpus), 0.2, seed);
  const DocSplit inner = SplitDocs(
      std::vector<std::string>(outer.train.begin(), outer.train.end()), 0.25,
      seed + 1);
  std::vector<std::string> pool(inner.train.begin(), inner.train.end());
  Rng rng(seed + 2);
  rng.Shuffle(pool);

  const FeatureMatrix valid = matrix.SelectDocs(inner.held_out);
  const std::vector<int> valid_y = valid.labels();
  const FeatureMatrix test = matrix.SelectDocs(outer.held_out);
  const Corpus test_corpus = SelectCorpus(corpus, outer.held_out);

  std::vector<std::pair<double, EvaluationReport>> curve;
  for (double f : fractions) {
    const size_t n = std::max<size_t>(
        1, static_cast<size_t>(std::llround(f * pool.size())));
    const std::set<std::string> subset(pool.begin(), pool.begin() + n);
    const FeatureMatrix train = matrix.SelectDocs(subset);
    GbdtTrainOptions options;
    options.feature_names = matrix.schema.names();
    options.valid_x = &valid.x;
    options.valid_y = valid_y;
    const GbdtModel model = TrainGbdt(train.x, train.labels(), hp, seed, options);
    curve.emplace_back(
        f, Evaluate(PositiveSet(Predict(model, test)), test_corpus));
  }
  return curve;
}

std::vector<std::pair<int, double>> IncrementalFeatureCurve(
    const GbdtModel& model, const FeatureMatrix& train,
    const FeatureMatrix& test, const Corpus& test_corpus, uint64_t seed,
    int max_prefix) {
  const auto importance = FeatureImportance(model);
  std::vector<size_t> order(model.feature_names.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return importance.at(model.feature_names[a]) >
           importance.at(model.feature_names[b]);
  });
  const int limit =
      std::min<int>(max_prefix, static_cast<int>(order.size()));
  const std::vector<int> y = train.labels();
  std::vector<std::pair<int, double>> curve;
  for (int k = 1; k <= limit; ++k) {
    std::vector<size_t> chosen(order.begin(), order.begin() + k);
    std::sort(chosen.begin(), chosen.end());
    std::vector<std::string> names;
    for (size_t c : chosen) names.push_back(model.feature_names[c]);
    const FeatureMatrix sub_train = train.SelectFeatures(names);
    const FeatureMatrix sub_test = test.SelectFeatures(names);
    GbdtTrainOptions options;
    options.feature_names = names;
    const GbdtModel sub =
        TrainGbdt(sub_train.x, y, model.hyperparams, seed, options);
    curve.emplace_back(
        k, Evaluate(PositiveSet(Predict(sub, sub_test)), test_corpus).micro.f1);
  }
  return curve;
}

std::vector<std::pair<double, double>> PositionBucketedF1(
    const EntityKeySet& predicted, const Corpus& corpus,
    const std::vector<double>& xs) {
  std::map<EntityKey, double> position;
  for (const auto& doc : corpus) {
    const double n_tokens = static_cast<double>(doc.tokens.size());
    for (const Annotation& a : doc.annotations) {
      const double p = (a.first_token + 1) / n_tokens;
      auto [it, inserted] = position.emplace(EntityKey{doc.doc_id, a.entity}, p);
      if (!inserted) it->second = std::min(it->second, p);
    }
  }
  auto position_of = [&](const EntityKey& key) {
    auto it = position.find(key);
    return it == position.end() ? 1.0 : it->second;
  };
  const EntityKeySet gold = GoldSet(corpus);
  std::vector<std::pair<double, double>> curve;
  for (double x : xs) {
    EntityKeySet p, g;
    for (const auto& key : predicted) {
      if (position_of(key) > x) p.insert(key);
    }
    for (const auto& key : gold) {
      if (position_of(key) > x) g.insert(key);
    }
    curve.emplace_back(x, MicroMetrics(p, g).f1);
  }
  return curve;
}

FeatureMatrix PerturbGroup(const FeatureMatrix& matrix, FeatureGroup group,
                           double value) {
  FeatureMatrix out = matrix;
  for (size_t c : matrix.schema.columns_in(group)) {
    for (size_t r = 0; r < out.x.rows; ++r) out.x.at(r, c) = value;
  }
  return out;
}

EvaluationReport EvaluatePerturbed(const FeatureMatrix& matrix,
                                   FeatureGroup group, double value,
                                   const GbdtModel& model,
                                   const Corpus& corpus) {
  const FeatureMatrix perturbed = PerturbGroup(matrix, group, value);
  return Evaluate(PositiveSet(Predict(model, perturbed)), corpus);
}

// ---------------------------------------------------------------------------
// Export

namespace {

json PrfJson(const Prf& prf) {
  return json{{"precision", prf.precision},
              {"recall", prf.recall},
              {"f1", prf.f1}};
}

}  // namespace

std::string ReportToJson(const EvaluationReport& report,
                         const std::vector<Curve>& curves) {
  json per_doc = json::array();
  for (const auto& d : report.per_doc) {
    per_doc.push_back(json{{"doc_id", d.doc_id},
                           {"precision", d.prf.precision},
                           {"recall", d.prf.recall},
                           {"f1", d.prf.f1}});
  }
  json j{{"micro", PrfJson(report.micro)},
         {"macro", PrfJson(report.macro)},
         {"counts",
          json{{"tp", report.counts.tp},
               {"fp", report.counts.fp},
               {"fn", report.counts.fn}}},
         {"per_doc", std::move(per_doc)}};
  if (!curves.empty()) {
    json cj = json::array();
    for (const Curve& c : curves) {
      json points = json::array();
      for (const auto& [x, y] : c.points) points.push_back(json::array({x, y}));
      cj.push_back(json{{"name", c.name},
                        {"x", c.x_label},
                        {"y", c.y_label},
                        {"points", std::move(points)}});
    }
    j["curves"] = std::move(cj);
  }
  return j.dump(2) + "\n";
}

std::string CurveToCsv(const Curve& curve) {
  std::string out = curve.x_label + "," + curve.y_label + "\n";
  for (const auto& [x, y] : curve.points) {
    out += FormatDouble(x) + "," + FormatDouble(y) + "\n";
  }
  return out;
}

}  // namespace salience
