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


#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "salience/pipeline.h"
#include "salience/synthetic.h"
#include "service_fixture.h"
#include "support.h"

namespace salience {
namespace {

FeatureMatrix ServiceMatrix() {
  return Featurize(testing::ServiceTrainingCorpus(), testing::ServiceResources());
}

GbdtModel SmallModel(const FeatureMatrix& m) {
  GbdtHyperparams hp;
  hp.n_rounds = 5;
  hp.min_child_weight = 0.0;
  GbdtTrainOptions options;
  options.feature_names = m.schema.names();
  return TrainGbdt(m.x, m.labels(), hp, 1, options);
}

TEST_CASE("featurize emits sorted labeled rows") {
  const Corpus corpus = testing::ServiceTrainingCorpus();
  const FeatureMatrix m = ServiceMatrix();
  size_t expected_rows = 0;
  for (const auto& doc : corpus) expected_rows += doc.entities().size();
  CHECK(m.keys.size() == expected_rows);
  CHECK(m.x.rows == expected_rows);
  CHECK(m.x.cols == m.schema.size());
  CHECK(std::is_sorted(m.keys.begin(), m.keys.end(), [](const RowKey& a, const RowKey& b) {
    return std::tie(a.doc_id, a.entity) < std::tie(b.doc_id, b.entity);
  }));
  for (const RowKey& key : m.keys) {
    const auto doc = std::find_if(corpus.begin(), corpus.end(),
                                  [&](const auto& d) { return d.doc_id == key.doc_id; });
    REQUIRE(key.label.has_value());
    CHECK(*key.label == (doc->is_gold(key.entity) ? 1 : 0));
  }
}

TEST_CASE("matrix csv round-trips exactly") {
  const FeatureMatrix m = ServiceMatrix();
  const std::string text = SerializeMatrixCsv(m);
  CHECK(text.rfind("doc_id,entity_id,label,", 0) == 0);
  const FeatureMatrix back = ParseMatrixCsv(text);
  CHECK(back.schema == m.schema);
  CHECK(back.x.values == m.x.values);
  CHECK(SerializeMatrixCsv(back) == text);
  const std::string dir = testing::TempDir("pipeline");
  SaveMatrixCsv(m, dir + "/m.csv");
  CHECK(LoadMatrixCsv(dir + "/m.csv").x.values == m.x.values);
  CHECK_THROWS_AS(LoadMatrixCsv(dir + "/none.csv"), IoError);
  CHECK_THROWS_AS(ParseMatrixCsv("a,b\n1,2\n"), ValidationError);
  CHECK_THROWS_AS(ParseMatrixCsv(text.substr(0, text.size() - 3) + ",1\n"), ValidationError);
}

TEST_CASE("unlabeled rows and selections") {
  FeatureMatrix m = ServiceMatrix();
  const FeatureMatrix one = m.SelectDocs({"s10"});
  CHECK(one.keys.size() > 0);
  for (const RowKey& k : one.keys) CHECK(k.doc_id == "s10");
  const FeatureMatrix cols = m.SelectFeatures({"ef", "idf"});
  CHECK(cols.schema.names() == std::vector<std::string>{"ef", "idf"});
  CHECK(cols.x.at(0, 1) == m.x.at(0, m.schema.index_of("idf")));
  CHECK_THROWS_AS(m.SelectFeatures({"nope"}), ValidationError);
  m.keys[0].label.reset();
  CHECK_THROWS_AS(m.labels(), ValidationError);
  const FeatureMatrix back = ParseMatrixCsv(SerializeMatrixCsv(m));
  CHECK_FALSE(back.keys[0].label.has_value());
}

TEST_CASE("predictions round-trip and respect the threshold") {
  const FeatureMatrix m = ServiceMatrix();
  const GbdtModel model = SmallModel(m);
  const auto predictions = Predict(model, m);
  REQUIRE(predictions.size() == m.keys.size());
  for (const Prediction& p : predictions) CHECK(p.label == (p.score >= 0.5 ? 1 : 0));
  const std::string text = SerializePredictions(predictions);
  const auto back = ParsePredictions(text);
  REQUIRE(back.size() == predictions.size());
  for (size_t i = 0; i < back.size(); ++i) {
    CHECK(back[i].doc_id == predictions[i].doc_id);
    CHECK(back[i].entity == predictions[i].entity);
    CHECK(back[i].score == predictions[i].score);
    CHECK(back[i].label == predictions[i].label);
  }
  CHECK(SerializePredictions(back) == text);
  CHECK_THROWS_AS(ParsePredictions("{\"predictions\": 3}"), ValidationError);
  CHECK_THROWS_AS(Predict(model, m.SelectFeatures({"ef"})), ValidationError);

  EntityKeySet positives = PositiveSet(predictions);
  for (const Prediction& p : predictions) {
    CHECK(positives.count({p.doc_id, p.entity}) == static_cast<size_t>(p.label));
  }
  const EntityKeySet gold = GoldSet(testing::ServiceTrainingCorpus());
  for (const RowKey& k : m.keys) CHECK(gold.count({k.doc_id, k.entity}) == size_t(*k.label));
}

TEST_CASE("synthetic data writes loadable files") {
  SyntheticOptions options;
  options.docs = 12;
  options.seed = 3;
  const SyntheticData data = GenerateSynthetic(options);
  CHECK(data.corpus.size() == 12);
  for (const auto& doc : data.corpus) {
    ValidateDocument(doc, &data.kb);
    REQUIRE(doc.gold_salient.has_value());
    CHECK(*doc.gold_salient == PlantedGold(doc, data.kb));
  }
  const std::string dir = testing::TempDir("synthetic");
  WriteSynthetic(data, dir);
  CHECK(SerializeCorpus(LoadCorpus(dir + "/corpus.jsonl")) == SerializeCorpus(data.corpus));
  CHECK(LoadKnowledgeBase(dir + "/kb.jsonl").size() == data.kb.size());
  CHECK(SerializeCorpus(GenerateSynthetic(options).corpus) == SerializeCorpus(data.corpus));
}

}  // namespace
}  // namespace salience
