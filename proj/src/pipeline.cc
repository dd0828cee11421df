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

#include "salience/pipeline.h"

#include <algorithm>
#include <charconv>
#include <map>
#include <tuple>

#include "json.hpp"
#include "salience/util.h"

namespace salience {

using json = nlohmann::json;

std::vector<int> FeatureMatrix::labels() const {
  std::vector<int> out;
  out.reserve(keys.size());
  for (const RowKey& key : keys) {
    if (!key.label) {
      throw ValidationError("row " + key.doc_id + "/" +
                            std::to_string(key.entity) + " has no label");
    }
    out.push_back(*key.label);
  }
  return out;
}

FeatureMatrix FeatureMatrix::SelectRows(std::span<const size_t> rows) const {
  FeatureMatrix out;
  out.schema = schema;
  out.x = x.SelectRows(rows);
  for (size_t r : rows) out.keys.push_back(keys[r]);
  return out;
}

FeatureMatrix FeatureMatrix::SelectDocs(
    const std::set<std::string>& doc_ids) const {
  std::vector<size_t> rows;
  for (size_t r = 0; r < keys.size(); ++r) {
    if (doc_ids.count(keys[r].doc_id)) rows.push_back(r);
  }
  return SelectRows(rows);
}

FeatureMatrix FeatureMatrix::SelectFeatures(
    const std::vector<std::string>& names) const {
  std::vector<size_t> columns;
  for (const auto& name : names) {
    const int c = schema.index_of(name);
    if (c < 0) throw ValidationError("unknown feature: " + name);
    columns.push_back(static_cast<size_t>(c));
  }
  FeatureMatrix out;
  out.schema = FeatureSchema::FromNames(names);
  out.keys = keys;
  out.x = x.SelectColumns(columns);
  return out;
}

FeatureContext PipelineResources::context() const {
  FeatureContext ctx;
  ctx.idf = &idf;
  ctx.kb = &kb;
  ctx.embeddings = &embeddings;
  ctx.cooccurrence = cooccurrence ? &*cooccurrence : nullptr;
  return ctx;
}

FeatureMatrix Featurize(const Corpus& corpus, const PipelineResources& res) {
  const FeaturePlan plan = res.plan();
  const FeatureContext context = res.context();

  std::vector<const EnrichedDocument*> docs;
  for (const auto& doc : corpus) docs.push_back(&doc);
  std::sort(docs.begin(), docs.end(), [](const auto* a, const auto* b) {
    return a->doc_id < b->doc_id;
  });

  FeatureMatrix out;
  out.schema = plan.schema;
  std::vector<std::vector<double>> rows;
  for (const EnrichedDocument* doc : docs) {
    if (doc->annotations.empty()) continue;
    DocumentFeaturizer featurizer(*doc, context, plan);
    for (FeatureVector& v : featurizer.AssembleAll()) {
      RowKey key{doc->doc_id, v.entity, std::nullopt};
      if (doc->gold_salient) key.label = doc->is_gold(v.entity) ? 1 : 0;
      out.keys.push_back(std::move(key));
      rows.push_back(std::move(v.values));
    }
  }
  out.x = Matrix(rows.size(), plan.schema.size());
  for (size_t r = 0; r < rows.size(); ++r) {
    std::copy(rows[r].begin(), rows[r].end(), out.x.row(r).begin());
  }
  return out;
}

namespace {

std::vector<std::string_view> SplitCsv(std::string_view line) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (true) {
    const size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

double ParseDouble(std::string_view text, size_t line_number) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ValidationError("line " + std::to_string(line_number) +
                          ": bad number '" + std::string(text) + "'");
  }
  return value;
}

int64_t ParseInt(std::string_view text, size_t line_number) {
  int64_t value = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ValidationError("line " + std::to_string(line_number) +
                          ": bad integer '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

std::string SerializeMatrixCsv(const FeatureMatrix& matrix) {
  std::string out = "doc_id,entity_id,label";
  for (const auto& spec : matrix.schema.features()) {
    out += ',';
    out += spec.name;
  }
  out += '\n';
  for (size_t r = 0; r < matrix.keys.size(); ++r) {
    const RowKey& key = matrix.keys[r];
    if (key.doc_id.find_first_of(",\n\r\"") != std::string::npos) {
      throw ValidationError("doc_id '" + key.doc_id +
                            "' cannot be written to CSV");
    }
    out += key.doc_id;
    out += ',';
    out += std::to_string(key.entity);
    out += ',';
    if (key.label) out += std::to_string(*key.label);
    for (double v : matrix.x.row(r)) {
      out += ',';
      out += FormatDouble(v);
    }
    out += '\n';
  }
  return out;
}

FeatureMatrix ParseMatrixCsv(std::string_view text) {
  const auto lines = SplitLines(text);
  if (lines.empty()) throw ValidationError("feature matrix is empty");
  const auto header = SplitCsv(lines[0]);
  if (header.size() < 3 || header[0] != "doc_id" || header[1] != "entity_id" ||
      header[2] != "label") {
    throw ValidationError("feature matrix header must start with "
                          "doc_id,entity_id,label");
  }
  std::vector<std::string> names(header.begin() + 3, header.end());
  FeatureMatrix out;
  out.schema = FeatureSchema::FromNames(names);
  const size_t cols = names.size();
  out.x = Matrix(lines.size() - 1, cols);
  for (size_t l = 1; l < lines.size(); ++l) {
    const auto fields = SplitCsv(lines[l]);
    if (fields.size() != cols + 3) {
      throw ValidationError("line " + std::to_string(l + 1) + " has " +
                            std::to_string(fields.size()) + " fields, expected " +
                            std::to_string(cols + 3));
    }
    RowKey key{std::string(fields[0]), ParseInt(fields[1], l + 1),
               std::nullopt};
    if (!fields[2].empty()) {
      const int64_t label = ParseInt(fields[2], l + 1);
      if (label != 0 && label != 1) {
        throw ValidationError("line " + std::to_string(l + 1) +
                              ": label must be 0 or 1");
      }
      key.label = static_cast<int>(label);
    }
    out.keys.push_back(std::move(key));
    for (size_t c = 0; c < cols; ++c) {
      out.x.at(l - 1, c) = ParseDouble(fields[c + 3], l + 1);
    }
  }
  return out;
}

void SaveMatrixCsv(const FeatureMatrix& matrix, const std::string& path) {
  WriteFile(path, SerializeMatrixCsv(matrix));
}

FeatureMatrix LoadMatrixCsv(const std::string& path) {
  return ParseMatrixCsv(ReadFile(path));
}

std::vector<Prediction> Predict(const GbdtModel& model,
                                const FeatureMatrix& matrix) {
  if (matrix.schema.names() != model.feature_names) {
    throw ValidationError("feature matrix schema " +
                          matrix.schema.fingerprint() +
                          " does not match model schema " +
                          model.fingerprint());
  }
  std::vector<Prediction> out;
  out.reserve(matrix.keys.size());
  for (size_t r = 0; r < matrix.keys.size(); ++r) {
    const double score = model.PredictProba(matrix.x.row(r));
    out.push_back({matrix.keys[r].doc_id, matrix.keys[r].entity, score,
                   score >= kDecisionThreshold ? 1 : 0});
  }
  std::sort(out.begin(), out.end(), [](const Prediction& a, const Prediction& b) {
    return std::tie(a.doc_id, a.entity) < std::tie(b.doc_id, b.entity);
  });
  return out;
}

std::string SerializePredictions(const std::vector<Prediction>& predictions) {
  std::string out = "{\"predictions\": [";
  for (size_t i = 0; i < predictions.size(); ++i) {
    const Prediction& p = predictions[i];
    out += i == 0 ? "\n  " : ",\n  ";
    out += "{\"doc_id\": " + json(p.doc_id).dump() +
           ", \"entity_id\": " + std::to_string(p.entity) +
           ", \"score\": " + FormatDouble(p.score) +
           ", \"label\": " + std::to_string(p.label) + "}";
  }
  out += predictions.empty() ? "]}\n" : "\n]}\n";
  return out;
}

std::vector<Prediction> ParsePredictions(std::string_view text) {
  std::vector<Prediction> out;
  try {
    const json j = json::parse(text);
    for (const json& p : j.at("predictions")) {
      Prediction pred;
      pred.doc_id = p.at("doc_id").get<std::string>();
      pred.entity = p.at("entity_id").get<EntityId>();
      pred.score = p.at("score").get<double>();
      pred.label = p.at("label").get<int>();
      if (pred.label != 0 && pred.label != 1) {
        throw ValidationError("prediction label must be 0 or 1");
      }
      out.push_back(std::move(pred));
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed predictions file: ") +
                          e.what());
  }
  return out;
}

void SavePredictions(const std::vector<Prediction>& predictions,
                     const std::string& path) {
  WriteFile(path, SerializePredictions(predictions));
}

std::vector<Prediction> LoadPredictions(const std::string& path) {
  return ParsePredictions(ReadFile(path));
}

EntityKeySet PositiveSet(const std::vector<Prediction>& predictions) {
  EntityKeySet out;
  for (const auto& p : predictions) {
    if (p.label == 1) out.emplace(p.doc_id, p.entity);
  }
  return out;
}

EntityKeySet GoldSet(const Corpus& corpus) {
  EntityKeySet out;
  for (const auto& doc : corpus) {
    if (!doc.gold_salient) continue;
    for (EntityId e : *doc.gold_salient) out.emplace(doc.doc_id, e);
  }
  return out;
}

}  // namespace salience
