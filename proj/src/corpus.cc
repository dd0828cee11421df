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

#include "salience/corpus.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <set>

#include "json.hpp"

namespace salience {

using json = nlohmann::json;

namespace {

std::string DocLabel(const EnrichedDocument& doc) {
  return "document '" + doc.doc_id + "'";
}

[[noreturn]] void Invalid(const EnrichedDocument& doc, const std::string& what) {
  throw ValidationError(DocLabel(doc) + ": " + what);
}

json AnnotationToJson(const Annotation& a) {
  return json{{"char_start", a.char_start}, {"char_end", a.char_end},
              {"sentence_index", a.sentence_index},
              {"first_token", a.first_token}, {"entity_id", a.entity},
              {"commonness", a.commonness}, {"rho", a.rho}};
}

Annotation AnnotationFromJson(const json& j) {
  Annotation a;
  a.char_start = j.at("char_start").get<int64_t>();
  a.char_end = j.at("char_end").get<int64_t>();
  a.sentence_index = j.value("sentence_index", 0);
  a.first_token = j.value("first_token", 0);
  a.entity = j.at("entity_id").get<EntityId>();
  a.commonness = j.at("commonness").get<double>();
  a.rho = j.at("rho").get<double>();
  return a;
}

json DocumentToJson(const EnrichedDocument& doc) {
  json j;
  j["doc_id"] = doc.doc_id;
  j["title"] = doc.title;
  if (doc.headline) j["headline"] = *doc.headline;
  j["content"] = doc.content;
  json tokens = json::array();
  for (const Token& t : doc.tokens) {
    tokens.push_back({{"surface", t.surface}, {"pos", t.pos},
                      {"char_start", t.char_start}, {"char_end", t.char_end},
                      {"sentence_index", t.sentence_index},
                      {"token_index", t.token_index}});
  }
  j["tokens"] = std::move(tokens);
  json sentences = json::array();
  for (const SentenceRange& s : doc.sentences) {
    sentences.push_back(json::array({s.begin, s.end}));
  }
  j["sentences"] = std::move(sentences);
  json deps = json::array();
  for (const DependencyEdge& d : doc.dependency_edges) {
    deps.push_back(
        {{"head", d.head}, {"dependent", d.dependent}, {"relation", d.relation}});
  }
  j["deps"] = std::move(deps);
  json corefs = json::array();
  for (const CorefChain& chain : doc.coref_chains) {
    json mentions = json::array();
    for (const CorefMention& m : chain.mentions) {
      mentions.push_back({{"sentence_index", m.sentence_index},
                          {"first_token", m.first_token},
                          {"last_token", m.last_token}});
    }
    corefs.push_back({{"mentions", std::move(mentions)}});
  }
  j["corefs"] = std::move(corefs);
  json annotations = json::array();
  for (const Annotation& a : doc.annotations) {
    annotations.push_back(AnnotationToJson(a));
  }
  j["annotations"] = std::move(annotations);
  json title_annotations = json::array();
  for (const Annotation& a : doc.title_annotations) {
    title_annotations.push_back(AnnotationToJson(a));
  }
  j["title_annotations"] = std::move(title_annotations);
  if (doc.gold_salient) j["gold_salient"] = *doc.gold_salient;
  return j;
}

EnrichedDocument DocumentFromJson(const json& j) {
  EnrichedDocument doc;
  if (!j.is_object()) throw ValidationError("corpus record is not an object");
  doc.doc_id = j.value("doc_id", std::string());
  try {
    doc.doc_id = j.at("doc_id").get<std::string>();
    doc.title = j.at("title").get<std::string>();
    if (j.contains("headline") && !j["headline"].is_null()) {
      doc.headline = j["headline"].get<std::string>();
    }
    doc.content = j.at("content").get<std::string>();
    for (const json& t : j.at("tokens")) {
      Token token;
      token.surface = t.at("surface").get<std::string>();
      token.pos = t.at("pos").get<std::string>();
      token.char_start = t.at("char_start").get<int64_t>();
      token.char_end = t.at("char_end").get<int64_t>();
      token.sentence_index = t.at("sentence_index").get<int>();
      token.token_index = t.at("token_index").get<int>();
      doc.tokens.push_back(std::move(token));
    }
    for (const json& s : j.at("sentences")) {
      doc.sentences.push_back({s.at(0).get<int>(), s.at(1).get<int>()});
    }
    for (const json& d : j.value("deps", json::array())) {
      doc.dependency_edges.push_back({d.at("head").get<int>(),
                                      d.at("dependent").get<int>(),
                                      d.at("relation").get<std::string>()});
    }
    for (const json& c : j.value("corefs", json::array())) {
      CorefChain chain;
      for (const json& m : c.at("mentions")) {
        chain.mentions.push_back({m.at("sentence_index").get<int>(),
                                  m.at("first_token").get<int>(),
                                  m.at("last_token").get<int>()});
      }
      doc.coref_chains.push_back(std::move(chain));
    }
    for (const json& a : j.at("annotations")) {
      doc.annotations.push_back(AnnotationFromJson(a));
    }
    for (const json& a : j.value("title_annotations", json::array())) {
      doc.title_annotations.push_back(AnnotationFromJson(a));
    }
    if (j.contains("gold_salient") && !j["gold_salient"].is_null()) {
      auto gold = j["gold_salient"].get<std::vector<EntityId>>();
      std::sort(gold.begin(), gold.end());
      gold.erase(std::unique(gold.begin(), gold.end()), gold.end());
      doc.gold_salient = std::move(gold);
    }
  } catch (const json::exception& e) {
    Invalid(doc, std::string("malformed record: ") + e.what());
  }
  return doc;
}

bool InUnitInterval(double v) { return v >= 0.0 && v <= 1.0; }

}  // namespace

DepRelation ClassifyRelation(std::string_view label) {
  if (label == "prep_in") return DepRelation::kPrepIn;
  if (label == "amod") return DepRelation::kAmod;
  if (label == "poss") return DepRelation::kPoss;
  if (label == "nn" || label == "compound") return DepRelation::kNn;
  if (label == "nsubj") return DepRelation::kNsubj;
  return DepRelation::kOther;
}

std::string_view RelationName(DepRelation relation) {
  switch (relation) {
    case DepRelation::kPrepIn: return "prep_in";
    case DepRelation::kAmod: return "amod";
    case DepRelation::kPoss: return "poss";
    case DepRelation::kNn: return "nn";
    case DepRelation::kNsubj: return "nsubj";
    case DepRelation::kOther: return "other";
  }
  return "other";
}

int EnrichedDocument::last_token(const Annotation& annotation) const {
  int last = annotation.first_token;
  while (last + 1 < static_cast<int>(tokens.size()) &&
         tokens[last + 1].char_end <= annotation.char_end &&
         tokens[last + 1].sentence_index == annotation.sentence_index) {
    ++last;
  }
  return last;
}

std::string_view EnrichedDocument::mention_text(
    const Annotation& annotation) const {
  return std::string_view(content).substr(
      annotation.char_start, annotation.char_end - annotation.char_start);
}

std::vector<EntityId> EnrichedDocument::entities() const {
  std::vector<EntityId> ids;
  ids.reserve(annotations.size());
  for (const Annotation& a : annotations) ids.push_back(a.entity);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

std::vector<const Annotation*> EnrichedDocument::mentions_of(
    EntityId entity) const {
  std::vector<const Annotation*> out;
  for (const Annotation& a : annotations) {
    if (a.entity == entity) out.push_back(&a);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Annotation* x, const Annotation* y) {
                     return x->char_start < y->char_start;
                   });
  return out;
}

bool EnrichedDocument::is_gold(EntityId entity) const {
  return gold_salient &&
         std::binary_search(gold_salient->begin(), gold_salient->end(), entity);
}

void ValidateDocument(const EnrichedDocument& doc, const KnowledgeBase* kb) {
  const int64_t content_size = static_cast<int64_t>(doc.content.size());
  const int n_tokens = static_cast<int>(doc.tokens.size());
  for (int i = 0; i < n_tokens; ++i) {
    const Token& t = doc.tokens[i];
    if (t.token_index != i) {
      Invalid(doc, "token " + std::to_string(i) + " has token_index " +
                       std::to_string(t.token_index));
    }
    if (t.char_start < 0 || t.char_start >= t.char_end ||
        t.char_end > content_size) {
      Invalid(doc, "token " + std::to_string(i) + " has invalid offsets");
    }
    if (i > 0 && t.char_start < doc.tokens[i - 1].char_end) {
      Invalid(doc, "token " + std::to_string(i) + " overlaps its predecessor");
    }
  }

  int expected_begin = 0;
  for (size_t s = 0; s < doc.sentences.size(); ++s) {
    const SentenceRange& range = doc.sentences[s];
    if (range.begin != expected_begin || range.end <= range.begin ||
        range.end > n_tokens) {
      Invalid(doc, "sentence ranges do not partition the tokens (sentence " +
                       std::to_string(s) + ")");
    }
    for (int t = range.begin; t < range.end; ++t) {
      if (doc.tokens[t].sentence_index != static_cast<int>(s)) {
        Invalid(doc, "token " + std::to_string(t) +
                         " disagrees with its sentence range");
      }
    }
    expected_begin = range.end;
  }
  if (expected_begin != n_tokens) {
    Invalid(doc, "sentence ranges do not cover all tokens");
  }

  auto valid_token = [&](int t) { return t >= 0 && t < n_tokens; };
  for (size_t i = 0; i < doc.dependency_edges.size(); ++i) {
    const DependencyEdge& edge = doc.dependency_edges[i];
    if (!valid_token(edge.head) || !valid_token(edge.dependent) ||
        edge.head == edge.dependent ||
        doc.tokens[edge.head].sentence_index !=
            doc.tokens[edge.dependent].sentence_index) {
      Invalid(doc, "dependency edge " + std::to_string(i) + " is invalid");
    }
  }

  for (size_t c = 0; c < doc.coref_chains.size(); ++c) {
    const CorefChain& chain = doc.coref_chains[c];
    if (chain.mentions.empty()) {
      Invalid(doc, "coreference chain " + std::to_string(c) + " is empty");
    }
    for (const CorefMention& m : chain.mentions) {
      if (!valid_token(m.first_token) || !valid_token(m.last_token) ||
          m.first_token > m.last_token ||
          doc.tokens[m.first_token].sentence_index != m.sentence_index ||
          doc.tokens[m.last_token].sentence_index != m.sentence_index) {
        Invalid(doc, "coreference chain " + std::to_string(c) +
                         " has an invalid mention span");
      }
    }
  }

  for (size_t i = 0; i < doc.annotations.size(); ++i) {
    const Annotation& a = doc.annotations[i];
    const std::string label = "annotation " + std::to_string(i) + " (entity " +
                              std::to_string(a.entity) + ", chars " +
                              std::to_string(a.char_start) + "-" +
                              std::to_string(a.char_end) + ")";
    if (!InUnitInterval(a.commonness) || !InUnitInterval(a.rho)) {
      Invalid(doc, label + " has scores outside [0,1]");
    }
    if (a.char_start < 0 || a.char_start >= a.char_end ||
        a.char_end > content_size) {
      Invalid(doc, label + " lies outside the content");
    }
    if (!valid_token(a.first_token) ||
        doc.tokens[a.first_token].char_start != a.char_start ||
        doc.tokens[a.first_token].sentence_index != a.sentence_index) {
      Invalid(doc, label + " does not start on its first token");
    }
    if (doc.tokens[doc.last_token(a)].char_end != a.char_end) {
      Invalid(doc, label + " crosses a token boundary");
    }
    if (kb != nullptr && !kb->contains(a.entity)) {
      Invalid(doc, label + " references an entity missing from the KB");
    }
  }

  const int64_t title_size = static_cast<int64_t>(doc.title.size());
  for (size_t i = 0; i < doc.title_annotations.size(); ++i) {
    const Annotation& a = doc.title_annotations[i];
    if (!InUnitInterval(a.commonness) || !InUnitInterval(a.rho) ||
        a.char_start < 0 || a.char_start >= a.char_end ||
        a.char_end > title_size) {
      Invalid(doc, "title annotation " + std::to_string(i) + " is invalid");
    }
    if (kb != nullptr && !kb->contains(a.entity)) {
      Invalid(doc, "title annotation " + std::to_string(i) +
                       " references an entity missing from the KB");
    }
  }
}

EnrichedDocument ParseDocument(std::string_view json_line) {
  json j;
  try {
    j = json::parse(json_line);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("corpus record is not valid JSON: ") +
                          e.what());
  }
  EnrichedDocument doc = DocumentFromJson(j);
  ValidateDocument(doc);
  return doc;
}

std::string SerializeDocument(const EnrichedDocument& doc) {
  return DocumentToJson(doc).dump();
}

Corpus ParseCorpus(std::string_view text) {
  Corpus corpus;
  for (const std::string& line : SplitLines(text)) {
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    corpus.push_back(ParseDocument(line));
  }
  std::sort(corpus.begin(), corpus.end(),
            [](const EnrichedDocument& a, const EnrichedDocument& b) {
              return a.doc_id < b.doc_id;
            });
  for (size_t i = 1; i < corpus.size(); ++i) {
    if (corpus[i].doc_id == corpus[i - 1].doc_id) {
      throw ValidationError("duplicate doc_id '" + corpus[i].doc_id + "'");
    }
  }
  return corpus;
}

Corpus LoadCorpus(const std::string& path) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (fs::is_directory(path, ec)) {
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(path)) {
      if (entry.is_regular_file() && entry.path().extension() == ".jsonl") {
        files.push_back(entry.path().string());
      }
    }
    std::sort(files.begin(), files.end());
    std::string all;
    for (const std::string& file : files) {
      all += ReadFile(file);
      if (!all.empty() && all.back() != '\n') all += '\n';
    }
    return ParseCorpus(all);
  }
  return ParseCorpus(ReadFile(path));
}

std::string SerializeCorpus(const Corpus& corpus) {
  std::vector<const EnrichedDocument*> ordered;
  for (const auto& doc : corpus) ordered.push_back(&doc);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const EnrichedDocument* a, const EnrichedDocument* b) {
                     return a->doc_id < b->doc_id;
                   });
  std::string out;
  for (const EnrichedDocument* doc : ordered) {
    out += SerializeDocument(*doc);
    out += '\n';
  }
  return out;
}

void SaveCorpus(const Corpus& corpus, const std::string& path) {
  WriteFile(path, SerializeCorpus(corpus));
}

// ---------------------------------------------------------------------------
// Knowledge base

std::string NormalizeAnchor(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (IsAsciiSpace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
  }
  return out;
}

KnowledgeBase KnowledgeBase::Build(std::vector<KbEntity> entities) {
  KnowledgeBase kb;
  std::sort(entities.begin(), entities.end(),
            [](const KbEntity& a, const KbEntity& b) { return a.id < b.id; });
  for (size_t i = 0; i < entities.size(); ++i) {
    if (!kb.index_.emplace(entities[i].id, i).second) {
      throw ValidationError("knowledge base: duplicate entity id " +
                            std::to_string(entities[i].id));
    }
  }
  std::map<std::string, std::map<EntityId, double>> merged;
  for (KbEntity& entity : entities) {
    std::sort(entity.in_links.begin(), entity.in_links.end());
    entity.in_links.erase(
        std::unique(entity.in_links.begin(), entity.in_links.end()),
        entity.in_links.end());
    for (EntityId link : entity.in_links) {
      if (!kb.index_.count(link)) {
        throw ValidationError("knowledge base: entity " +
                              std::to_string(entity.id) +
                              " has dangling in_link " + std::to_string(link));
      }
    }
    for (const auto& [text, list] : entity.anchors) {
      const std::string key = NormalizeAnchor(text);
      if (key.empty()) continue;
      for (const auto& [candidate, weight] : list) {
        if (!kb.index_.count(candidate)) {
          throw ValidationError("knowledge base: anchor '" + text +
                                "' references unknown entity " +
                                std::to_string(candidate));
        }
        if (!(weight >= 0.0) || !std::isfinite(weight)) {
          throw ValidationError("knowledge base: anchor '" + text +
                                "' has an invalid weight");
        }
        merged[key][candidate] += weight;
      }
    }
  }
  for (auto& [key, weights] : merged) {
    double total = 0.0;
    bool integral = true;
    for (const auto& [id, w] : weights) {
      total += w;
      integral = integral && w == std::floor(w);
    }
    if (total <= 0.0) continue;
    if (!integral && std::fabs(total - 1.0) > 1e-9) {
      Warn("knowledge base: priors for anchor '" + key + "' sum to " +
           FormatDouble(total) + "; renormalizing");
    }
    std::vector<AnchorCandidate> candidates;
    for (const auto& [id, w] : weights) {
      if (w > 0.0) candidates.push_back({id, w / total});
    }
    kb.anchors_.emplace(key, std::move(candidates));
  }
  kb.entities_ = std::move(entities);
  return kb;
}

const KbEntity* KnowledgeBase::find(EntityId id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &entities_[it->second];
}

const KbEntity& KnowledgeBase::at(EntityId id) const {
  const KbEntity* entity = find(id);
  if (entity == nullptr) {
    throw ValidationError("unknown entity " + std::to_string(id));
  }
  return *entity;
}

const std::vector<AnchorCandidate>* KnowledgeBase::candidates(
    std::string_view normalized_anchor) const {
  auto it = anchors_.find(std::string(normalized_anchor));
  return it == anchors_.end() ? nullptr : &it->second;
}

KnowledgeBase ParseKnowledgeBase(std::string_view text) {
  std::vector<KbEntity> entities;
  size_t line_no = 0;
  for (const std::string& line : SplitLines(text)) {
    ++line_no;
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      json j = json::parse(line);
      KbEntity entity;
      entity.id = j.at("id").get<EntityId>();
      entity.title = j.at("title").get<std::string>();
      entity.in_links = j.value("in_links", std::vector<EntityId>{});
      if (j.contains("anchors")) {
        for (const auto& [anchor, list] : j["anchors"].items()) {
          auto& out = entity.anchors[anchor];
          for (const json& pair : list) {
            out.emplace_back(pair.at(0).get<EntityId>(),
                             pair.at(1).get<double>());
          }
        }
      }
      entities.push_back(std::move(entity));
    } catch (const json::exception& e) {
      throw ValidationError("knowledge base line " + std::to_string(line_no) +
                            ": " + e.what());
    }
  }
  return KnowledgeBase::Build(std::move(entities));
}

KnowledgeBase LoadKnowledgeBase(const std::string& path) {
  return ParseKnowledgeBase(ReadFile(path));
}

namespace {

json WeightToJson(double w) {
  if (w == std::floor(w) && std::fabs(w) < 9e15) {
    return static_cast<int64_t>(w);
  }
  return w;
}

}  // namespace

std::string SerializeKnowledgeBase(const KnowledgeBase& kb) {
  std::string out;
  for (const KbEntity& entity : kb.entities()) {
    json anchors = json::object();
    for (const auto& [text, list] : entity.anchors) {
      json pairs = json::array();
      for (const auto& [id, w] : list) {
        pairs.push_back(json::array({id, WeightToJson(w)}));
      }
      anchors[text] = std::move(pairs);
    }
    json j{{"id", entity.id},
           {"title", entity.title},
           {"in_links", entity.in_links},
           {"anchors", std::move(anchors)}};
    out += j.dump();
    out += '\n';
  }
  return out;
}

void SaveKnowledgeBase(const KnowledgeBase& kb, const std::string& path) {
  WriteFile(path, SerializeKnowledgeBase(kb));
}

// ---------------------------------------------------------------------------
// Embeddings

std::string_view EmbeddingKindName(EmbeddingKind kind) {
  switch (kind) {
    case EmbeddingKind::kE2vCbow: return "e2v_cbow";
    case EmbeddingKind::kE2vSg: return "e2v_sg";
    case EmbeddingKind::kDwCbow: return "dw_cbow";
    case EmbeddingKind::kDwSg: return "dw_sg";
  }
  return "e2v_sg";
}

EmbeddingKind ParseEmbeddingKind(std::string_view name) {
  for (EmbeddingKind kind : kAllEmbeddingKinds) {
    if (EmbeddingKindName(kind) == name) return kind;
  }
  throw ValidationError("unknown embedding kind '" + std::string(name) + "'");
}

const std::vector<double>* EmbeddingTable::entity(EntityId id) const {
  auto it = entity_vectors.find(id);
  return it == entity_vectors.end() ? nullptr : &it->second;
}

const std::vector<double>* EmbeddingTable::word(const std::string& w) const {
  auto it = word_vectors.find(w);
  return it == word_vectors.end() ? nullptr : &it->second;
}

void EmbeddingSet::Add(EmbeddingTable table) {
  const EmbeddingKind kind = table.kind;
  tables_.insert_or_assign(kind, std::move(table));
}

const EmbeddingTable* EmbeddingSet::find(EmbeddingKind kind) const {
  auto it = tables_.find(kind);
  return it == tables_.end() ? nullptr : &it->second;
}

EmbeddingTable ParseEmbeddings(std::string_view text, EmbeddingKind kind) {
  EmbeddingTable table;
  table.kind = kind;
  size_t line_no = 0;
  for (const std::string& line : SplitLines(text)) {
    ++line_no;
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw ValidationError("embedding line " + std::to_string(line_no) +
                            ": " + e.what());
    }
    try {
      const EmbeddingKind record_kind =
          ParseEmbeddingKind(j.at("kind").get<std::string>());
      if (record_kind != kind) {
        throw ValidationError(
            "embedding line " + std::to_string(line_no) + ": kind " +
            std::string(EmbeddingKindName(record_kind)) + " in a " +
            std::string(EmbeddingKindName(kind)) + " table");
      }
      const bool is_word = j.at("is_word").get<bool>();
      const json& key = j.at("id_or_word");
      const std::string label =
          key.is_string() ? key.get<std::string>() : key.dump();
      auto vector = j.at("vector").get<std::vector<double>>();
      if (vector.empty()) {
        throw ValidationError("embedding '" + label + "' has no components");
      }
      for (double v : vector) {
        if (!std::isfinite(v)) {
          throw ValidationError("embedding '" + label +
                                "' has a non-finite component");
        }
      }
      if (table.dimension == 0) {
        table.dimension = static_cast<int>(vector.size());
      } else if (static_cast<int>(vector.size()) != table.dimension) {
        throw ValidationError("embedding '" + label + "' has dimension " +
                              std::to_string(vector.size()) + ", expected " +
                              std::to_string(table.dimension));
      }
      if (is_word) {
        if (!HasWordVectors(kind)) {
          throw ValidationError("word vector '" + label + "' in a " +
                                std::string(EmbeddingKindName(kind)) +
                                " table (word vectors need an e2v kind)");
        }
        table.word_vectors[label] = std::move(vector);
      } else {
        const EntityId id = key.is_string() ? std::stoll(label)
                                            : key.get<EntityId>();
        table.entity_vectors[id] = std::move(vector);
      }
    } catch (const json::exception& e) {
      throw ValidationError("embedding line " + std::to_string(line_no) +
                            ": " + e.what());
    }
  }
  return table;
}

EmbeddingTable LoadEmbeddings(const std::string& path, EmbeddingKind kind) {
  return ParseEmbeddings(ReadFile(path), kind);
}

EmbeddingKind PeekEmbeddingKind(const std::string& path) {
  for (const std::string& line : SplitLines(ReadFile(path))) {
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      return ParseEmbeddingKind(json::parse(line).at("kind").get<std::string>());
    } catch (const json::exception& e) {
      throw ValidationError(path + ": " + e.what());
    }
  }
  throw ValidationError(path + ": empty embedding file");
}

std::string SerializeEmbeddings(const EmbeddingTable& table) {
  const std::string kind(EmbeddingKindName(table.kind));
  std::string out;
  for (const auto& [id, vector] : table.entity_vectors) {
    out += json{{"kind", kind}, {"id_or_word", id}, {"is_word", false},
                {"vector", vector}}
               .dump();
    out += '\n';
  }
  for (const auto& [word, vector] : table.word_vectors) {
    out += json{{"kind", kind}, {"id_or_word", word}, {"is_word", true},
                {"vector", vector}}
               .dump();
    out += '\n';
  }
  return out;
}

void SaveEmbeddings(const EmbeddingTable& table, const std::string& path) {
  WriteFile(path, SerializeEmbeddings(table));
}

// ---------------------------------------------------------------------------
// Corpus statistics

IdfTable ComputeIdf(const Corpus& corpus) {
  IdfTable idf;
  idf.n_docs = static_cast<int64_t>(corpus.size());
  for (const EnrichedDocument& doc : corpus) {
    for (EntityId e : doc.entities()) ++idf.df[e];
  }
  return idf;
}

std::string SerializeIdf(const IdfTable& idf) {
  json df = json::array();
  for (const auto& [id, count] : idf.df) df.push_back(json::array({id, count}));
  return json{{"n_docs", idf.n_docs}, {"df", std::move(df)}}.dump() + "\n";
}

IdfTable ParseIdf(std::string_view text) {
  IdfTable idf;
  try {
    json j = json::parse(text);
    idf.n_docs = j.at("n_docs").get<int64_t>();
    for (const json& pair : j.at("df")) {
      const int64_t count = pair.at(1).get<int64_t>();
      if (count < 0 || count > idf.n_docs) {
        throw ValidationError("idf table: df out of range");
      }
      idf.df[pair.at(0).get<EntityId>()] = count;
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("idf table: ") + e.what());
  }
  return idf;
}

std::vector<std::vector<std::string>> FoldAssignment::folds() const {
  std::vector<std::vector<std::string>> out(std::max(k, 0));
  for (const auto& [doc_id, fold] : assignment) out.at(fold).push_back(doc_id);
  return out;
}

FoldAssignment MakeFolds(const Corpus& corpus, int k, uint64_t seed) {
  if (k < 2) throw ValidationError("fold count must be at least 2");
  if (static_cast<size_t>(k) > corpus.size()) {
    throw ValidationError("fold count " + std::to_string(k) +
                          " exceeds corpus size " +
                          std::to_string(corpus.size()));
  }
  std::vector<std::string> ids;
  ids.reserve(corpus.size());
  for (const EnrichedDocument& doc : corpus) ids.push_back(doc.doc_id);
  std::sort(ids.begin(), ids.end());
  Rng rng(seed);
  rng.Shuffle(ids);
  FoldAssignment folds;
  folds.k = k;
  for (size_t i = 0; i < ids.size(); ++i) {
    folds.assignment[ids[i]] = static_cast<int>(i % k);
  }
  return folds;
}

}  // namespace salience
