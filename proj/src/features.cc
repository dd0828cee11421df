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

#include "salience/features.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "salience/enricher.h"

namespace salience {

std::string_view FeatureGroupName(FeatureGroup group) {
  switch (group) {
    case FeatureGroup::kPosition: return "position";
    case FeatureGroup::kFrequency: return "frequency";
    case FeatureGroup::kTitle: return "title";
    case FeatureGroup::kAnnotation: return "annotation";
    case FeatureGroup::kRelatedness: return "relatedness";
    case FeatureGroup::kSyntactic: return "syntactic";
    case FeatureGroup::kW2v: return "w2v";
    case FeatureGroup::kMisc: return "misc";
  }
  return "misc";
}

FeatureGroup ParseFeatureGroup(std::string_view name) {
  for (FeatureGroup g : kAllFeatureGroups) {
    if (FeatureGroupName(g) == name) return g;
  }
  throw ValidationError("unknown feature group '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Schema

FeatureSchema::FeatureSchema(std::vector<FeatureSpec> features)
    : features_(std::move(features)) {
  for (size_t i = 0; i < features_.size(); ++i) {
    if (!index_.emplace(features_[i].name, i).second) {
      throw ValidationError("duplicate feature name '" + features_[i].name +
                            "'");
    }
  }
}

FeatureSchema FeatureSchema::FromNames(const std::vector<std::string>& names) {
  std::vector<FeatureSpec> specs;
  specs.reserve(names.size());
  for (const std::string& name : names) {
    specs.push_back({name, GroupForFeatureName(name)});
  }
  return FeatureSchema(std::move(specs));
}

std::vector<std::string> FeatureSchema::names() const {
  std::vector<std::string> out;
  out.reserve(features_.size());
  for (const auto& f : features_) out.push_back(f.name);
  return out;
}

int FeatureSchema::index_of(std::string_view name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : static_cast<int>(it->second);
}

std::vector<size_t> FeatureSchema::columns_in(FeatureGroup group) const {
  std::vector<size_t> out;
  for (size_t i = 0; i < features_.size(); ++i) {
    if (features_[i].group == group) out.push_back(i);
  }
  return out;
}

std::string FeatureSchema::fingerprint() const {
  std::string joined;
  for (const auto& f : features_) {
    joined += f.name;
    joined += '\n';
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(Fnv1a64(joined)));
  return buf;
}

namespace {

bool StartsWith(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

bool Contains(std::string_view s, std::string_view part) {
  return s.find(part) != std::string_view::npos;
}

}  // namespace

FeatureGroup GroupForFeatureName(std::string_view name) {
  if (name == "ef" || name == "idf" || name == "ef-idf" ||
      name == "head-count" || name == "mentions") {
    return FeatureGroup::kFrequency;
  }
  if (name == "is-upper" || name == "head-lex" || name == "wiki-id") {
    return FeatureGroup::kMisc;
  }
  if (name == "mention-title" || name == "entity-title" ||
      StartsWith(name, "headline_")) {
    return FeatureGroup::kTitle;
  }
  if (StartsWith(name, "position-") || StartsWith(name, "spread_") ||
      StartsWith(name, "bucketed-freq_") || StartsWith(name, "1st-loc_")) {
    return FeatureGroup::kPosition;
  }
  if (StartsWith(name, "textrank-")) return FeatureGroup::kSyntactic;
  for (DepRelation rel : kFeatureRelations) {
    std::string prefix(RelationName(rel));
    prefix += '-';
    if (StartsWith(name, prefix)) return FeatureGroup::kSyntactic;
  }
  if (StartsWith(name, "comm-") || StartsWith(name, "rho-")) {
    return FeatureGroup::kAnnotation;
  }
  if (name == "google-centrality") return FeatureGroup::kRelatedness;
  if (Contains(name, "-vec_") || Contains(name, "-cos-title") ||
      Contains(name, "-cos-headline") || Contains(name, "-title-")) {
    return FeatureGroup::kW2v;
  }
  if (Contains(name, "-rel-")) return FeatureGroup::kRelatedness;
  for (Centrality c : kAllCentralities) {
    std::string suffix = "-";
    suffix += CentralityName(c);
    if (name.size() > suffix.size() &&
        name.substr(name.size() - suffix.size()) == suffix) {
      return FeatureGroup::kRelatedness;
    }
  }
  throw ValidationError("feature name '" + std::string(name) +
                        "' matches no feature group");
}

// ---------------------------------------------------------------------------
// Shared helpers

Stats6 ComputeStats6(std::span<const double> values) {
  Stats6 s;
  const size_t n = values.size();
  if (n == 0) return s;
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  s.min = sorted.front();
  s.max = sorted.back();
  double sum = 0.0;
  for (double v : sorted) sum += v;
  s.mean = sum / static_cast<double>(n);
  s.median = n % 2 == 1 ? sorted[n / 2]
                        : (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;
  double sq = 0.0;
  for (double v : sorted) sq += (v - s.mean) * (v - s.mean);
  s.std = std::sqrt(sq / static_cast<double>(n));
  if (s.min > 0.0) {
    double inv = 0.0;
    for (double v : sorted) inv += 1.0 / v;
    s.harmonic_mean = static_cast<double>(n) / inv;
  }
  return s;
}

Positions PositionsOf(const EnrichedDocument& doc,
                      std::span<const Annotation* const> mentions) {
  Positions p;
  const double n_sentences = static_cast<double>(doc.sentences.size());
  const double n_tokens = static_cast<double>(doc.tokens.size());
  for (const Annotation* a : mentions) {
    p.sentence.push_back((a->sentence_index + 1) / n_sentences);
    p.token.push_back((a->first_token + 1) / n_tokens);
  }
  return p;
}

namespace {

std::vector<const Annotation*> RequireMentions(const EnrichedDocument& doc,
                                               EntityId entity) {
  auto mentions = doc.mentions_of(entity);
  if (mentions.empty()) {
    throw ValidationError("entity " + std::to_string(entity) +
                          " is not annotated in document '" + doc.doc_id + "'");
  }
  return mentions;
}

}  // namespace

Positions NormalizedPositions(const EnrichedDocument& doc, EntityId entity) {
  return PositionsOf(doc, RequireMentions(doc, entity));
}

std::vector<double> Bucketize(std::span<const double> positions, int buckets) {
  if (buckets < 1) throw ValidationError("bucket count must be positive");
  std::vector<double> counts(buckets, 0.0);
  for (double p : positions) {
    int b = static_cast<int>(std::floor(p * buckets + 1e-9));
    counts[std::clamp(b, 0, buckets - 1)] += 1.0;
  }
  return counts;
}

int FirstLocIndex(int sentence_index) {
  const double v = std::log(10.0 * (static_cast<double>(sentence_index) + 1.0));
  return std::min(9, static_cast<int>(std::floor(v)));
}

std::vector<double> FirstLoc(const EnrichedDocument& doc, EntityId entity) {
  const auto mentions = RequireMentions(doc, entity);
  int first = mentions.front()->sentence_index;
  for (const Annotation* a : mentions) first = std::min(first, a->sentence_index);
  std::vector<double> out(10, 0.0);
  out[FirstLocIndex(first)] = 1.0;
  return out;
}

double HashCategorical(std::string_view value) {
  // h / 2^64, truncated to 53 bits.
  return std::ldexp(static_cast<double>(Fnv1a64(value) >> 11), -53);
}

double HashCategorical(int64_t value) {
  return HashCategorical(std::string_view(std::to_string(value)));
}

int CoarseTagIndex(std::string_view pos) {
  auto index = [](std::string_view tag) {
    for (size_t i = 0; i < kCoarseTags.size(); ++i) {
      if (kCoarseTags[i] == tag) return static_cast<int>(i);
    }
    return static_cast<int>(kCoarseTags.size() - 1);
  };
  if (pos.empty()) return index("OTHER");
  if (pos == "NNP" || pos == "NNPS") return index("NNP");
  if (StartsWith(pos, "NN")) return index("NN");
  if (StartsWith(pos, "VB")) return index("VB");
  if (StartsWith(pos, "JJ")) return index("JJ");
  if (StartsWith(pos, "RB")) return index("RB");
  if (pos == "CD") return index("CD");
  if (StartsWith(pos, "PR") || pos == "WP" || pos == "WP$") return index("PR");
  if (pos == "DT" || pos == "PDT" || pos == "WDT") return index("DT");
  if (pos == "IN" || pos == "TO") return index("IN");
  if (pos == "CC") return index("CC");
  if (pos == "PUNCT" || IsPunctuationToken(pos) || pos == "-LRB-" ||
      pos == "-RRB-" || pos == "``" || pos == "''") {
    return index("PUNCT");
  }
  return index("OTHER");
}

void FeatureValues::Add(std::string name, FeatureGroup group, double value) {
  specs_.push_back({std::move(name), group});
  values_.push_back(value);
}

void FeatureValues::AddStats6(const std::string& prefix,
                              const std::string& suffix, FeatureGroup group,
                              const Stats6& stats) {
  const auto values = stats.values();
  for (size_t i = 0; i < values.size(); ++i) {
    Add(prefix + std::string(kStats6Names[i]) + suffix, group, values[i]);
  }
}

void FeatureValues::AddSeries(const std::string& prefix, FeatureGroup group,
                              std::span<const double> values) {
  for (size_t i = 0; i < values.size(); ++i) {
    Add(prefix + std::to_string(i), group, values[i]);
  }
}

void FeatureValues::Append(const FeatureValues& other) {
  specs_.insert(specs_.end(), other.specs_.begin(), other.specs_.end());
  values_.insert(values_.end(), other.values_.begin(), other.values_.end());
}

double FeatureValues::Get(std::string_view name) const {
  for (size_t i = 0; i < specs_.size(); ++i) {
    if (specs_[i].name == name) return values_[i];
  }
  throw ValidationError("no feature named '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Standard features

namespace {

double Spread(const std::vector<double>& positions) {
  if (positions.empty()) return 0.0;
  auto [lo, hi] = std::minmax_element(positions.begin(), positions.end());
  return *hi - *lo;
}

// At least one letter and no lower-case letters.
bool IsUpperCaseSurface(std::string_view surface) {
  bool any_letter = false;
  for (char c : surface) {
    if (c >= 'a' && c <= 'z') return false;
    if (c >= 'A' && c <= 'Z') any_letter = true;
  }
  return any_letter;
}

}  // namespace

FeatureValues StandardFeatures(const EnrichedDocument& doc, EntityId entity,
                               const IdfTable& idf) {
  const auto mentions = RequireMentions(doc, entity);
  const Positions pos = PositionsOf(doc, mentions);
  FeatureValues out;

  const double ef = static_cast<double>(mentions.size());
  const double idf_value =
      std::log((static_cast<double>(idf.n_docs) + 1.0) /
               (static_cast<double>(idf.df_of(entity)) + 1.0)) +
      1.0;
  out.Add("ef", FeatureGroup::kFrequency, ef);
  out.Add("idf", FeatureGroup::kFrequency, idf_value);
  out.Add("ef-idf", FeatureGroup::kFrequency, ef * idf_value);

  out.AddStats6("position-", "_s", FeatureGroup::kPosition,
                ComputeStats6(pos.sentence));
  out.AddStats6("position-", "_t", FeatureGroup::kPosition,
                ComputeStats6(pos.token));
  out.Add("spread_s", FeatureGroup::kPosition, Spread(pos.sentence));
  out.Add("spread_t", FeatureGroup::kPosition, Spread(pos.token));
  out.AddSeries("bucketed-freq_s_", FeatureGroup::kPosition,
                Bucketize(pos.sentence));
  out.AddSeries("bucketed-freq_t_", FeatureGroup::kPosition,
                Bucketize(pos.token));
  out.AddSeries("1st-loc_", FeatureGroup::kPosition, FirstLoc(doc, entity));

  const std::string title = AsciiLower(doc.title);
  bool mention_in_title = false;
  bool upper = false;
  for (const Annotation* a : mentions) {
    const std::string_view surface = doc.mention_text(*a);
    if (title.find(AsciiLower(surface)) != std::string::npos) {
      mention_in_title = true;
    }
    upper = upper || IsUpperCaseSurface(surface);
  }
  const bool entity_in_title =
      std::any_of(doc.title_annotations.begin(), doc.title_annotations.end(),
                  [&](const Annotation& a) { return a.entity == entity; });
  out.Add("mention-title", FeatureGroup::kTitle, mention_in_title ? 1.0 : 0.0);
  out.Add("entity-title", FeatureGroup::kTitle, entity_in_title ? 1.0 : 0.0);
  out.Add("is-upper", FeatureGroup::kMisc, upper ? 1.0 : 0.0);
  return out;
}

// ---------------------------------------------------------------------------
// Syntactic features

int MentionHeadToken(const EnrichedDocument& doc, const Annotation& mention) {
  const int first = mention.first_token;
  const int last = doc.last_token(mention);
  for (int t = first; t <= last; ++t) {
    for (const DependencyEdge& edge : doc.dependency_edges) {
      if (edge.dependent == t && (edge.head < first || edge.head > last)) {
        return t;
      }
    }
  }
  return first;
}

namespace {

bool IsDependentOf(const EnrichedDocument& doc, int token, DepRelation rel) {
  for (const DependencyEdge& edge : doc.dependency_edges) {
    if (edge.dependent == token && ClassifyRelation(edge.relation) == rel) {
      return true;
    }
  }
  return false;
}

// TextRank scores of the distinct sentences holding the mentions.
std::vector<double> SentenceScoresOf(
    std::span<const Annotation* const> mentions,
    const SentenceScores& textrank) {
  std::set<int> sentences;
  for (const Annotation* a : mentions) sentences.insert(a->sentence_index);
  std::vector<double> out;
  for (int s : sentences) {
    if (s >= 0 && s < static_cast<int>(textrank.size())) {
      out.push_back(textrank[s]);
    }
  }
  return out;
}

std::set<std::string> LowerWordSet(std::string_view text) {
  std::set<std::string> words;
  for (const Token& t : Tokenize(text).tokens) words.insert(AsciiLower(t.surface));
  return words;
}

}  // namespace

FeatureValues SyntacticFeatures(const EnrichedDocument& doc, EntityId entity,
                                const SentenceScores& textrank) {
  const auto mentions = RequireMentions(doc, entity);
  FeatureValues out;

  const std::string head_word =
      AsciiLower(doc.tokens[MentionHeadToken(doc, *mentions.front())].surface);
  double head_count = 0.0;
  for (const Token& t : doc.tokens) {
    if (AsciiLower(t.surface) == head_word) head_count += 1.0;
  }
  out.Add("head-count", FeatureGroup::kFrequency, head_count);

  double coref_spans = 0.0;
  for (const CorefChain& chain : doc.coref_chains) {
    for (const CorefMention& span : chain.mentions) {
      for (const Annotation* a : mentions) {
        if (span.first_token <= doc.last_token(*a) &&
            a->first_token <= span.last_token) {
          coref_spans += 1.0;
          break;
        }
      }
    }
  }
  out.Add("mentions", FeatureGroup::kFrequency,
          static_cast<double>(mentions.size()) + coref_spans);

  const std::set<std::string> headline_words = LowerWordSet(doc.headline_text());
  std::vector<double> tag_counts(kCoarseTags.size(), 0.0);
  for (const Annotation* a : mentions) {
    for (int t = a->first_token; t <= doc.last_token(*a); ++t) {
      if (headline_words.count(AsciiLower(doc.tokens[t].surface))) {
        tag_counts[CoarseTagIndex(doc.tokens[t].pos)] += 1.0;
      }
    }
  }
  for (size_t i = 0; i < kCoarseTags.size(); ++i) {
    out.Add("headline_" + std::string(kCoarseTags[i]), FeatureGroup::kTitle,
            tag_counts[i]);
  }
  out.Add("head-lex", FeatureGroup::kMisc, HashCategorical(head_word));

  out.AddStats6("textrank-", "", FeatureGroup::kSyntactic,
                ComputeStats6(SentenceScoresOf(mentions, textrank)));

  for (DepRelation rel : kFeatureRelations) {
    std::vector<const Annotation*> restricted;
    for (const Annotation* a : mentions) {
      if (IsDependentOf(doc, MentionHeadToken(doc, *a), rel)) {
        restricted.push_back(a);
      }
    }
    const Positions pos = PositionsOf(doc, restricted);
    const std::string prefix = std::string(RelationName(rel)) + "-";
    out.Add(prefix + "freq", FeatureGroup::kSyntactic,
            static_cast<double>(restricted.size()));
    out.AddSeries(prefix + "bucketed-freq_s_", FeatureGroup::kSyntactic,
                  Bucketize(pos.sentence));
    out.AddSeries(prefix + "bucketed-freq_t_", FeatureGroup::kSyntactic,
                  Bucketize(pos.token));
    out.AddStats6(prefix + "position-", "_s", FeatureGroup::kSyntactic,
                  ComputeStats6(pos.sentence));
    out.AddStats6(prefix + "position-", "_t", FeatureGroup::kSyntactic,
                  ComputeStats6(pos.token));
    out.AddStats6(prefix + "textrank-", "", FeatureGroup::kSyntactic,
                  ComputeStats6(SentenceScoresOf(restricted, textrank)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Semantic features

std::string FamilyPrefix(Weighting weighting) {
  std::string name(WeightingName(weighting));
  std::replace(name.begin(), name.end(), '_', '-');
  return name;
}

std::string FamilyPrefix(EmbeddingKind kind) {
  std::string name(EmbeddingKindName(kind));
  std::replace(name.begin(), name.end(), '_', '-');
  return name;
}

RelatednessFamily RelatednessFamily::Compute(const EnrichedDocument& doc,
                                             Weighting weighting,
                                             const KnowledgeBase* kb,
                                             const EmbeddingSet* embeddings) {
  RelatednessFamily family;
  family.weighting = weighting;
  family.graph = BuildGraph(doc, weighting, kb, embeddings);
  if (family.graph.nodes.empty()) return family;
  for (Centrality c : kAllCentralities) {
    family.centralities[c] = ComputeCentrality(family.graph.weights, c);
  }
  return family;
}

namespace {

// First-mention (sentence, token) buckets of each graph node.
std::vector<std::pair<int, int>> FirstMentionBuckets(
    const EnrichedDocument& doc, const std::vector<EntityId>& nodes) {
  std::vector<std::pair<int, int>> out;
  out.reserve(nodes.size());
  for (EntityId node : nodes) {
    const auto mentions = doc.mentions_of(node);
    const Annotation* first = mentions.front();
    const Annotation* one[] = {first};
    const Positions p = PositionsOf(doc, one);
    const auto bs = Bucketize(p.sentence);
    const auto bt = Bucketize(p.token);
    out.emplace_back(
        static_cast<int>(std::find(bs.begin(), bs.end(), 1.0) - bs.begin()),
        static_cast<int>(std::find(bt.begin(), bt.end(), 1.0) - bt.begin()));
  }
  return out;
}

}  // namespace

FeatureValues SemanticFeatures(
    const EnrichedDocument& doc, EntityId entity,
    std::span<const RelatednessFamily> families,
    const std::map<EntityId, double>& google_centrality) {
  const auto mentions = RequireMentions(doc, entity);
  FeatureValues out;

  std::vector<double> commonness, rho;
  for (const Annotation* a : mentions) {
    commonness.push_back(a->commonness);
    rho.push_back(a->rho);
  }
  out.AddStats6("comm-", "", FeatureGroup::kAnnotation,
                ComputeStats6(commonness));
  out.AddStats6("rho-", "", FeatureGroup::kAnnotation, ComputeStats6(rho));

  for (const RelatednessFamily& family : families) {
    const std::string prefix = FamilyPrefix(family.weighting) + "-";
    const EntityGraph& graph = family.graph;
    const int self = graph.index_of(entity);
    std::vector<double> weights;
    std::vector<std::vector<double>> by_sentence(kBuckets), by_token(kBuckets);
    if (self >= 0) {
      const auto buckets = FirstMentionBuckets(doc, graph.nodes);
      for (size_t j = 0; j < graph.nodes.size(); ++j) {
        if (static_cast<int>(j) == self) continue;
        const double w = graph.weights(self, j);
        weights.push_back(w);
        by_sentence[buckets[j].first].push_back(w);
        by_token[buckets[j].second].push_back(w);
      }
    }
    out.AddStats6(prefix + "rel-", "", FeatureGroup::kRelatedness,
                  ComputeStats6(weights));
    for (int b = 0; b < kBuckets; ++b) {
      out.AddStats6(prefix + "rel-bucketed_s_" + std::to_string(b) + "-", "",
                    FeatureGroup::kRelatedness, ComputeStats6(by_sentence[b]));
    }
    for (int b = 0; b < kBuckets; ++b) {
      out.AddStats6(prefix + "rel-bucketed_t_" + std::to_string(b) + "-", "",
                    FeatureGroup::kRelatedness, ComputeStats6(by_token[b]));
    }
    for (Centrality c : kAllCentralities) {
      double value = 0.0;
      auto it = family.centralities.find(c);
      if (self >= 0 && it != family.centralities.end()) value = it->second[self];
      out.Add(prefix + std::string(CentralityName(c)),
              FeatureGroup::kRelatedness, value);
    }
  }

  auto google = google_centrality.find(entity);
  out.Add("google-centrality", FeatureGroup::kRelatedness,
          google == google_centrality.end() ? 0.0 : google->second);
  out.Add("wiki-id", FeatureGroup::kMisc, HashCategorical(entity));
  return out;
}

// ---------------------------------------------------------------------------
// Embedding features

namespace {

std::vector<double> MeanVector(std::span<const std::vector<double>* const> vs,
                               int dimension) {
  std::vector<double> mean(dimension, 0.0);
  if (vs.empty()) return mean;
  for (const auto* v : vs) {
    for (int i = 0; i < dimension; ++i) mean[i] += (*v)[i];
  }
  for (double& x : mean) x /= static_cast<double>(vs.size());
  return mean;
}

std::vector<EntityId> TitleEntities(const EnrichedDocument& doc) {
  std::vector<EntityId> ids;
  for (const Annotation& a : doc.title_annotations) ids.push_back(a.entity);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

// Entities standing in for a headline that differs from the title: content
// entities with a mention whose text occurs in the headline.
std::vector<EntityId> HeadlineEntities(const EnrichedDocument& doc) {
  if (!doc.headline) return TitleEntities(doc);
  const std::string headline = AsciiLower(*doc.headline);
  std::vector<EntityId> ids;
  for (const Annotation& a : doc.annotations) {
    if (headline.find(AsciiLower(doc.mention_text(a))) != std::string::npos) {
      ids.push_back(a.entity);
    }
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

std::vector<double> FieldVector(const EmbeddingTable* table, EmbeddingKind kind,
                                int dimension, std::string_view text,
                                const std::vector<EntityId>& entities) {
  std::vector<const std::vector<double>*> found;
  if (table != nullptr) {
    if (HasWordVectors(kind)) {
      for (const Token& t : Tokenize(text).tokens) {
        if (IsPunctuationToken(t.surface)) continue;
        if (const auto* v = table->word(AsciiLower(t.surface))) found.push_back(v);
      }
    } else {
      for (EntityId id : entities) {
        if (const auto* v = table->entity(id)) found.push_back(v);
      }
    }
  }
  return MeanVector(found, dimension);
}

}  // namespace

FeatureValues W2vFeatures(const EnrichedDocument& doc, EntityId entity,
                          const EmbeddingSet& embeddings,
                          const W2vLayout& layout) {
  RequireMentions(doc, entity);
  FeatureValues out;
  const auto title_entities = TitleEntities(doc);
  for (const auto& [kind, dimension] : layout) {
    const EmbeddingTable* table = embeddings.find(kind);
    if (table != nullptr && table->dimension != dimension) {
      throw ValidationError("embedding table " +
                            std::string(EmbeddingKindName(kind)) +
                            " has dimension " +
                            std::to_string(table->dimension) + ", schema has " +
                            std::to_string(dimension));
    }
    const std::string prefix = FamilyPrefix(kind) + "-";
    const std::vector<double> zeros(dimension, 0.0);
    const std::vector<double>* own =
        table != nullptr ? table->entity(entity) : nullptr;
    const std::vector<double>& vec = own != nullptr ? *own : zeros;
    out.AddSeries(prefix + "vec_", FeatureGroup::kW2v, vec);

    std::vector<double> cosines;
    for (EntityId t : title_entities) {
      const std::vector<double>* other =
          table != nullptr ? table->entity(t) : nullptr;
      cosines.push_back(Cosine(vec, other != nullptr ? *other : zeros));
    }
    out.AddStats6(prefix + "title-", "", FeatureGroup::kW2v,
                  ComputeStats6(cosines));

    const auto title_vec =
        FieldVector(table, kind, dimension, doc.title, title_entities);
    const auto headline_vec = FieldVector(table, kind, dimension,
                                          doc.headline_text(),
                                          HeadlineEntities(doc));
    out.Add(prefix + "cos-title", FeatureGroup::kW2v, Cosine(vec, title_vec));
    out.Add(prefix + "cos-headline", FeatureGroup::kW2v,
            Cosine(vec, headline_vec));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Assembly

namespace {

FeatureValues EmitAll(const EnrichedDocument& doc, EntityId entity,
                      const IdfTable& idf, const SentenceScores& textrank,
                      std::span<const RelatednessFamily> families,
                      const std::map<EntityId, double>& google,
                      const EmbeddingSet& embeddings, const FeaturePlan& plan) {
  FeatureValues out = StandardFeatures(doc, entity, idf);
  out.Append(SyntacticFeatures(doc, entity, textrank));
  out.Append(SemanticFeatures(doc, entity, families, google));
  if (plan.config.w2v_enabled) {
    out.Append(W2vFeatures(doc, entity, embeddings, plan.w2v_layout));
  }
  return out;
}

}  // namespace

FeaturePlan PlanFeatures(const FeatureConfig& config,
                         const EmbeddingSet& embeddings) {
  FeaturePlan plan;
  plan.config = config;
  if (config.w2v_enabled) {
    for (EmbeddingKind kind : config.w2v) {
      if (const EmbeddingTable* table = embeddings.find(kind)) {
        plan.w2v_layout.emplace_back(kind, table->dimension);
      }
    }
  }
  // The schema is the name sequence emitted for a one-entity probe document.
  EnrichedDocument probe;
  probe.doc_id = "probe";
  probe.content = "x";
  probe.tokens.push_back({"x", "NN", 0, 1, 0, 0});
  probe.sentences.push_back({0, 1});
  probe.annotations.push_back({0, 1, 0, 0, 0, 1.0, 0.0});
  std::vector<RelatednessFamily> families;
  for (Weighting w : config.relatedness) {
    families.push_back(RelatednessFamily::Compute(probe, w, nullptr, nullptr));
  }
  const FeatureValues values =
      EmitAll(probe, 0, IdfTable{}, SentenceScores{1.0}, families, {},
              EmbeddingSet{}, plan);
  plan.schema = FeatureSchema(values.specs());
  return plan;
}

DocumentFeaturizer::DocumentFeaturizer(const EnrichedDocument& doc,
                                       const FeatureContext& context,
                                       const FeaturePlan& plan)
    : doc_(doc), context_(context), plan_(plan) {
  if (context_.idf == nullptr) context_.idf = &empty_idf_;
  if (context_.embeddings == nullptr) context_.embeddings = &empty_embeddings_;
  if (!doc_.sentences.empty()) textrank_ = TextRank(doc_);
  for (Weighting w : plan_.config.relatedness) {
    families_.push_back(RelatednessFamily::Compute(doc_, w, context_.kb,
                                                   context_.embeddings));
  }
  google_ = GoogleCentrality(
      doc_, context_.cooccurrence != nullptr ? *context_.cooccurrence
                                             : CooccurrenceModel{});
}

FeatureVector DocumentFeaturizer::Assemble(EntityId entity) const {
  FeatureValues values =
      EmitAll(doc_, entity, *context_.idf, textrank_, families_, google_,
              *context_.embeddings, plan_);
  if (values.specs() != plan_.schema.features()) {
    throw ValidationError("feature schema mismatch for document '" +
                          doc_.doc_id + "'");
  }
  for (double v : values.values()) {
    if (!std::isfinite(v)) {
      throw ValidationError("non-finite feature value in document '" +
                            doc_.doc_id + "'");
    }
  }
  return {doc_.doc_id, entity, values.values()};
}

std::vector<FeatureVector> DocumentFeaturizer::AssembleAll() const {
  std::vector<FeatureVector> out;
  for (EntityId e : doc_.entities()) out.push_back(Assemble(e));
  return out;
}

FeatureVector Assemble(const EnrichedDocument& doc, EntityId entity,
                       const FeatureContext& context, const FeaturePlan& plan) {
  return DocumentFeaturizer(doc, context, plan).Assemble(entity);
}

}  // namespace salience
