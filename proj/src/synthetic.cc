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

#include "salience/synthetic.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <numbers>
#include <set>

#include "salience/enricher.h"
#include "salience/graph.h"
#include "salience/semantics.h"
#include "salience/util.h"

namespace salience {
namespace {

constexpr const char* kSyllables[] = {
    "ka", "ro", "vel", "min", "tar", "lo", "sen", "dri", "mo", "pa",
    "zen", "ti", "bar", "nu", "qui", "fel", "os", "ra", "len", "dor",
    "ma", "shi", "ven", "ko", "lu", "gar", "ne", "ri", "sol", "bek"};

constexpr const char* kTwoSlot[] = {
    "{0} met {1} in the capital.",
    "{0} praised the work of {1}.",
    "The talented {0} joined {1} on the tour.",
    "{0} said it would support {1}.",
};

constexpr const char* kOneSlot[] = {
    "Reports about {0} spread quickly.",
    "{0} said it would continue the project.",
    "The board of {0} approved a new plan.",
    "In the region, {0} opened an office.",
    "The talented {0} arrived early.",
};

constexpr const char* kFiller[] = {
    "Officials described the situation as stable.",
    "The weather remained calm during the week.",
    "Analysts expect further changes next year.",
    "Several residents attended the meeting.",
};

constexpr const char* kEntityTitle[] = {"{0} in the news", "Spotlight on {0}"};
constexpr const char* kPlainTitle[] = {"Weekly regional report",
                                       "Notes from the week"};

constexpr EntityId kFirstEntityId = 1000;
constexpr EntityId kFirstPageId = 500000;

struct SynthEntity {
  EntityId id = 0;
  int topic = 0;
  bool hub = false;
  std::string name;
  std::string alias;  // empty when none
};

template <typename T, size_t N>
const T& Pick(Rng& rng, const T (&items)[N]) {
  return items[rng.Index(N)];
}

template <typename T>
const T& Pick(Rng& rng, const std::vector<T>& items) {
  return items[rng.Index(items.size())];
}

template <typename T>
std::vector<T> Sample(Rng& rng, std::vector<T> items, size_t n) {
  rng.Shuffle(items);
  items.resize(std::min(n, items.size()));
  return items;
}

int UniformInt(Rng& rng, int lo, int hi) {
  return lo + static_cast<int>(rng.Index(static_cast<uint64_t>(hi - lo + 1)));
}

double Gaussian(Rng& rng) {
  const double u1 = 1.0 - rng.Uniform();
  const double u2 = rng.Uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<double> GaussianVector(Rng& rng, int dimension, double sigma) {
  std::vector<double> v(dimension);
  for (double& x : v) x = sigma * Gaussian(rng);
  return v;
}

std::vector<double> Around(Rng& rng, const std::vector<double>& center,
                           double sigma) {
  std::vector<double> v = center;
  for (double& x : v) x += sigma * Gaussian(rng);
  return v;
}

std::string Capitalized(std::string word) {
  if (!word.empty()) word[0] = static_cast<char>(word[0] - 'a' + 'A');
  return word;
}

std::string Fill(std::string_view pattern, const std::vector<std::string>& args) {
  std::string out;
  for (size_t i = 0; i < pattern.size(); ++i) {
    if (pattern[i] == '{' && i + 2 < pattern.size() && pattern[i + 2] == '}') {
      out += args.at(pattern[i + 1] - '0');
      i += 2;
    } else {
      out += pattern[i];
    }
  }
  return out;
}

std::set<std::string> FillerVocabulary() {
  std::set<std::string> words;
  auto add = [&](std::string_view text) {
    for (const Token& t : Tokenize(text).tokens) {
      if (!IsPunctuationToken(t.surface) && t.surface[0] != '{') {
        words.insert(AsciiLower(t.surface));
      }
    }
  };
  for (const char* s : kTwoSlot) add(s);
  for (const char* s : kOneSlot) add(s);
  for (const char* s : kFiller) add(s);
  for (const char* s : kEntityTitle) add(s);
  for (const char* s : kPlainTitle) add(s);
  return words;
}

class Generator {
 public:
  explicit Generator(const SyntheticOptions& options)
      : options_(options), rng_(options.seed) {}

  SyntheticData Run() {
    SyntheticData data;
    BuildCatalog(data);
    BuildEmbeddings(data);
    for (int d = 0; d < options_.docs; ++d) {
      data.corpus.push_back(MakeDocument(data.kb, d));
    }
    return data;
  }

 private:
  std::string FreshWord(std::set<std::string>& used) {
    while (true) {
      std::string word;
      const int n = UniformInt(rng_, 2, 3);
      for (int i = 0; i < n; ++i) word += Pick(rng_, kSyllables);
      if (used.insert(word).second) return word;
    }
  }

  void BuildCatalog(SyntheticData& data) {
    std::set<std::string> used = FillerVocabulary();
    std::vector<KbEntity> catalog;

    // Link-source pages, one pool per topic.
    std::vector<std::vector<EntityId>> pools(options_.topics);
    std::vector<EntityId> all_pages;
    EntityId page_id = kFirstPageId;
    for (int t = 0; t < options_.topics; ++t) {
      for (int p = 0; p < options_.pages_per_topic; ++p) {
        KbEntity page;
        page.id = page_id++;
        page.title = "Page " + std::to_string(page.id);
        pools[t].push_back(page.id);
        all_pages.push_back(page.id);
        catalog.push_back(std::move(page));
      }
    }

    EntityId next_id = kFirstEntityId;
    topic_hubs_.assign(options_.topics, {});
    topic_regulars_.assign(options_.topics, {});
    for (int t = 0; t < options_.topics; ++t) {
      const int count = options_.hubs_per_topic + options_.regulars_per_topic;
      for (int i = 0; i < count; ++i) {
        SynthEntity e;
        e.id = next_id++;
        e.topic = t;
        e.hub = i < options_.hubs_per_topic;
        const std::string first = FreshWord(used);
        const std::string last = FreshWord(used);
        e.name = Capitalized(first) + " " + Capitalized(last);
        if (!e.hub && rng_.Bernoulli(0.15)) e.alias = Capitalized(last);

        KbEntity kb_entity;
        kb_entity.id = e.id;
        kb_entity.title = e.name;
        kb_entity.anchors[e.name] = {{e.id, 10.0 + rng_.Index(20)}};
        if (e.hub) {
          kb_entity.in_links = Sample(rng_, pools[t], 20);
        } else {
          kb_entity.in_links = Sample(rng_, pools[t], 4);
          for (EntityId p : Sample(rng_, all_pages, 6)) {
            kb_entity.in_links.push_back(p);
          }
        }
        (e.hub ? topic_hubs_ : topic_regulars_)[t].push_back(entities_.size());
        entities_.push_back(e);
        catalog.push_back(std::move(kb_entity));
      }
    }

    // Aliases are ambiguous with one entity of another topic.
    std::map<EntityId, size_t> catalog_index;
    for (size_t i = 0; i < catalog.size(); ++i) catalog_index[catalog[i].id] = i;
    for (const SynthEntity& e : entities_) {
      if (e.alias.empty()) continue;
      const int other_topic =
          (e.topic + 1 + static_cast<int>(rng_.Index(options_.topics - 1))) %
          options_.topics;
      const SynthEntity& other =
          entities_[Pick(rng_, topic_regulars_[other_topic])];
      catalog[catalog_index[e.id]].anchors[e.alias] = {
          {e.id, 7.0 + rng_.Index(4)}, {other.id, 1.0 + rng_.Index(3)}};
    }
    data.kb = KnowledgeBase::Build(std::move(catalog));
  }

  void BuildEmbeddings(SyntheticData& data) {
    const int dim = options_.dimension;
    for (EmbeddingKind kind : {EmbeddingKind::kE2vSg, EmbeddingKind::kDwCbow}) {
      EmbeddingTable table;
      table.kind = kind;
      table.dimension = dim;
      std::vector<std::vector<double>> centroids;
      for (int t = 0; t < options_.topics; ++t) {
        centroids.push_back(GaussianVector(rng_, dim, 1.0));
      }
      for (const SynthEntity& e : entities_) {
        table.entity_vectors[e.id] =
            Around(rng_, centroids[e.topic], e.hub ? 0.3 : 0.6);
      }
      if (HasWordVectors(kind)) {
        for (const std::string& w : FillerVocabulary()) {
          table.word_vectors[w] = GaussianVector(rng_, dim, 1.0);
        }
        for (const SynthEntity& e : entities_) {
          for (const Token& t : Tokenize(e.name).tokens) {
            table.word_vectors[AsciiLower(t.surface)] =
                Around(rng_, table.entity_vectors[e.id], 0.2);
          }
        }
      }
      data.embeddings.push_back(std::move(table));
    }
  }

  std::string Surface(const SynthEntity& e, bool first_use) {
    if (!first_use && !e.alias.empty() && rng_.Bernoulli(0.4)) return e.alias;
    return e.name;
  }

  EnrichedDocument MakeDocument(const KnowledgeBase& kb, int index) {
    const int topic = static_cast<int>(rng_.Index(options_.topics));
    std::vector<size_t> cast;  // indices into entities_
    for (size_t i : Sample(rng_, topic_hubs_[topic], 2)) cast.push_back(i);
    for (size_t i :
         Sample(rng_, topic_regulars_[topic], UniformInt(rng_, 3, 5))) {
      cast.push_back(i);
    }
    const int n_noise = UniformInt(rng_, 1, 2);
    for (int k = 0; k < n_noise; ++k) {
      int other = static_cast<int>(rng_.Index(options_.topics));
      if (other == topic) other = (other + 1) % options_.topics;
      const size_t pick = Pick(rng_, topic_regulars_[other]);
      if (std::find(cast.begin(), cast.end(), pick) == cast.end()) {
        cast.push_back(pick);
      }
    }

    std::set<size_t> used_names;
    auto surface = [&](size_t i) {
      const bool first = used_names.insert(i).second;
      return Surface(entities_[i], first);
    };

    // First sentence.
    std::vector<size_t> opening = Sample(rng_, cast, UniformInt(rng_, 1, 2));
    std::vector<std::string> sentences;
    if (opening.size() == 2) {
      const std::string a = surface(opening[0]);
      const std::string b = surface(opening[1]);
      sentences.push_back(Fill(Pick(rng_, kTwoSlot), {a, b}));
    } else {
      sentences.push_back(Fill(Pick(rng_, kOneSlot), {surface(opening[0])}));
    }

    // Remaining mentions, at least one per entity outside the opening.
    std::vector<size_t> mentions;
    for (size_t i : cast) {
      const bool opened =
          std::find(opening.begin(), opening.end(), i) != opening.end();
      int n = entities_[i].hub ? UniformInt(rng_, 2, 3) : UniformInt(rng_, 1, 2);
      if (opened) n -= 1;
      for (int k = 0; k < n; ++k) mentions.push_back(i);
    }
    rng_.Shuffle(mentions);
    std::vector<std::string> body;
    for (size_t k = 0; k < mentions.size();) {
      const bool pair = k + 1 < mentions.size() &&
                        mentions[k] != mentions[k + 1] && rng_.Bernoulli(0.6);
      if (pair) {
        const std::string a = surface(mentions[k]);
        const std::string b = surface(mentions[k + 1]);
        body.push_back(Fill(Pick(rng_, kTwoSlot), {a, b}));
        k += 2;
      } else {
        body.push_back(Fill(Pick(rng_, kOneSlot), {surface(mentions[k])}));
        k += 1;
      }
    }
    const int target = UniformInt(rng_, 7, 12);
    while (static_cast<int>(body.size()) + 1 < target) {
      const size_t at = rng_.Index(body.size() + 1);
      body.insert(body.begin() + at, Pick(rng_, kFiller));
    }
    for (auto& s : body) sentences.push_back(std::move(s));

    std::string content;
    for (const auto& s : sentences) {
      if (!content.empty()) content += ' ';
      content += s;
    }

    std::string title;
    const double r = rng_.Uniform();
    if (r < 0.45) {
      title = Fill(Pick(rng_, kEntityTitle), {entities_[cast[rng_.Index(2)]].name});
    } else if (r < 0.75) {
      title = Fill(Pick(rng_, kEntityTitle),
                   {entities_[cast[2 + rng_.Index(cast.size() - 2)]].name});
    } else {
      title = Pick(rng_, kPlainTitle);
    }

    char id[32];
    std::snprintf(id, sizeof(id), "doc-%05d", index);
    EnrichedDocument doc = Enrich(title, content, kb, id);
    AddSyntax(doc);
    const auto gold = PlantedGold(doc, kb);
    doc.gold_salient = gold;
    ValidateDocument(doc, &kb);
    return doc;
  }

  // Heuristic dependency edges and pronoun coreference around each mention.
  static void AddSyntax(EnrichedDocument& doc) {
    auto surface = [&](int t) { return AsciiLower(doc.tokens[t].surface); };
    for (const Annotation& a : doc.annotations) {
      const SentenceRange& s = doc.sentences[a.sentence_index];
      const int first = a.first_token;
      const int last = doc.last_token(a);
      if (last > first) doc.dependency_edges.push_back({last, first, "nn"});
      const std::string prev = first > s.begin ? surface(first - 1) : "";
      if (prev == "of" && first - 2 >= s.begin) {
        doc.dependency_edges.push_back({first - 2, last, "poss"});
      } else if (prev == "about") {
        doc.dependency_edges.push_back({first - 1, last, "prep_in"});
      } else if (first == s.begin || prev == ",") {
        if (last + 1 < s.end) {
          doc.dependency_edges.push_back({last + 1, last, "nsubj"});
        }
      } else if (first - 1 >= s.begin) {
        doc.dependency_edges.push_back({first - 1, last, "dobj"});
      }
      if (prev == "talented") {
        doc.dependency_edges.push_back({last, first - 1, "amod"});
      }
      for (int t = last + 1; t < s.end; ++t) {
        if (surface(t) == "it") {
          CorefChain chain;
          chain.mentions.push_back({a.sentence_index, first, last});
          chain.mentions.push_back({a.sentence_index, t, t});
          doc.coref_chains.push_back(std::move(chain));
          break;
        }
      }
    }
  }

  const SyntheticOptions& options_;
  Rng rng_;
  std::vector<SynthEntity> entities_;
  std::vector<std::vector<size_t>> topic_hubs_;
  std::vector<std::vector<size_t>> topic_regulars_;
};

}  // namespace

std::vector<EntityId> PlantedGold(const EnrichedDocument& doc,
                                  const KnowledgeBase& kb) {
  std::set<EntityId> gold;
  for (const Annotation& a : doc.title_annotations) gold.insert(a.entity);
  for (const Annotation& a : doc.annotations) {
    if (a.sentence_index == 0) gold.insert(a.entity);
  }
  const EntityGraph graph = BuildGraph(doc, Weighting::kJaccard, &kb, nullptr);
  if (!graph.nodes.empty()) {
    const auto pr = WeightedPageRank(graph.weights);
    std::vector<size_t> order(graph.nodes.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return pr[a] > pr[b]; });
    for (size_t k = 0; k < std::min<size_t>(2, order.size()); ++k) {
      gold.insert(graph.nodes[order[k]]);
    }
  }
  return {gold.begin(), gold.end()};
}

SyntheticData GenerateSynthetic(const SyntheticOptions& options) {
  if (options.docs < 1 || options.topics < 2 || options.hubs_per_topic < 2 ||
      options.regulars_per_topic < 5 || options.pages_per_topic < 20 ||
      options.dimension < 1) {
    throw ValidationError("synthetic corpus options out of range");
  }
  return Generator(options).Run();
}

void WriteSynthetic(const SyntheticData& data, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir + ": " + ec.message());
  const std::filesystem::path root(dir);
  SaveCorpus(data.corpus, (root / "corpus.jsonl").string());
  SaveKnowledgeBase(data.kb, (root / "kb.jsonl").string());
  for (const EmbeddingTable& table : data.embeddings) {
    SaveEmbeddings(table, (root / (std::string(EmbeddingKindName(table.kind)) +
                                   ".jsonl"))
                              .string());
  }
}

}  // namespace salience
