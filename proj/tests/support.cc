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

#include "support.h"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <iterator>
#include <optional>
#include <set>

#include <unistd.h>

namespace salience::testing {

DocBuilder::DocBuilder(std::string doc_id) { doc_.doc_id = std::move(doc_id); }

DocBuilder& DocBuilder::Title(std::string title) {
  doc_.title = std::move(title);
  return *this;
}

DocBuilder& DocBuilder::Headline(std::string headline) {
  doc_.headline = std::move(headline);
  return *this;
}

DocBuilder& DocBuilder::Sentence(std::string_view text) {
  const int sentence = static_cast<int>(doc_.sentences.size());
  const int begin = token_count();
  size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && text[pos] == ' ') ++pos;
    size_t end = text.find(' ', pos);
    if (end == std::string_view::npos) end = text.size();
    if (end == pos) break;
    const std::string_view word = text.substr(pos, end - pos);
    if (!doc_.content.empty()) doc_.content += ' ';
    Token t;
    t.surface = std::string(word);
    t.pos = HeuristicPos(word);
    t.char_start = static_cast<int64_t>(doc_.content.size());
    doc_.content += word;
    t.char_end = static_cast<int64_t>(doc_.content.size());
    t.sentence_index = sentence;
    t.token_index = token_count();
    doc_.tokens.push_back(std::move(t));
    pos = end;
  }
  if (token_count() > begin) doc_.sentences.push_back({begin, token_count()});
  return *this;
}

DocBuilder& DocBuilder::Text(std::string_view marked) {
  struct Pending {
    EntityId entity;
    double commonness;
    double rho;
    int first;
  };
  std::string plain;
  std::vector<std::pair<Pending, int>> mentions;
  std::optional<Pending> open;
  int index = token_count();
  size_t pos = 0;
  while (pos < marked.size()) {
    size_t end = marked.find(' ', pos);
    if (end == std::string_view::npos) end = marked.size();
    std::string word(marked.substr(pos, end - pos));
    pos = end + 1;
    if (word.empty()) continue;
    if (word.front() == '[') {
      const size_t colon = word.find(':');
      std::vector<double> header;
      std::string spec = word.substr(1, colon - 1);
      size_t start = 0;
      while (start <= spec.size()) {
        size_t comma = spec.find(',', start);
        if (comma == std::string::npos) comma = spec.size();
        header.push_back(std::stod(spec.substr(start, comma - start)));
        start = comma + 1;
      }
      open = Pending{static_cast<EntityId>(header[0]),
                     header.size() > 1 ? header[1] : 1.0,
                     header.size() > 2 ? header[2] : 0.0, index};
      word = word.substr(colon + 1);
    }
    bool close = false;
    if (open && word.back() == ']') {
      word.pop_back();
      close = true;
    }
    if (!plain.empty()) plain += ' ';
    plain += word;
    if (close) {
      mentions.push_back({*open, index - open->first + 1});
      open.reset();
    }
    ++index;
  }
  Sentence(plain);
  for (const auto& [m, length] : mentions) {
    Mention(m.entity, m.first, length, m.commonness, m.rho);
  }
  return *this;
}

DocBuilder& DocBuilder::Pos(int token, std::string pos) {
  doc_.tokens.at(token).pos = std::move(pos);
  return *this;
}

DocBuilder& DocBuilder::Mention(EntityId entity, int first, int length,
                                double commonness, double rho) {
  const Token& a = doc_.tokens.at(first);
  const Token& b = doc_.tokens.at(first + length - 1);
  Annotation ann;
  ann.char_start = a.char_start;
  ann.char_end = b.char_end;
  ann.sentence_index = a.sentence_index;
  ann.first_token = first;
  ann.entity = entity;
  ann.commonness = commonness;
  ann.rho = rho;
  doc_.annotations.push_back(ann);
  return *this;
}

DocBuilder& DocBuilder::TitleMention(EntityId entity, std::string_view text) {
  const size_t at = doc_.title.find(text);
  if (at == std::string::npos) {
    throw ValidationError("title does not contain '" + std::string(text) + "'");
  }
  Annotation ann;
  ann.char_start = static_cast<int64_t>(at);
  ann.char_end = static_cast<int64_t>(at + text.size());
  ann.entity = entity;
  ann.commonness = 1.0;
  doc_.title_annotations.push_back(ann);
  return *this;
}

DocBuilder& DocBuilder::Dep(int head, int dependent, std::string relation) {
  doc_.dependency_edges.push_back({head, dependent, std::move(relation)});
  return *this;
}

DocBuilder& DocBuilder::Coref(std::vector<std::pair<int, int>> spans) {
  CorefChain chain;
  for (const auto& [first, last] : spans) {
    chain.mentions.push_back(
        {doc_.tokens.at(first).sentence_index, first, last});
  }
  doc_.coref_chains.push_back(std::move(chain));
  return *this;
}

DocBuilder& DocBuilder::Gold(std::vector<EntityId> gold) {
  std::sort(gold.begin(), gold.end());
  doc_.gold_salient = std::move(gold);
  return *this;
}

EnrichedDocument DocBuilder::Build() const {
  EnrichedDocument doc = doc_;
  std::stable_sort(doc.annotations.begin(), doc.annotations.end(),
                   [](const Annotation& x, const Annotation& y) {
                     return x.char_start < y.char_start;
                   });
  ValidateDocument(doc);
  return doc;
}

std::string HeuristicPos(std::string_view token) {
  if (IsPunctuationToken(token)) return "PUNCT";
  if (std::all_of(token.begin(), token.end(),
                  [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    return "CD";
  }
  if (std::isupper(static_cast<unsigned char>(token.front()))) return "NNP";
  return "NN";
}

KbEntity Entity(EntityId id, std::string title, std::vector<EntityId> in_links,
                std::vector<std::string> anchors) {
  KbEntity e;
  e.id = id;
  e.title = std::move(title);
  e.in_links = std::move(in_links);
  for (const std::string& anchor : anchors) e.anchors[anchor] = {{id, 1.0}};
  return e;
}

KnowledgeBase MakeKb(std::vector<KbEntity> entities) {
  std::set<EntityId> known;
  for (const KbEntity& e : entities) known.insert(e.id);
  std::set<EntityId> missing;
  for (const KbEntity& e : entities) {
    for (EntityId link : e.in_links) {
      if (!known.count(link)) missing.insert(link);
    }
  }
  for (EntityId id : missing) {
    entities.push_back(Entity(id, "Page " + std::to_string(id), {}));
  }
  return KnowledgeBase::Build(std::move(entities));
}

EnrichedDocument RandomTextDoc(Rng& rng, int max_sentences) {
  static const char* kWords[] = {"river", "bank", "Money", "flows", "the",
                                 "city", "Council", "votes", "water", "a",
                                 "green", "plan", ",", "."};
  DocBuilder b("random");
  const int sentences = 1 + static_cast<int>(rng.Index(max_sentences));
  for (int s = 0; s < sentences; ++s) {
    std::string text;
    const int words = 1 + static_cast<int>(rng.Index(12));
    for (int w = 0; w < words; ++w) {
      if (!text.empty()) text += ' ';
      text += kWords[rng.Index(std::size(kWords))];
    }
    b.Sentence(text);
  }
  return b.Build();
}

std::string TempDir(std::string_view name) {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("salience-test-" + std::to_string(::getpid()) + "-" +
                    std::string(name));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir.string();
}

}  // namespace salience::testing
