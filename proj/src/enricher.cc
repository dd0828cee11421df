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

#include "salience/enricher.h"

#include <algorithm>

#include "salience/semantics.h"

namespace salience {

namespace {

bool IsSentenceTerminator(std::string_view token) {
  return token == "." || token == "!" || token == "?";
}

std::string HeuristicPos(std::string_view surface) {
  if (surface.front() >= 'A' && surface.front() <= 'Z') return "NNP";
  if (std::all_of(surface.begin(), surface.end(),
                  [](char c) { return c >= '0' && c <= '9'; })) {
    return "CD";
  }
  return "NN";
}

}  // namespace

TokenizedText Tokenize(std::string_view text) {
  TokenizedText out;
  const size_t n = text.size();
  size_t i = 0;
  int sentence = 0;
  int sentence_begin = 0;
  while (i < n) {
    if (IsAsciiSpace(text[i])) {
      ++i;
      continue;
    }
    size_t start = i;
    if (IsAsciiPunct(text[i])) {
      ++i;
    } else {
      while (i < n && !IsAsciiSpace(text[i]) && !IsAsciiPunct(text[i])) ++i;
    }
    Token token;
    token.surface = std::string(text.substr(start, i - start));
    token.pos = HeuristicPos(token.surface);
    token.char_start = static_cast<int64_t>(start);
    token.char_end = static_cast<int64_t>(i);
    token.sentence_index = sentence;
    token.token_index = static_cast<int>(out.tokens.size());
    const bool ends_sentence = IsSentenceTerminator(token.surface) &&
                               (i == n || IsAsciiSpace(text[i]));
    out.tokens.push_back(std::move(token));
    if (ends_sentence) {
      const int end = static_cast<int>(out.tokens.size());
      out.sentences.push_back({sentence_begin, end});
      sentence_begin = end;
      ++sentence;
    }
  }
  if (sentence_begin < static_cast<int>(out.tokens.size())) {
    out.sentences.push_back(
        {sentence_begin, static_cast<int>(out.tokens.size())});
  }
  return out;
}

std::vector<MentionSpan> DetectMentions(std::string_view text,
                                        const TokenizedText& tokenized,
                                        const KnowledgeBase& kb) {
  std::vector<MentionSpan> mentions;
  const auto& tokens = tokenized.tokens;
  for (size_t s = 0; s < tokenized.sentences.size(); ++s) {
    const SentenceRange range = tokenized.sentences[s];
    int i = range.begin;
    while (i < range.end) {
      const int max_len = std::min(kMaxAnchorTokens, range.end - i);
      bool matched = false;
      for (int len = max_len; len >= 1; --len) {
        const Token& first = tokens[i];
        const Token& last = tokens[i + len - 1];
        std::string key = NormalizeAnchor(
            text.substr(first.char_start, last.char_end - first.char_start));
        if (kb.candidates(key) == nullptr) continue;
        mentions.push_back({i, i + len - 1, first.char_start, last.char_end,
                            static_cast<int>(s), std::move(key)});
        i += len;
        matched = true;
        break;
      }
      if (!matched) ++i;
    }
  }
  return mentions;
}

std::vector<Annotation> Disambiguate(const std::vector<MentionSpan>& mentions,
                                     const KnowledgeBase& kb) {
  std::vector<Annotation> annotations;
  for (const MentionSpan& m : mentions) {
    const auto* candidates = kb.candidates(m.anchor);
    if (candidates == nullptr || candidates->empty()) continue;
    const AnchorCandidate* best = &candidates->front();
    for (const AnchorCandidate& c : *candidates) {
      if (c.prior > best->prior ||
          (c.prior == best->prior && c.entity < best->entity)) {
        best = &c;
      }
    }
    Annotation a;
    a.char_start = m.char_start;
    a.char_end = m.char_end;
    a.sentence_index = m.sentence_index;
    a.first_token = m.first_token;
    a.entity = best->entity;
    a.commonness = std::clamp(best->prior, 0.0, 1.0);
    annotations.push_back(a);
  }
  const size_t n = annotations.size();
  if (n > 1) {
    for (size_t i = 0; i < n; ++i) {
      double sum = 0.0;
      for (size_t j = 0; j < n; ++j) {
        if (j != i) {
          sum += Jaccard(annotations[i].entity, annotations[j].entity, kb);
        }
      }
      annotations[i].rho = std::clamp(sum / static_cast<double>(n - 1), 0.0, 1.0);
    }
  }
  return annotations;
}

EnrichedDocument Enrich(std::string_view title, std::string_view content,
                        const KnowledgeBase& kb, std::string doc_id) {
  EnrichedDocument doc;
  doc.doc_id = std::move(doc_id);
  doc.title = std::string(title);
  doc.content = std::string(content);
  TokenizedText body = Tokenize(content);
  doc.annotations = Disambiguate(DetectMentions(content, body, kb), kb);
  doc.tokens = std::move(body.tokens);
  doc.sentences = std::move(body.sentences);
  TokenizedText head = Tokenize(title);
  doc.title_annotations = Disambiguate(DetectMentions(title, head, kb), kb);
  return doc;
}

}  // namespace salience
