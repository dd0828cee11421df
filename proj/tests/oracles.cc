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

#include "oracles.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <limits>
#include <set>

namespace salience::oracle {

Dense ToDense(const WeightMatrix& w) {
  Dense out(w.size(), std::vector<double>(w.size()));
  for (size_t i = 0; i < w.size(); ++i) {
    for (size_t j = 0; j < w.size(); ++j) out[i][j] = w(i, j);
  }
  return out;
}

WeightMatrix FromDense(const Dense& w) {
  WeightMatrix out(w.size());
  for (size_t i = 0; i < w.size(); ++i) {
    for (size_t j = 0; j < w.size(); ++j) out(i, j) = w[i][j];
  }
  return out;
}

std::vector<double> PageRank(const Dense& w, double damping) {
  const size_t n = w.size();
  Dense google(n, std::vector<double>(n));
  for (size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (double v : w[i]) row += v;
    for (size_t j = 0; j < n; ++j) {
      const double p = row > 0.0 ? w[i][j] / row : 1.0 / n;
      google[i][j] = damping * p + (1.0 - damping) / n;
    }
  }
  std::vector<double> x(n, 1.0 / n), next(n);
  for (int iter = 0; iter < 1000000; ++iter) {
    for (size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (size_t i = 0; i < n; ++i) s += x[i] * google[i][j];
      next[j] = s;
    }
    double change = 0.0;
    for (size_t i = 0; i < n; ++i) change += std::fabs(next[i] - x[i]);
    x.swap(next);
    if (change < 1e-15) break;
  }
  return x;
}

std::vector<double> Katz(const Dense& w, double alpha) {
  const size_t n = w.size();
  Dense a(n, std::vector<double>(n + 1));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) a[i][j] = (i == j ? 1.0 : 0.0) - alpha * w[i][j];
    a[i][n] = 1.0;
  }
  for (size_t c = 0; c < n; ++c) {
    size_t pivot = c;
    for (size_t r = c + 1; r < n; ++r) {
      if (std::fabs(a[r][c]) > std::fabs(a[pivot][c])) pivot = r;
    }
    std::swap(a[c], a[pivot]);
    for (size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      for (size_t k = c; k <= n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  std::vector<double> out(n);
  for (size_t i = 0; i < n; ++i) out[i] = a[i][n] / a[i][i] - 1.0;
  return out;
}

namespace {

void Normalize(std::vector<double>& v) {
  double sq = 0.0;
  for (double x : v) sq += x * x;
  if (sq == 0.0) {
    std::fill(v.begin(), v.end(), 1.0 / std::sqrt(static_cast<double>(v.size())));
    return;
  }
  const double norm = std::sqrt(sq);
  for (double& x : v) x /= norm;
}

std::vector<double> Times(const Dense& m, const std::vector<double>& v,
                          bool transpose) {
  const size_t n = v.size();
  std::vector<double> out(n, 0.0);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      out[i] += (transpose ? m[j][i] : m[i][j]) * v[j];
    }
  }
  return out;
}

}  // namespace

std::pair<std::vector<double>, std::vector<double>> Hits(const Dense& w) {
  const size_t n = w.size();
  Dense wtw(n, std::vector<double>(n, 0.0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      for (size_t k = 0; k < n; ++k) wtw[i][j] += w[k][i] * w[k][j];
    }
  }
  std::vector<double> auth =
      Times(w, std::vector<double>(n, 1.0 / std::sqrt(static_cast<double>(n))),
            true);
  Normalize(auth);
  for (int iter = 0; iter < 1000000; ++iter) {
    std::vector<double> next = Times(wtw, auth, false);
    Normalize(next);
    double change = 0.0;
    for (size_t i = 0; i < n; ++i) change = std::max(change, std::fabs(next[i] - auth[i]));
    auth.swap(next);
    if (change < 1e-15) break;
  }
  std::vector<double> hub = Times(w, auth, false);
  Normalize(hub);
  return {auth, hub};
}

PathScores PathCentralities(const Dense& w) {
  const size_t n = w.size();
  // paths[s][t]: (length, interior nodes) of every simple path s -> t.
  std::vector<std::vector<std::vector<std::pair<double, std::vector<size_t>>>>>
      paths(n, std::vector<std::vector<std::pair<double, std::vector<size_t>>>>(n));
  std::vector<size_t> stack;
  std::vector<bool> on_path(n, false);
  std::function<void(size_t, size_t, double)> walk = [&](size_t s, size_t v,
                                                          double length) {
    if (v != s) {
      std::vector<size_t> interior(stack.begin() + 1, stack.end() - 1);
      paths[s][v].push_back({length, interior});
    }
    for (size_t u = 0; u < n; ++u) {
      if (on_path[u] || !(w[v][u] > 0.0)) continue;
      on_path[u] = true;
      stack.push_back(u);
      walk(s, u, length + std::max(0.0, 1.0 - w[v][u]));
      stack.pop_back();
      on_path[u] = false;
    }
  };
  for (size_t s = 0; s < n; ++s) {
    on_path.assign(n, false);
    on_path[s] = true;
    stack = {s};
    walk(s, s, 0.0);
  }

  auto shortest = [&](size_t s, size_t t) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : paths[s][t]) best = std::min(best, p.first);
    return best;
  };
  auto tied = [](double a, double b) {
    return std::fabs(a - b) <= 1e-12 * std::max(1.0, std::max(a, b));
  };

  PathScores out;
  out.betweenness.assign(n, 0.0);
  out.closeness.assign(n, 0.0);
  out.harmonic.assign(n, 0.0);
  for (size_t s = 0; s < n; ++s) {
    for (size_t t = s + 1; t < n; ++t) {
      if (paths[s][t].empty()) continue;
      const double d = shortest(s, t);
      double total = 0.0;
      std::vector<double> through(n, 0.0);
      for (const auto& [length, interior] : paths[s][t]) {
        if (!tied(length, d)) continue;
        total += 1.0;
        for (size_t v : interior) through[v] += 1.0;
      }
      for (size_t v = 0; v < n; ++v) out.betweenness[v] += through[v] / total;
    }
  }
  for (size_t v = 0; v < n; ++v) {
    double total = 0.0;
    double reachable = 1.0;
    for (size_t u = 0; u < n; ++u) {
      if (u == v || paths[v][u].empty()) continue;
      const double d = shortest(v, u);
      reachable += 1.0;
      total += d;
      if (d > 0.0) out.harmonic[v] += 1.0 / d;
    }
    out.closeness[v] = total > 0.0 ? (reachable - 1.0) / total : 0.0;
  }
  return out;
}

std::vector<double> Centrality(const Dense& w, salience::Centrality algorithm) {
  const size_t n = w.size();
  switch (algorithm) {
    case salience::Centrality::kDegree: {
      std::vector<double> out(n, 0.0);
      for (size_t i = 0; i < n; ++i) {
        for (double v : w[i]) out[i] += v;
      }
      return out;
    }
    case salience::Centrality::kPageRank: return PageRank(w);
    case salience::Centrality::kKatz:
      return n <= 1 ? std::vector<double>(n, 0.0)
                    : Katz(w, std::min(0.05, 0.5 / static_cast<double>(n - 1)));
    case salience::Centrality::kHitsAuthority: return Hits(w).first;
    case salience::Centrality::kHitsHub: return Hits(w).second;
    case salience::Centrality::kBetweenness: return PathCentralities(w).betweenness;
    case salience::Centrality::kCloseness: return PathCentralities(w).closeness;
    case salience::Centrality::kHarmonic: return PathCentralities(w).harmonic;
  }
  return {};
}

Dense RandomGraph(Rng& rng, int n) {
  Dense w(n, std::vector<double>(n, 0.0));
  const bool discrete = rng.Bernoulli(0.5);
  const double absent = rng.Uniform(0.0, 0.5);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double v = 0.0;
      if (discrete) {
        v = 0.25 * static_cast<double>(rng.Index(4));
      } else if (!rng.Bernoulli(absent)) {
        v = rng.Uniform(0.01, 0.99);
      }
      w[i][j] = w[j][i] = v;
    }
  }
  return w;
}

std::vector<std::vector<std::string>> SentenceWords(const EnrichedDocument& doc) {
  std::vector<std::vector<std::string>> out(doc.sentences.size());
  for (const Token& t : doc.tokens) {
    const bool punct = std::all_of(t.surface.begin(), t.surface.end(), [](char c) {
      return std::ispunct(static_cast<unsigned char>(c)) != 0;
    });
    if (punct) continue;
    std::string lower;
    for (char c : t.surface) {
      lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    out[t.sentence_index].push_back(lower);
  }
  return out;
}

double SentenceSimilarity(const std::vector<std::string>& a,
                          const std::vector<std::string>& b) {
  if (a.size() <= 1 || b.size() <= 1) return 0.0;
  const std::set<std::string> sa(a.begin(), a.end());
  const std::set<std::string> sb(b.begin(), b.end());
  double shared = 0.0;
  for (const std::string& word : sa) shared += sb.count(word);
  return shared / (std::log(static_cast<double>(a.size())) +
                   std::log(static_cast<double>(b.size())));
}

std::vector<double> TextRank(const EnrichedDocument& doc) {
  const auto words = SentenceWords(doc);
  const size_t n = words.size();
  Dense w(n, std::vector<double>(n, 0.0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      if (i != j) w[i][j] = SentenceSimilarity(words[i], words[j]);
    }
  }
  return PageRank(w);
}

std::array<double, 6> Stats6(std::vector<double> v) {
  std::array<double, 6> out{};
  if (v.empty()) return out;
  std::sort(v.begin(), v.end());
  const double n = static_cast<double>(v.size());
  double sum = 0.0;
  for (double x : v) sum += x;
  const double mean = sum / n;
  const size_t m = v.size() / 2;
  const double median = v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2.0;
  double sq = 0.0;
  for (double x : v) sq += (x - mean) * (x - mean);
  double hmean = 0.0;
  if (v.front() > 0.0) {
    double inv = 0.0;
    for (double x : v) inv += 1.0 / x;
    hmean = n / inv;
  }
  return {v.front(), v.back(), mean, median, std::sqrt(sq / n), hmean};
}

int Bucket(int k, int n) { return std::min(9, (10 * k) / n); }

int FirstLocIndex(int sentence_index) {
  int m = 0;
  while (m < 9 && std::exp(static_cast<double>(m + 1)) <= 10.0 * (sentence_index + 1)) {
    ++m;
  }
  return m;
}

uint64_t Fnv1a(std::string_view bytes) {
  uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

double Hash(std::string_view value) {
  return static_cast<double>(Fnv1a(value) >> 11) / 9007199254740992.0;
}

namespace {

std::string Lower(std::string_view s) {
  std::string out;
  for (char c : s) out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

const char* kStatNames[] = {"min", "max", "mean", "median", "std", "hmean"};

void PutStats(std::map<std::string, double>& out, const std::string& prefix,
              const std::string& suffix, const std::vector<double>& values) {
  const auto s = Stats6(values);
  for (int i = 0; i < 6; ++i) out[prefix + kStatNames[i] + suffix] = s[i];
}

std::string CoarseTag(const std::string& pos) {
  if (pos == "NNP" || pos == "NNPS") return "NNP";
  if (pos.rfind("NN", 0) == 0) return "NN";
  if (pos.rfind("VB", 0) == 0) return "VB";
  if (pos.rfind("JJ", 0) == 0) return "JJ";
  if (pos.rfind("RB", 0) == 0) return "RB";
  if (pos == "CD" || pos == "DT" || pos == "IN" || pos == "CC" || pos == "PUNCT") {
    return pos;
  }
  if (pos.rfind("PR", 0) == 0) return "PR";
  return "OTHER";
}

int LastToken(const EnrichedDocument& doc, const Annotation& a) {
  int last = a.first_token;
  while (last + 1 < static_cast<int>(doc.tokens.size()) &&
         doc.tokens[last + 1].char_end <= a.char_end) {
    ++last;
  }
  return last;
}

int HeadToken(const EnrichedDocument& doc, const Annotation& a) {
  const int last = LastToken(doc, a);
  for (int t = a.first_token; t <= last; ++t) {
    for (const DependencyEdge& e : doc.dependency_edges) {
      if (e.dependent == t && (e.head < a.first_token || e.head > last)) return t;
    }
  }
  return a.first_token;
}

}  // namespace

std::map<std::string, double> Features(const EnrichedDocument& doc,
                                       EntityId entity, const KnowledgeBase& kb,
                                       const IdfTable& idf,
                                       const std::vector<double>& textrank) {
  std::vector<Annotation> mentions;
  for (const Annotation& a : doc.annotations) {
    if (a.entity == entity) mentions.push_back(a);
  }
  std::stable_sort(mentions.begin(), mentions.end(),
                   [](const Annotation& x, const Annotation& y) {
                     return x.char_start < y.char_start;
                   });
  const int S = static_cast<int>(doc.sentences.size());
  const int T = static_cast<int>(doc.tokens.size());
  std::map<std::string, double> out;

  auto position_block = [&](const std::string& prefix,
                            const std::vector<Annotation>& ms, bool spreads) {
    std::vector<double> ps, pt;
    std::vector<double> bs(10, 0.0), bt(10, 0.0);
    for (const Annotation& a : ms) {
      ps.push_back(static_cast<double>(a.sentence_index + 1) / S);
      pt.push_back(static_cast<double>(a.first_token + 1) / T);
      bs[Bucket(a.sentence_index + 1, S)] += 1.0;
      bt[Bucket(a.first_token + 1, T)] += 1.0;
    }
    PutStats(out, prefix + "position-", "_s", ps);
    PutStats(out, prefix + "position-", "_t", pt);
    for (int b = 0; b < 10; ++b) {
      out[prefix + "bucketed-freq_s_" + std::to_string(b)] = bs[b];
      out[prefix + "bucketed-freq_t_" + std::to_string(b)] = bt[b];
    }
    if (spreads) {
      out["spread_s"] = ps.empty() ? 0.0 : *std::max_element(ps.begin(), ps.end()) -
                                               *std::min_element(ps.begin(), ps.end());
      out["spread_t"] = pt.empty() ? 0.0 : *std::max_element(pt.begin(), pt.end()) -
                                               *std::min_element(pt.begin(), pt.end());
    }
  };
  auto textrank_of = [&](const std::vector<Annotation>& ms) {
    std::set<int> sentences;
    for (const Annotation& a : ms) sentences.insert(a.sentence_index);
    std::vector<double> out_scores;
    for (int s : sentences) out_scores.push_back(textrank[s]);
    return out_scores;
  };

  const double ef = static_cast<double>(mentions.size());
  const double idf_value =
      std::log((idf.n_docs + 1.0) / (idf.df_of(entity) + 1.0)) + 1.0;
  out["ef"] = ef;
  out["idf"] = idf_value;
  out["ef-idf"] = ef * idf_value;
  position_block("", mentions, true);
  int first_sentence = mentions.front().sentence_index;
  for (const Annotation& a : mentions) {
    first_sentence = std::min(first_sentence, a.sentence_index);
  }
  for (int i = 0; i < 10; ++i) {
    out["1st-loc_" + std::to_string(i)] = i == FirstLocIndex(first_sentence) ? 1.0 : 0.0;
  }

  bool in_title = false, upper = false;
  for (const Annotation& a : mentions) {
    const std::string surface =
        doc.content.substr(a.char_start, a.char_end - a.char_start);
    if (Lower(doc.title).find(Lower(surface)) != std::string::npos) in_title = true;
    bool has_upper = false, has_lower = false;
    for (char c : surface) {
      has_upper = has_upper || (c >= 'A' && c <= 'Z');
      has_lower = has_lower || (c >= 'a' && c <= 'z');
    }
    upper = upper || (has_upper && !has_lower);
  }
  bool entity_title = false;
  for (const Annotation& a : doc.title_annotations) {
    entity_title = entity_title || a.entity == entity;
  }
  out["mention-title"] = in_title;
  out["entity-title"] = entity_title;
  out["is-upper"] = upper;

  const std::string head_word =
      Lower(doc.tokens[HeadToken(doc, mentions.front())].surface);
  double head_count = 0.0;
  for (const Token& t : doc.tokens) head_count += Lower(t.surface) == head_word;
  out["head-count"] = head_count;
  out["head-lex"] = Hash(head_word);

  double coref = 0.0;
  for (const CorefChain& chain : doc.coref_chains) {
    for (const CorefMention& span : chain.mentions) {
      for (const Annotation& a : mentions) {
        if (span.first_token <= LastToken(doc, a) && a.first_token <= span.last_token) {
          coref += 1.0;
          break;
        }
      }
    }
  }
  out["mentions"] = ef + coref;

  std::string headline = doc.headline ? *doc.headline : doc.title;
  for (char& c : headline) {
    if (std::ispunct(static_cast<unsigned char>(c))) c = ' ';
  }
  std::set<std::string> headline_words;
  {
    size_t pos = 0;
    while (pos < headline.size()) {
      size_t end = headline.find(' ', pos);
      if (end == std::string::npos) end = headline.size();
      if (end > pos) headline_words.insert(Lower(headline.substr(pos, end - pos)));
      pos = end + 1;
    }
  }
  for (const char* tag : {"NN", "NNP", "VB", "JJ", "RB", "CD", "PR", "DT", "IN",
                          "CC", "PUNCT", "OTHER"}) {
    out[std::string("headline_") + tag] = 0.0;
  }
  for (const Annotation& a : mentions) {
    for (int t = a.first_token; t <= LastToken(doc, a); ++t) {
      if (headline_words.count(Lower(doc.tokens[t].surface))) {
        out["headline_" + CoarseTag(doc.tokens[t].pos)] += 1.0;
      }
    }
  }

  PutStats(out, "textrank-", "", textrank_of(mentions));

  for (const char* rel : {"prep_in", "amod", "poss", "nn", "nsubj"}) {
    std::vector<Annotation> restricted;
    for (const Annotation& a : mentions) {
      const int head = HeadToken(doc, a);
      for (const DependencyEdge& e : doc.dependency_edges) {
        if (e.dependent == head && e.relation == rel) {
          restricted.push_back(a);
          break;
        }
      }
    }
    const std::string prefix = std::string(rel) + "-";
    out[prefix + "freq"] = static_cast<double>(restricted.size());
    position_block(prefix, restricted, false);
    PutStats(out, prefix + "textrank-", "", textrank_of(restricted));
  }

  std::vector<double> comm, rho;
  for (const Annotation& a : mentions) {
    comm.push_back(a.commonness);
    rho.push_back(a.rho);
  }
  PutStats(out, "comm-", "", comm);
  PutStats(out, "rho-", "", rho);

  std::set<EntityId> others;
  for (const Annotation& a : doc.annotations) {
    if (a.entity != entity) others.insert(a.entity);
  }
  std::vector<double> all;
  std::vector<std::vector<double>> by_s(10), by_t(10);
  const KbEntity* self = kb.find(entity);
  for (EntityId o : others) {
    const KbEntity* other = kb.find(o);
    double weight = 0.0;
    if (self != nullptr && other != nullptr) {
      const std::set<EntityId> a(self->in_links.begin(), self->in_links.end());
      const std::set<EntityId> b(other->in_links.begin(), other->in_links.end());
      std::set<EntityId> both = a;
      both.insert(b.begin(), b.end());
      double shared = 0.0;
      for (EntityId id : a) shared += b.count(id);
      weight = both.empty() ? 0.0 : shared / static_cast<double>(both.size());
    }
    const Annotation* first = nullptr;
    for (const Annotation& a : doc.annotations) {
      if (a.entity == o && (first == nullptr || a.char_start < first->char_start)) {
        first = &a;
      }
    }
    all.push_back(weight);
    by_s[Bucket(first->sentence_index + 1, S)].push_back(weight);
    by_t[Bucket(first->first_token + 1, T)].push_back(weight);
  }
  PutStats(out, "jaccard-rel-", "", all);
  for (int b = 0; b < 10; ++b) {
    PutStats(out, "jaccard-rel-bucketed_s_" + std::to_string(b) + "-", "", by_s[b]);
    PutStats(out, "jaccard-rel-bucketed_t_" + std::to_string(b) + "-", "", by_t[b]);
  }
  out["wiki-id"] = Hash(std::to_string(entity));
  return out;
}

RootSplit BestRootSplit(const Matrix& x, std::span<const int> y,
                        const GbdtHyperparams& hp) {
  const size_t n = x.rows;
  std::vector<double> weight(n);
  double pos = 0.0, total = 0.0;
  for (size_t i = 0; i < n; ++i) {
    weight[i] = y[i] == 1 ? hp.scale_pos_weight : 1.0;
    pos += weight[i] * y[i];
    total += weight[i];
  }
  const double p = pos / total;
  std::vector<double> g(n), h(n);
  double G = 0.0, H = 0.0;
  for (size_t i = 0; i < n; ++i) {
    g[i] = weight[i] * (p - y[i]);
    h[i] = weight[i] * p * (1.0 - p);
    G += g[i];
    H += h[i];
  }
  const double lambda = hp.reg_lambda;
  auto score = [&](double gs, double hs) { return gs * gs / (hs + lambda); };

  RootSplit best;
  for (size_t f = 0; f < x.cols; ++f) {
    std::set<double> distinct;
    for (size_t i = 0; i < n; ++i) distinct.insert(x.at(i, f));
    std::vector<double> values(distinct.begin(), distinct.end());
    for (size_t k = 0; k + 1 < values.size(); ++k) {
      const double cut = (values[k] + values[k + 1]) / 2.0;
      double gl = 0.0, hl = 0.0;
      for (size_t i = 0; i < n; ++i) {
        if (x.at(i, f) <= values[k]) {
          gl += g[i];
          hl += h[i];
        }
      }
      if (hl < hp.min_child_weight || H - hl < hp.min_child_weight) continue;
      const double gain =
          0.5 * (score(gl, hl) + score(G - gl, H - hl) - score(G, H)) - hp.gamma;
      if (gain > best.gain) {
        best.feature = static_cast<int>(f);
        best.threshold = cut;
        best.gain = gain;
        best.goes_left.assign(n, false);
        for (size_t i = 0; i < n; ++i) best.goes_left[i] = x.at(i, f) <= values[k];
      }
    }
  }
  return best;
}

MetricScores Metrics(const std::vector<EntityKey>& predicted,
                     const std::vector<EntityKey>& gold,
                     const std::vector<std::string>& docs) {
  auto count = [](const std::vector<EntityKey>& keys, const std::string& doc) {
    std::vector<EntityId> out;
    for (const auto& [d, e] : keys) {
      if (d == doc && std::find(out.begin(), out.end(), e) == out.end()) {
        out.push_back(e);
      }
    }
    return out;
  };
  auto ratio = [](double a, double b) { return b == 0.0 ? 0.0 : a / b; };
  auto f1 = [](double p, double r) { return p + r == 0.0 ? 0.0 : 2 * p * r / (p + r); };

  MetricScores out;
  double tp = 0, np = 0, ng = 0;
  for (const std::string& doc : docs) {
    const auto p = count(predicted, doc);
    const auto g = count(gold, doc);
    double hit = 0.0;
    for (EntityId e : p) hit += std::find(g.begin(), g.end(), e) != g.end();
    tp += hit;
    np += p.size();
    ng += g.size();
    double dp, dr, df;
    if (p.empty() && g.empty()) {
      dp = dr = df = 1.0;
    } else {
      dp = ratio(hit, p.size());
      dr = ratio(hit, g.size());
      df = f1(dp, dr);
    }
    out.macro_p += dp;
    out.macro_r += dr;
    out.macro_f1 += df;
  }
  if (!docs.empty()) {
    out.macro_p /= docs.size();
    out.macro_r /= docs.size();
    out.macro_f1 /= docs.size();
  }
  out.micro_p = ratio(tp, np);
  out.micro_r = ratio(tp, ng);
  out.micro_f1 = f1(out.micro_p, out.micro_r);
  return out;
}

}  // namespace salience::oracle
