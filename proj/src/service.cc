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

#include "salience/service.h"

#include <algorithm>
#include <map>
#include <set>

#include "httplib.h"
#include "json.hpp"
#include "salience/enricher.h"
#include "salience/util.h"

namespace salience {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

size_t CodePointOffset(std::string_view text, size_t byte_offset) {
  size_t count = 0;
  const size_t end = std::min(byte_offset, text.size());
  for (size_t i = 0; i < end; ++i) {
    if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) ++count;
  }
  return count;
}

namespace {

ServiceResponse Status(int http_status, const std::string& status) {
  ordered_json j;
  j["status"] = status;
  return {http_status, j.dump()};
}

}  // namespace

SalienceService::SalienceService(PipelineResources resources, GbdtModel model,
                                 ServiceConfig config)
    : resources_(std::move(resources)),
      model_(std::move(model)),
      config_(std::move(config)) {
  if (config_.token.empty()) {
    throw ValidationError("service token must not be empty");
  }
  plan_ = resources_.plan();
  if (plan_.schema.names() != model_.feature_names) {
    throw ValidationError("model schema " + model_.fingerprint() +
                          " does not match the configured features " +
                          plan_.schema.fingerprint());
  }
}

ServiceResponse SalienceService::HandleHealth() const {
  ordered_json j;
  j["status"] = "ok";
  j["model_fingerprint"] = model_.fingerprint();
  return {200, j.dump()};
}

ServiceResponse SalienceService::HandleSalience(
    std::string_view body, const std::string* token) const {
  if (token == nullptr || *token != config_.token) {
    return Status(401, "error: unauthorized");
  }
  json request;
  try {
    request = json::parse(body);
  } catch (const json::exception&) {
    return Status(400, "error: request body is not valid JSON");
  }
  if (!request.is_object()) {
    return Status(400, "error: request body must be a JSON object");
  }

  EnrichedDocument doc;
  try {
    if (request.contains("enriched")) {
      doc = ParseDocument(request.at("enriched").dump());
      if (doc.content.size() > config_.max_content_bytes) {
        return Status(413, "error: content too large");
      }
      ValidateDocument(doc, &resources_.kb);
    } else {
      if (!request.contains("content") || !request.at("content").is_string()) {
        return Status(400, "error: missing string field 'content'");
      }
      std::string title;
      if (request.contains("title")) {
        if (!request.at("title").is_string()) {
          return Status(400, "error: field 'title' must be a string");
        }
        title = request.at("title").get<std::string>();
      }
      const std::string content = request.at("content").get<std::string>();
      if (content.size() > config_.max_content_bytes) {
        return Status(413, "error: content too large");
      }
      doc = Enrich(title, content, resources_.kb, "request");
    }
  } catch (const ValidationError& e) {
    return Status(400, std::string("error: ") + e.what());
  }
  return Annotate(doc);
}

ServiceResponse SalienceService::Annotate(const EnrichedDocument& doc) const {
  struct Entry {
    EntityId entity;
    double score;
    std::vector<std::pair<size_t, size_t>> spans;
  };
  std::vector<Entry> entries;
  if (!doc.annotations.empty()) {
    DocumentFeaturizer featurizer(doc, resources_.context(), plan_);
    for (const FeatureVector& v : featurizer.AssembleAll()) {
      Entry entry{v.entity, model_.PredictProba(v.values), {}};
      std::set<std::pair<size_t, size_t>> spans;
      for (const Annotation* a : doc.mentions_of(v.entity)) {
        spans.emplace(CodePointOffset(doc.content, a->char_start),
                      CodePointOffset(doc.content, a->char_end));
      }
      entry.spans.assign(spans.begin(), spans.end());
      entries.push_back(std::move(entry));
    }
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.entity < b.entity;
  });

  ordered_json annotations = ordered_json::array();
  for (const Entry& e : entries) {
    const KbEntity* kb_entity = resources_.kb.find(e.entity);
    ordered_json a;
    a["wiki_id"] = e.entity;
    a["wiki_title"] = kb_entity != nullptr ? kb_entity->title : "";
    a["salience_class"] = e.score >= kDecisionThreshold ? 1 : 0;
    a["salience_score"] = e.score;
    ordered_json spans = ordered_json::array();
    for (const auto& [start, end] : e.spans) {
      ordered_json span;
      span["start"] = start;
      span["end"] = end;
      spans.push_back(std::move(span));
    }
    a["spans"] = std::move(spans);
    annotations.push_back(std::move(a));
  }
  ordered_json response;
  response["status"] = "ok";
  response["annotations"] = std::move(annotations);
  response["title"] = doc.title;
  response["content"] = doc.content;
  return {200, response.dump()};
}

void SalienceService::Serve(const std::string& host, int port) const {
  httplib::Server server;
  server.set_payload_max_length(config_.max_content_bytes * 8 + (1 << 20));
  server.Post("/salience", [this](const httplib::Request& req,
                                  httplib::Response& res) {
    std::string token;
    const bool has_token = req.has_param("gcube-token");
    if (has_token) token = req.get_param_value("gcube-token");
    const ServiceResponse out =
        HandleSalience(req.body, has_token ? &token : nullptr);
    res.status = out.http_status;
    res.set_content(out.body, "application/json");
  });
  server.Get("/health", [this](const httplib::Request&, httplib::Response& res) {
    const ServiceResponse out = HandleHealth();
    res.status = out.http_status;
    res.set_content(out.body, "application/json");
  });
  if (!server.bind_to_port(host, port)) {
    throw IoError("cannot bind " + host + ":" + std::to_string(port));
  }
  server.listen_after_bind();
}

}  // namespace salience
