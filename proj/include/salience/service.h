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

#ifndef SALIENCE_SERVICE_H_
#define SALIENCE_SERVICE_H_

// HTTP annotation service.
//
//   POST /salience?gcube-token=TOKEN   {"title": ..., "content": ...}
//                                      or {"enriched": <corpus document>}
//   GET  /health
//
// Response spans are character (code point) offsets into the content.

#include <cstddef>
#include <string>
#include <string_view>

#include "salience/features.h"
#include "salience/model.h"
#include "salience/pipeline.h"

namespace salience {

struct ServiceConfig {
  std::string token;
  size_t max_content_bytes = 1 << 20;
};

struct ServiceResponse {
  int http_status = 200;
  std::string body;  // JSON
};

// Immutable pipeline state shared by all requests.
class SalienceService {
 public:
  // Throws ValidationError when the token is empty or the model was trained
  // on a different feature schema.
  SalienceService(PipelineResources resources, GbdtModel model,
                  ServiceConfig config);

  ServiceResponse HandleSalience(std::string_view body,
                                 const std::string* token) const;
  ServiceResponse HandleHealth() const;

  const GbdtModel& model() const { return model_; }
  const FeaturePlan& plan() const { return plan_; }

  // Serves until the process is stopped. Throws IoError when the port cannot
  // be bound.
  void Serve(const std::string& host, int port) const;

 private:
  ServiceResponse Annotate(const EnrichedDocument& doc) const;

  PipelineResources resources_;
  GbdtModel model_;
  ServiceConfig config_;
  FeaturePlan plan_;
};

// Number of code points in the first `byte_offset` bytes of UTF-8 text.
size_t CodePointOffset(std::string_view text, size_t byte_offset);

}  // namespace salience

#endif  // SALIENCE_SERVICE_H_
