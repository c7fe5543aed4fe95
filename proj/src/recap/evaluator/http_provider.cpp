/* Copyright 2026 The RECAP Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "recap/evaluator/http_provider.hpp"

#include <cstdlib>
#include <thread>

#include "recap/common/error.hpp"
#include "recap/common/http.hpp"

namespace recap::evaluator {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

bool mentions_context_length(const json& doc, std::string_view body) {
  if (doc.is_object()) {
    if (const auto e = doc.find("error"); e != doc.end() && e->is_object()) {
      if (e->value("code", json()).is_string() && e->value("code", "") == "context_length_exceeded") return true;
    }
  }
  return body.find("context_length_exceeded") != std::string_view::npos ||
         body.find("maximum context length") != std::string_view::npos;
}

std::string error_message(const json& doc, const std::string& body) {
  if (doc.is_object()) {
    if (const auto e = doc.find("error"); e != doc.end()) {
      if (e->is_object() && e->contains("message") && (*e)["message"].is_string()) return (*e)["message"];
      if (e->is_string()) return *e;
    }
  }
  return body.substr(0, 300);
}

}  // namespace

HttpProvider::HttpProvider(HttpProviderConfig config) : config_(std::move(config)) {
  if (config_.endpoint.empty()) fail(ErrorCode::kConfig, "provider endpoint is not set");
  if (config_.model.empty()) fail(ErrorCode::kConfig, "provider model is not set");
  while (!config_.endpoint.empty() && config_.endpoint.back() == '/') config_.endpoint.pop_back();
  if (!config_.api_key_env.empty()) {
    const char* key = std::getenv(config_.api_key_env.c_str());
    if (!key || !*key) {
      fail(ErrorCode::kProviderUnavailable, "environment variable " + config_.api_key_env + " holds no API key");
    }
    api_key_ = key;
  }
}

ordered_json HttpProvider::body(const ProviderRequest& request) const {
  ordered_json b;
  b["model"] = config_.model;
  b["messages"] = ordered_json::array({{{"role", "system"}, {"content", request.system_prompt}},
                                       {{"role", "user"}, {"content", request.user_content}}});
  b["response_format"] = {{"type", "json_schema"},
                          {"json_schema", {{"name", "field_answer"}, {"strict", true}, {"schema", request.response_schema}}}};
  b["max_completion_tokens"] = request.max_response_tokens;
  if (config_.temperature) b["temperature"] = *config_.temperature;
  return b;
}

std::string HttpProvider::complete(const ProviderRequest& request) {
  http::Request req;
  req.method = "POST";
  req.url = config_.endpoint + "/chat/completions";
  req.headers = {"Content-Type: application/json"};
  if (!api_key_.empty()) req.headers.push_back("Authorization: Bearer " + api_key_);
  req.body = body(request).dump();
  req.timeout_s = config_.timeout_s;
  req.follow_redirects = false;

  auto wait = config_.retry_wait;
  for (unsigned attempt = 0;; ++attempt) {
    const http::Response res = http::perform(req);
    if (!res.transport_ok()) {
      fail(ErrorCode::kProviderUnavailable, "provider request failed: " + res.curl_error);
    }
    const json doc = json::parse(res.body, nullptr, false);
    if (res.status == 200) {
      try {
        const auto& content = doc.at("choices").at(0).at("message").at("content");
        if (content.is_string()) return content.get<std::string>();
        return content.dump();
      } catch (const json::exception&) {
        // Handed to the response parser, which rejects it and retries.
        return res.body;
      }
    }
    if (mentions_context_length(doc, res.body)) {
      fail(ErrorCode::kContextOverflow, "provider rejected the request size: " + error_message(doc, res.body));
    }
    const bool transient = res.status == 429 || res.status >= 500;
    if (!transient || attempt >= config_.transient_retries) {
      fail(ErrorCode::kProviderUnavailable,
           "provider returned HTTP " + std::to_string(res.status) + ": " + error_message(doc, res.body));
    }
    std::this_thread::sleep_for(wait);
    wait *= 2;
  }
}

ordered_json HttpProvider::describe() const {
  ordered_json info{{"provider", "openai-compatible"}, {"endpoint", config_.endpoint}, {"model", config_.model}};
  info["sampling"] = config_.temperature ? ordered_json{{"temperature", *config_.temperature}}
                                         : ordered_json("provider defaults");
  return info;
}

}  // namespace recap::evaluator
