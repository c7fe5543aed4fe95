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

#include "recap/app/run_config.hpp"

#include <set>

#include <json.hpp>

#include "recap/common/error.hpp"
#include "recap/common/files.hpp"

namespace recap::app {

namespace {

using nlohmann::json;

class Reader {
 public:
  Reader(const json& obj, std::string where, const fs::path& base) : obj_(obj), where_(std::move(where)), base_(base) {
    if (!obj_.is_object()) fail(ErrorCode::kConfig, where_ + " must be an object");
  }

  // Rejects keys nobody asked for.
  void finish() const {
    for (const auto& [key, value] : obj_.items()) {
      if (!seen_.count(key)) fail(ErrorCode::kConfig, "unknown key " + where_ + "." + key);
    }
  }

  const json* get(const std::string& key) {
    seen_.insert(key);
    const auto it = obj_.find(key);
    return it == obj_.end() || it->is_null() ? nullptr : &*it;
  }

  void str(const std::string& key, std::string& out) {
    if (const json* v = get(key)) {
      if (!v->is_string()) fail(ErrorCode::kConfig, where_ + "." + key + " must be a string");
      out = v->get<std::string>();
    }
  }

  void path(const std::string& key, fs::path& out) {
    std::string s;
    str(key, s);
    if (!s.empty()) out = fs::path(s).is_absolute() ? fs::path(s) : base_ / s;
  }

  void boolean(const std::string& key, bool& out) {
    if (const json* v = get(key)) {
      if (!v->is_boolean()) fail(ErrorCode::kConfig, where_ + "." + key + " must be true or false");
      out = v->get<bool>();
    }
  }

  template <typename T>
  void number(const std::string& key, T& out, double lo, double hi) {
    if (const json* v = get(key)) {
      if (!v->is_number()) fail(ErrorCode::kConfig, where_ + "." + key + " must be a number");
      const double d = v->get<double>();
      if (!(d >= lo && d <= hi)) fail(ErrorCode::kConfig, where_ + "." + key + " is out of range");
      if constexpr (std::is_integral_v<T>) {
        if (!v->is_number_integer() && !v->is_number_unsigned()) {
          fail(ErrorCode::kConfig, where_ + "." + key + " must be an integer");
        }
        out = static_cast<T>(v->get<long long>());
      } else {
        out = static_cast<T>(d);
      }
    }
  }

  std::optional<Reader> object(const std::string& key) {
    if (const json* v = get(key)) return std::optional<Reader>(std::in_place, *v, where_ + "." + key, base_);
    return std::nullopt;
  }

 private:
  const json& obj_;
  std::string where_;
  const fs::path& base_;
  std::set<std::string> seen_;
};

constexpr double kHuge = 1e18;

}  // namespace

RunConfig parse_run_config(std::string_view document, const fs::path& base_dir) {
  const json doc = json::parse(document, nullptr, false);
  if (doc.is_discarded()) fail(ErrorCode::kConfig, "config is not valid JSON");
  RunConfig c;
  {
    Reader r(doc, "config", base_dir);
    r.path("schema_path", c.schema_path);
    r.path("manifest_path", c.manifest_path);
    r.path("cache_dir", c.cache_dir);
    r.path("documents_root", c.documents_root);
    r.path("output_dir", c.output_dir);
    r.path("prompt_preamble_path", c.preamble_path);
    if (const json* a = r.get("alpha")) {
      if (!a->is_number() || !(a->get<double>() > 0 && a->get<double>() < 1)) {
        fail(ErrorCode::kConfig, "config.alpha must lie strictly between 0 and 1");
      }
      c.alpha = a->get<double>();
    }
    r.number("workers", c.workers, 1, 256);
    if (auto p = r.object("provider")) {
      auto& s = c.provider;
      p->str("kind", s.kind);
      if (s.kind != "openai" && s.kind != "stub") fail(ErrorCode::kConfig, "config.provider.kind must be openai or stub");
      p->str("endpoint", s.endpoint);
      p->str("model", s.model);
      p->str("api_key_env", s.api_key_env);
      p->number("rate_limit_per_s", s.rate_limit_per_s, 0, kHuge);
      p->number("timeout_s", s.timeout_s, 1, kHuge);
      p->number("transient_retries", s.transient_retries, 0, 100);
      if (p->get("temperature")) {
        double t = 0;
        p->number("temperature", t, 0, 2);
        s.temperature = t;
      }
      p->number("context_limit_tokens", s.context_limit_tokens, 0, kHuge);
      p->number("chars_per_token", s.chars_per_token, 0.01, 1000);
      p->number("max_response_tokens", s.max_response_tokens, 1, kHuge);
      p->path("stub_path", s.stub_path);
      if (p->get("api_key")) fail(ErrorCode::kConfig, "API keys are read from the environment (provider.api_key_env)");
      p->finish();
    }
    if (auto p = r.object("retry")) {
      p->number("max_attempts", c.retry.max_attempts, 1, 100);
      long long ms = c.retry.backoff.count();
      p->number("backoff_ms", ms, 0, 3.6e6);
      c.retry.backoff = std::chrono::milliseconds(ms);
      p->finish();
    }
    if (auto p = r.object("artifacts")) {
      auto& s = c.sandbox;
      p->boolean("enabled", c.artifacts);
      p->boolean("execute", c.execute);
      p->boolean("check_links", c.check_links);
      p->number("max_parallel_executions", c.max_parallel_executions, 1, 64);
      p->path("sandbox_root", s.root);
      p->str("runtime", s.runtime);
      if (s.runtime != "auto" && s.runtime != "docker" && s.runtime != "namespace") {
        fail(ErrorCode::kConfig, "config.artifacts.runtime must be auto, docker or namespace");
      }
      p->str("image", s.image);
      p->path("image_recipe", s.image_recipe);
      p->number("size_ceiling_bytes", s.size_ceiling_bytes, 1, kHuge);
      p->number("per_file_token_budget", s.per_file_token_budget, 1, kHuge);
      p->number("chars_per_token", s.chars_per_token, 0.01, 1000);
      p->number("cpu_cores", s.cpu_cores, 0.1, 1024);
      p->number("memory_bytes", s.memory_bytes, 1 << 20, kHuge);
      p->number("max_processes", s.max_processes, 1, 1e6);
      p->number("max_file_bytes", s.max_file_bytes, 1, kHuge);
      p->number("execution_limit_s", s.limit_s, 1, 86400);
      p->number("fetch_timeout_s", s.fetch_timeout_s, 1, 86400);
      p->number("link_timeout_s", s.link_timeout_s, 1, 3600);
      p->number("max_redirects", s.max_redirects, 0, 100);
      p->str("zenodo_api", s.zenodo_api);
      p->path("log_dir", s.log_dir);
      if (const json* hosts = p->get("persistent_hosts")) {
        if (!hosts->is_array()) fail(ErrorCode::kConfig, "config.artifacts.persistent_hosts must be a list");
        for (const auto& h : *hosts) {
          if (!h.is_string()) fail(ErrorCode::kConfig, "config.artifacts.persistent_hosts entries must be strings");
          s.persistent_hosts.push_back(h);
        }
      }
      p->finish();
    }
    r.finish();
  }
  return c;
}

RunConfig load_run_config(const fs::path& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const Error& e) {
    fail(ErrorCode::kConfig, std::string("cannot read config: ") + e.what());
  }
  return parse_run_config(text, fs::absolute(path).parent_path());
}

}  // namespace recap::app
