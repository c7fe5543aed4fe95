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

#include "recap/artifact/links.hpp"

#include <chrono>

#include "recap/common/http.hpp"
#include "recap/common/resources.hpp"
#include "recap/common/text.hpp"
#include "recap/ingest/urls.hpp"

namespace recap::artifact {

namespace {

std::string status_class_for_http(long status) {
  if (status >= 200 && status < 300) return "ok";
  if (status == 401 || status == 403) return "auth_required";
  if (status == 404 || status == 410) return "not_found";
  if (status >= 300 && status < 400) return "redirect_limit";
  if (status >= 400 && status < 500) return "client_error";
  if (status >= 500) return "server_error";
  return "error";
}

std::string status_class_for_transport(http::TransportFailure f) {
  switch (f) {
    case http::TransportFailure::kNone: return "ok";
    case http::TransportFailure::kDns: return "dns_failure";
    case http::TransportFailure::kConnect: return "connect_failed";
    case http::TransportFailure::kTimeout: return "timeout";
    case http::TransportFailure::kTls: return "tls_error";
    case http::TransportFailure::kInvalidUrl: return "invalid_url";
    case http::TransportFailure::kRedirectLimit: return "redirect_limit";
    case http::TransportFailure::kOther: return "error";
  }
  return "error";
}

bool retry_with_get(const http::Response& r) {
  if (!r.transport_ok()) return http::classify_transport(r.curl_code) == http::TransportFailure::kOther;
  return r.status == 403 || r.status == 405 || r.status == 501 || r.status == 400;
}

}  // namespace

std::optional<std::string> request_url(std::string_view url) {
  const std::string trimmed(text::trim(url));
  const std::string lower = text::to_lower(trimmed);
  if (lower.rfind("http://", 0) == 0 || lower.rfind("https://", 0) == 0) return trimmed;
  return ingest::normalize_url(trimmed);
}

AccessibilityResult check_link(const std::string& url, const SandboxConfig& config) {
  AccessibilityResult result;
  const auto normalized = request_url(url);
  if (!normalized) {
    result.checked_at = std::chrono::system_clock::now();
    result.status_class = "invalid_url";
    return result;
  }
  http::Request req;
  req.method = "HEAD";
  req.url = *normalized;
  req.timeout_s = config.link_timeout_s;
  req.connect_timeout_s = std::min(config.link_timeout_s, 10.0);
  req.max_redirects = config.max_redirects;
  http::Response resp = http::perform(req);
  if (retry_with_get(resp)) {
    req.method = "GET";
    req.stop_after_first_chunk = true;
    resp = http::perform(req);
  }
  result.checked_at = std::chrono::system_clock::now();
  result.http_status = resp.status;
  result.final_url = resp.final_url;
  result.redirects = static_cast<int>(resp.redirects);
  if (!resp.transport_ok()) {
    result.status_class = status_class_for_transport(http::classify_transport(resp.curl_code));
  } else {
    result.status_class = status_class_for_http(resp.status);
  }
  result.accessible = result.status_class == "ok";
  return result;
}

std::vector<std::string> default_persistent_hosts() {
  std::vector<std::string> hosts;
  for (const auto& line : text::split(resources::persistent_hosts(), '\n')) {
    const auto t = text::trim(line);
    if (t.empty() || t.front() == '#') continue;
    hosts.push_back(text::to_lower(t));
  }
  return hosts;
}

bool is_persistent_host(std::string_view url, const std::vector<std::string>& extra_hosts) {
  static const std::vector<std::string> builtin = default_persistent_hosts();
  const auto normalized = ingest::normalize_url(url);
  if (!normalized) return false;
  const std::string host = ingest::url_host(*normalized);
  if (host.empty()) return false;
  for (const auto& d : builtin) {
    if (ingest::host_matches(host, d)) return true;
  }
  for (const auto& d : extra_hosts) {
    if (ingest::host_matches(host, text::to_lower(text::trim(d)))) return true;
  }
  return false;
}

}  // namespace recap::artifact
