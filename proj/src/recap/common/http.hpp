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

#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

namespace recap::http {

struct Request {
  std::string method = "GET";  // GET, HEAD, POST
  std::string url;
  std::vector<std::string> headers;  // "Name: value"
  std::string body;
  double timeout_s = 30;
  double connect_timeout_s = 10;
  bool follow_redirects = true;
  int max_redirects = 10;
  uint64_t max_body_bytes = 64ull << 20;  // exceeding it aborts the transfer
  std::FILE* sink = nullptr;             // body goes here instead of Response::body
  bool stop_after_first_chunk = false;   // probe mode: status is enough
};

struct Response {
  int curl_code = 0;         // CURLcode
  std::string curl_error;
  long status = 0;
  std::string final_url;
  long redirects = 0;
  std::string body;
  uint64_t body_bytes = 0;
  bool body_limit_hit = false;
  std::string content_type;
  std::string content_disposition;

  bool transport_ok() const { return curl_code == 0; }
};

Response perform(const Request& request);

// CURLcode classification used across the library.
enum class TransportFailure { kNone, kDns, kConnect, kTimeout, kTls, kInvalidUrl, kRedirectLimit, kOther };
TransportFailure classify_transport(int curl_code);

}  // namespace recap::http
