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

#include "recap/artifact/fetch.hpp"

#include <stdlib.h>
#include <signal.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <json.hpp>
#include <set>

#include "recap/artifact/archive.hpp"
#include "recap/artifact/inventory.hpp"
#include "recap/artifact/links.hpp"
#include "recap/common/error.hpp"
#include "recap/common/http.hpp"
#include "recap/common/subprocess.hpp"
#include "recap/common/text.hpp"
#include "recap/ingest/urls.hpp"

namespace recap::artifact {

namespace {

using json = nlohmann::json;

struct Outcome {
  FetchStatus status = FetchStatus::kOk;
  bool partial = false;
  std::string message;
};

std::vector<std::string> path_segments(std::string_view url) {
  const size_t p = url.find("://");
  std::string_view rest = p == std::string_view::npos ? url : url.substr(p + 3);
  rest = rest.substr(0, rest.find_first_of("?#"));
  std::vector<std::string> segs;
  for (auto& s : text::split(rest, '/')) {
    if (!s.empty()) segs.push_back(s);
  }
  if (!segs.empty()) segs.erase(segs.begin());  // host
  return segs;
}

std::string percent_decode(std::string_view s) {
  std::string out;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '%' && i + 2 < s.size() && std::isxdigit(static_cast<unsigned char>(s[i + 1])) &&
        std::isxdigit(static_cast<unsigned char>(s[i + 2]))) {
      out += static_cast<char>(std::stoi(std::string(s.substr(i + 1, 2)), nullptr, 16));
      i += 2;
    } else {
      out += s[i];
    }
  }
  return out;
}

std::optional<std::string> zenodo_record(const std::string& host, const std::vector<std::string>& segs) {
  if (ingest::host_matches(host, "zenodo.org")) {
    if (segs.size() >= 2 && (segs[0] == "record" || segs[0] == "records")) {
      if (segs.size() >= 3 && segs[2] == "files") return std::nullopt;
      return segs[1];
    }
  }
  if (ingest::host_matches(host, "doi.org") && segs.size() >= 2 && segs[0] == "10.5281") {
    const std::string lower = text::to_lower(segs[1]);
    if (lower.rfind("zenodo.", 0) == 0) return lower.substr(7);
  }
  return std::nullopt;
}

bool is_git_dir(const fs::path& p) {
  std::error_code ec;
  if (fs::exists(p / ".git", ec)) return true;
  return fs::is_regular_file(p / "HEAD", ec) && fs::is_directory(p / "objects", ec);
}

std::string sanitize_name(std::string name) {
  for (char& c : name) {
    if (c == '/' || c == '\\' || c == '\0' || static_cast<unsigned char>(c) < 0x20) c = '_';
  }
  if (name.empty() || name == "." || name == "..") name = "download";
  return name;
}

std::string download_name(const http::Response& resp, const std::string& url) {
  const std::string& cd = resp.content_disposition;
  if (const size_t p = cd.find("filename="); p != std::string::npos) {
    std::string v = cd.substr(p + 9);
    v = v.substr(0, v.find(';'));
    if (!v.empty() && v.front() == '"') v = v.substr(1, v.find('"', 1) - 1);
    return sanitize_name(v);
  }
  const auto segs = path_segments(resp.final_url.empty() ? url : resp.final_url);
  return sanitize_name(segs.empty() ? "" : percent_decode(segs.back()));
}

FetchStatus status_for_http(long status) {
  if (status == 401 || status == 403) return FetchStatus::kAuthRequired;
  if (status == 404 || status == 410) return FetchStatus::kNotFound;
  return FetchStatus::kUnreachable;
}

// Moves a downloaded file into `work`: archives unpacked one level, other
// files copied as they are.
Outcome place_file(const fs::path& file, const std::string& name, const fs::path& work, uint64_t budget) {
  Outcome out;
  if (sniff_archive(file) != ArchiveKind::kNone) {
    const fs::path named = file.parent_path() / name;
    if (named != file) fs::rename(file, named);
    UnpackResult u = unpack_archive(named, work, budget);
    if (u.ok) {
      out.partial = u.partial;
      return out;
    }
    out.message = "unpack failed (" + u.message + "); kept as a file";
    fs::rename(named, work / name);
    return out;
  }
  fs::rename(file, work / name);
  return out;
}

Outcome download_into(const std::string& url, const fs::path& staging, const fs::path& work,
                      const SandboxConfig& config, uint64_t budget, const std::string& preferred_name = "") {
  Outcome out;
  fs::create_directories(staging);
  const fs::path tmp = staging / ".partial";
  std::FILE* f = std::fopen(tmp.c_str(), "wb");
  if (!f) fail(ErrorCode::kIo, "cannot create " + tmp.string());
  http::Request req;
  req.url = url;
  req.timeout_s = config.fetch_timeout_s;
  req.max_redirects = config.max_redirects;
  req.max_body_bytes = budget;
  req.sink = f;
  http::Response resp = http::perform(req);
  std::fclose(f);
  if (resp.body_limit_hit) {
    out.partial = true;
  } else if (!resp.transport_ok()) {
    out.status = FetchStatus::kUnreachable;
    out.message = resp.curl_error;
    return out;
  }
  if (resp.status < 200 || resp.status >= 300) {
    out.status = status_for_http(resp.status);
    out.message = "HTTP " + std::to_string(resp.status);
    return out;
  }
  std::string name = preferred_name.empty() ? download_name(resp, url) : sanitize_name(preferred_name);
  if (name == ".partial") name = "download";
  Outcome placed = place_file(tmp, name, work, budget);
  placed.partial = placed.partial || out.partial;
  return placed;
}

uint64_t dir_bytes(const fs::path& dir) {
  uint64_t total = 0;
  std::error_code ec;
  for (auto it = fs::recursive_directory_iterator(dir, ec); !ec && it != fs::recursive_directory_iterator();
       it.increment(ec)) {
    if (it->is_regular_file(ec) && !it->is_symlink(ec)) total += it->file_size(ec);
  }
  return total;
}

Outcome fetch_zenodo(const std::string& record, const fs::path& instance, const fs::path& work,
                     const SandboxConfig& config) {
  Outcome out;
  std::string api = config.zenodo_api;
  while (!api.empty() && api.back() == '/') api.pop_back();
  http::Request req;
  req.url = api + "/records/" + record;
  req.timeout_s = config.fetch_timeout_s;
  req.headers = {"Accept: application/json"};
  req.max_body_bytes = 16ull << 20;
  const http::Response resp = http::perform(req);
  if (!resp.transport_ok()) {
    out.status = FetchStatus::kUnreachable;
    out.message = resp.curl_error;
    return out;
  }
  if (resp.status != 200) {
    out.status = status_for_http(resp.status);
    out.message = "records API returned HTTP " + std::to_string(resp.status);
    return out;
  }
  json doc = json::parse(resp.body, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    out.status = FetchStatus::kUnreachable;
    out.message = "records API returned malformed JSON";
    return out;
  }
  json files = doc.value("files", json::array());
  if (files.is_object() && files.contains("entries")) files = files["entries"];
  std::vector<std::pair<std::string, std::string>> entries;
  auto add = [&](const json& f) {
    if (!f.is_object()) return;
    std::string key = f.value("key", f.value("filename", ""));
    std::string link;
    if (f.contains("links") && f["links"].is_object()) {
      const auto& l = f["links"];
      link = l.value("content", l.value("self", l.value("download", "")));
    }
    if (!link.empty()) entries.emplace_back(key, link);
  };
  if (files.is_array()) {
    for (const auto& f : files) add(f);
  } else if (files.is_object()) {
    for (const auto& [k, f] : files.items()) add(f);
  }
  std::sort(entries.begin(), entries.end());
  for (const auto& [key, link] : entries) {
    const uint64_t used = dir_bytes(work);
    if (used >= config.size_ceiling_bytes) {
      out.partial = true;
      break;
    }
    Outcome one = download_into(link, instance / "download", work, config, config.size_ceiling_bytes - used, key);
    if (one.status != FetchStatus::kOk) return one;
    out.partial = out.partial || one.partial;
    if (!one.message.empty()) out.message += one.message + "\n";
  }
  return out;
}

Outcome clone_git(const std::string& url, const fs::path& work, const SandboxConfig& config) {
  Outcome out;
  ProcessSpec spec;
  spec.argv = {"git", "-c", "credential.helper=", "-c", "core.askPass=", "clone", "--depth", "1", "--quiet",
               "--no-tags", "--", url, work.string()};
  std::vector<std::string> env;
  for (char** e = environ; *e; ++e) {
    const std::string_view kv(*e);
    if (kv.rfind("GIT_", 0) == 0 || kv.rfind("SSH_ASKPASS=", 0) == 0) continue;
    env.emplace_back(kv);
  }
  env.emplace_back("GIT_TERMINAL_PROMPT=0");
  env.emplace_back("GIT_ASKPASS=/bin/false");
  env.emplace_back("SSH_ASKPASS=/bin/false");
  env.emplace_back("GIT_SSH_COMMAND=ssh -oBatchMode=yes");
  spec.env = env;
  spec.timeout = std::chrono::milliseconds(static_cast<long long>(config.fetch_timeout_s * 1000));
  // The pack may legitimately exceed the checkout ceiling a little.
  spec.limits.file_size_bytes = config.size_ceiling_bytes + (64ull << 20);
  const ProcessResult r = run_process(spec);
  if (r.ok()) return out;
  if (r.term_signal == SIGXFSZ) {
    out.partial = true;
    out.message = "clone stopped at the size ceiling";
    std::error_code ec;
    fs::create_directories(work, ec);
    return out;
  }
  const std::string log = text::to_lower(r.output);
  out.message = std::string(text::trim(r.output));
  if (!r.started) {
    out.message = "cannot run git: " + std::string(std::strerror(r.setup_errno));
    out.status = FetchStatus::kUnreachable;
  } else if (r.timed_out) {
    out.message = "git clone timed out";
    out.status = FetchStatus::kUnreachable;
  } else if (log.find("not found") != std::string::npos || log.find("does not exist") != std::string::npos ||
             log.find("does not appear to be a git repository") != std::string::npos ||
             log.find(" 404") != std::string::npos) {
    out.status = FetchStatus::kNotFound;
  } else if (log.find("authentication") != std::string::npos || log.find("could not read username") != std::string::npos ||
             log.find("could not read password") != std::string::npos || log.find(" 401") != std::string::npos ||
             log.find(" 403") != std::string::npos || log.find("permission denied") != std::string::npos) {
    out.status = FetchStatus::kAuthRequired;
  } else {
    out.status = FetchStatus::kUnreachable;
  }
  return out;
}

Outcome copy_local(const fs::path& src, const fs::path& work, const SandboxConfig& config) {
  Outcome out;
  std::error_code ec;
  if (fs::is_directory(src, ec)) {
    fs::copy(src, work, fs::copy_options::recursive | fs::copy_options::skip_symlinks, ec);
    if (ec) {
      out.status = FetchStatus::kUnreachable;
      out.message = ec.message();
    }
    return out;
  }
  if (!fs::is_regular_file(src, ec)) {
    out.status = FetchStatus::kNotFound;
    out.message = "no such file: " + src.string();
    return out;
  }
  const fs::path staging = work.parent_path() / "download";
  fs::create_directories(staging);
  const fs::path tmp = staging / ".partial";
  fs::copy_file(src, tmp, fs::copy_options::overwrite_existing);
  return place_file(tmp, sanitize_name(src.filename().string()), work, config.size_ceiling_bytes);
}

}  // namespace

FetchPlan plan_fetch(std::string_view raw) {
  FetchPlan plan;
  const std::string url(text::trim(raw));
  const std::string lower = text::to_lower(url);
  if (lower.rfind("file://", 0) == 0) {
    const fs::path p = percent_decode(url.substr(7));
    plan.method = is_git_dir(p) ? FetchMethod::kGit : FetchMethod::kLocal;
    plan.source = plan.method == FetchMethod::kGit ? "file://" + p.string() : p.string();
    return plan;
  }
  if (lower.rfind("git://", 0) == 0 || lower.rfind("ssh://", 0) == 0) {
    plan.method = FetchMethod::kGit;
    plan.source = url;
    return plan;
  }
  const std::string normalized = request_url(url).value_or(url);
  const std::string host = ingest::url_host(normalized);
  const auto segs = path_segments(normalized);
  plan.source = normalized;
  if (auto rec = zenodo_record(host, segs)) {
    plan.method = FetchMethod::kZenodo;
    plan.source = *rec;
    return plan;
  }
  const std::string path_only = normalized.substr(0, normalized.find_first_of("?#"));
  if (text::to_lower(path_only).size() > 4 && text::to_lower(path_only).substr(path_only.size() - 4) == ".git") {
    plan.method = FetchMethod::kGit;
    return plan;
  }
  const std::string scheme = normalized.substr(0, normalized.find("://"));
  if ((ingest::host_matches(host, "github.com") || ingest::host_matches(host, "bitbucket.org") ||
       ingest::host_matches(host, "codeberg.org") || ingest::host_matches(host, "gitee.com")) &&
      segs.size() >= 2) {
    static const std::set<std::string> kDownloadViews = {"releases", "archive", "raw", "downloads", "get"};
    if (segs.size() >= 3 && kDownloadViews.count(segs[2])) return plan;
    plan.method = FetchMethod::kGit;
    plan.source = scheme + "://" + host + "/" + segs[0] + "/" + segs[1];
    return plan;
  }
  if (host == "gitlab.com" || host.rfind("gitlab.", 0) == 0) {
    std::string repo;
    for (const auto& s : segs) {
      if (s == "-") break;
      repo += "/" + s;
    }
    if (segs.size() >= 2 && repo.size() > 1) {
      plan.method = FetchMethod::kGit;
      plan.source = scheme + "://" + host + repo;
    }
  }
  return plan;
}

fs::path create_instance(const SandboxConfig& config) {
  const fs::path root = config.root.empty() ? fs::temp_directory_path() / "recap-sandbox" : config.root;
  fs::create_directories(root);
  std::string tmpl = (root / "sbx-XXXXXX").string();
  if (!mkdtemp(tmpl.data())) fail(ErrorCode::kIo, "cannot create sandbox instance under " + root.string());
  return tmpl;
}

RepositorySnapshot fetch_artifact(const std::string& url, const SandboxConfig& config) {
  RepositorySnapshot snap;
  snap.origin_url = url;
  const FetchPlan plan = plan_fetch(url);
  const fs::path instance = create_instance(config);
  const fs::path work = instance / "work";
  Outcome outcome;
  switch (plan.method) {
    case FetchMethod::kGit:
      snap.method = "git";
      outcome = clone_git(plan.source, work, config);
      break;
    case FetchMethod::kZenodo:
      snap.method = "zenodo";
      fs::create_directories(work);
      outcome = fetch_zenodo(plan.source, instance, work, config);
      break;
    case FetchMethod::kDownload:
      snap.method = "download";
      fs::create_directories(work);
      outcome = download_into(plan.source, instance / "download", work, config, config.size_ceiling_bytes);
      break;
    case FetchMethod::kLocal:
      snap.method = "local";
      outcome = copy_local(plan.source, work, config);
      break;
  }
  snap.fetched_at = std::chrono::system_clock::now();
  std::error_code ec;
  fs::remove_all(instance / "download", ec);
  snap.fetch_status = outcome.status;
  snap.message = outcome.message;
  if (outcome.status != FetchStatus::kOk) {
    fs::remove_all(work, ec);
    return snap;
  }
  fs::create_directories(work);
  const InventoryResult inv = build_inventory(work, config.size_ceiling_bytes, TokenEstimator(config.chars_per_token),
                                              config.per_file_token_budget);
  snap.files = inv.files;
  snap.partial = outcome.partial || inv.partial;
  snap.local_dir = work;
  return snap;
}

}  // namespace recap::artifact
