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

#include "recap/ingest/urls.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "recap/common/text.hpp"

namespace recap::ingest {

namespace {

constexpr std::array<std::string_view, 9> kRepositoryHosts = {
    "github.com", "gitlab.com", "bitbucket.org", "sourceforge.net", "codeberg.org",
    "gitee.com",  "sr.ht",      "git.sr.ht",     "gitlab.io"};
constexpr std::array<std::string_view, 14> kArchiveHosts = {
    "zenodo.org",     "doi.org",           "figshare.com",      "osf.io",        "archive.org",
    "softwareheritage.org", "datadryad.org", "dataverse.harvard.edu", "dataverse.org", "hal.science",
    "hal.archives-ouvertes.fr", "dl.acm.org", "researchdata.edu.au", "b2share.eudat.eu"};
constexpr std::array<std::string_view, 8> kDatasetHosts = {
    "kaggle.com", "data.world", "archive.ics.uci.edu", "openml.org",
    "physionet.org", "data.gov", "registry.opendata.aws", "datasets.d2.mpi-inf.mpg.de"};

// Scheme-less forms recognised without "http" or "www".
constexpr std::array<std::string_view, 8> kBareHosts = {
    "github.com/", "gitlab.com/", "bitbucket.org/", "zenodo.org/",
    "doi.org/",    "osf.io/",     "figshare.com/",  "codeberg.org/"};

bool is_url_char(unsigned char c) {
  if (std::isalnum(c)) return true;
  switch (c) {
    case '-': case '.': case '_': case '~': case ':': case '/': case '?': case '#': case '[':
    case ']': case '@': case '!': case '$': case '&': case '\'': case '(': case ')': case '*':
    case '+': case ',': case ';': case '=': case '%':
      return true;
    default:
      return false;
  }
}

bool starts_with_ci(std::string_view s, size_t pos, std::string_view prefix) {
  if (pos + prefix.size() > s.size()) return false;
  return text::iequals(s.substr(pos, prefix.size()), prefix);
}

bool boundary_before(std::string_view s, size_t pos) {
  if (pos == 0) return true;
  const unsigned char c = static_cast<unsigned char>(s[pos - 1]);
  return !(std::isalnum(c) || c == '.' || c == '/' || c == '-' || c == '_' || c == '@' || c == ':');
}

// Length of the candidate starting at `pos`, or 0.
size_t match_start(std::string_view s, size_t pos) {
  static constexpr std::array<std::string_view, 9> kSchemes = {
      "https://", "http://", "https//", "http//", "https:/", "http:/", "ftp://", "www.", "doi:10."};
  if (!boundary_before(s, pos)) return 0;
  for (std::string_view p : kSchemes) {
    if (starts_with_ci(s, pos, p)) return p.size();
  }
  for (std::string_view h : kBareHosts) {
    if (starts_with_ci(s, pos, h)) return h.size();
  }
  return 0;
}

std::string_view strip_trailing(std::string_view url) {
  for (;;) {
    if (url.empty()) return url;
    const char c = url.back();
    if (c == '.' || c == ',' || c == ';' || c == ':' || c == '!' || c == '?' || c == '\'' || c == '*') {
      url.remove_suffix(1);
      continue;
    }
    if (c == ')' || c == ']') {
      const char open = c == ')' ? '(' : '[';
      const auto opens = std::count(url.begin(), url.end(), open);
      const auto closes = std::count(url.begin(), url.end(), c);
      if (closes > opens) {
        url.remove_suffix(1);
        continue;
      }
    }
    return url;
  }
}

bool valid_host(std::string_view host) {
  if (host.empty() || host.size() > 253) return false;
  if (host.front() == '.' || host.back() == '.' || host.find("..") != std::string_view::npos) return false;
  if (host != "localhost" && host.find('.') == std::string_view::npos) return false;
  for (char c : host) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-')) return false;
  }
  const size_t dot = host.rfind('.');
  if (dot != std::string_view::npos) {
    std::string_view tld = host.substr(dot + 1);
    if (tld.size() < 2 || !std::all_of(tld.begin(), tld.end(), [](char c) { return std::isalpha(static_cast<unsigned char>(c)); })) {
      return false;
    }
  }
  return true;
}

}  // namespace

std::string_view to_string(LinkKind kind) {
  switch (kind) {
    case LinkKind::kRepository: return "repository";
    case LinkKind::kArchive: return "archive";
    case LinkKind::kDataset: return "dataset";
    case LinkKind::kOther: return "other";
  }
  return "other";
}

std::optional<LinkKind> parse_link_kind(std::string_view s) {
  for (LinkKind k : {LinkKind::kRepository, LinkKind::kArchive, LinkKind::kDataset, LinkKind::kOther}) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

bool host_matches(std::string_view host, std::string_view domain) {
  if (host.size() < domain.size()) return false;
  if (host == domain) return true;
  return host.size() > domain.size() && host.substr(host.size() - domain.size()) == domain &&
         host[host.size() - domain.size() - 1] == '.';
}

std::optional<std::string> normalize_url(std::string_view raw) {
  std::string s(text::trim(raw));
  std::string scheme = "https";
  std::string rest;
  const std::string lower = text::to_lower(s);
  if (lower.rfind("doi:", 0) == 0) {
    rest = "doi.org/" + s.substr(4);
  } else {
    size_t colon = lower.find(':');
    size_t slash = lower.find('/');
    const bool has_scheme_word = [&] {
      for (std::string_view sc : {"https", "http", "ftp"}) {
        if (lower.rfind(sc, 0) == 0) {
          const std::string_view after = std::string_view(lower).substr(sc.size());
          if (after.rfind("://", 0) == 0 || after.rfind(":/", 0) == 0 || after.rfind("//", 0) == 0) return true;
        }
      }
      return false;
    }();
    if (has_scheme_word) {
      const size_t end = lower.find_first_of(":/");
      scheme = lower.substr(0, end);
      size_t p = end;
      while (p < s.size() && (s[p] == ':' || s[p] == '/')) ++p;
      rest = s.substr(p);
    } else {
      (void)colon;
      (void)slash;
      rest = s;
    }
  }
  const size_t host_end = rest.find_first_of("/?#");
  std::string authority = rest.substr(0, host_end);
  std::string tail = host_end == std::string::npos ? "" : rest.substr(host_end);
  if (const size_t at = authority.rfind('@'); at != std::string::npos) authority = authority.substr(at + 1);
  std::string host = text::to_lower(authority);
  std::string port;
  if (const size_t c = host.find(':'); c != std::string::npos) {
    port = host.substr(c + 1);
    host = host.substr(0, c);
    if (!std::all_of(port.begin(), port.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
      return std::nullopt;
    }
    if ((scheme == "https" && port == "443") || (scheme == "http" && port == "80") || port.empty()) port.clear();
  }
  if (!valid_host(host)) return std::nullopt;
  if (const size_t hash = tail.find('#'); hash != std::string::npos) tail.resize(hash);
  std::string path = tail, query;
  if (const size_t q = tail.find('?'); q != std::string::npos) {
    path = tail.substr(0, q);
    query = tail.substr(q);
    if (query == "?") query.clear();
  }
  while (!path.empty() && path.back() == '/') path.pop_back();
  std::string out = scheme + "://" + host;
  if (!port.empty()) out += ":" + port;
  out += path;
  out += query;
  return out;
}

std::string url_host(std::string_view url) {
  const size_t p = url.find("://");
  std::string_view rest = p == std::string_view::npos ? url : url.substr(p + 3);
  rest = rest.substr(0, rest.find_first_of("/?#"));
  rest = rest.substr(0, rest.find(':'));
  return text::to_lower(rest);
}

LinkKind classify_url(std::string_view url) {
  const std::string host = url_host(url);
  const size_t p = url.find("://");
  std::string_view path = p == std::string_view::npos ? url : url.substr(p + 3);
  path = path.substr(std::min(path.size(), path.find('/')));
  if (host_matches(host, "huggingface.co")) {
    return path.rfind("/datasets", 0) == 0 ? LinkKind::kDataset : LinkKind::kRepository;
  }
  for (std::string_view d : kDatasetHosts) {
    if (host_matches(host, d)) return LinkKind::kDataset;
  }
  for (std::string_view d : kArchiveHosts) {
    if (host_matches(host, d)) return LinkKind::kArchive;
  }
  for (std::string_view d : kRepositoryHosts) {
    if (host_matches(host, d)) return LinkKind::kRepository;
  }
  if (host.rfind("gitlab.", 0) == 0 || host.rfind("git.", 0) == 0) return LinkKind::kRepository;
  return LinkKind::kOther;
}

std::vector<LinkRef> extract_urls(std::string_view text) {
  std::vector<LinkRef> out;
  std::set<std::string> seen;
  size_t pos = 0;
  size_t cp_index = 0;  // code points before `pos`
  while (pos < text.size()) {
    const size_t prefix = match_start(text, pos);
    if (prefix == 0) {
      const unsigned char c = static_cast<unsigned char>(text[pos]);
      ++pos;
      if ((c & 0xC0) != 0x80) ++cp_index;
      continue;
    }
    size_t end = pos + prefix;
    while (end < text.size() && is_url_char(static_cast<unsigned char>(text[end]))) ++end;
    const std::string_view raw = strip_trailing(text.substr(pos, end - pos));
    const size_t consumed = std::max(raw.size(), prefix);
    if (raw.size() > prefix) {
      if (auto url = normalize_url(raw); url && seen.insert(*url).second) {
        LinkRef ref;
        ref.kind = classify_url(*url);
        ref.url = std::move(*url);
        ref.source_offset = cp_index;
        ref.raw = std::string(raw);
        out.push_back(std::move(ref));
      }
    }
    cp_index += consumed;  // URL characters are ASCII
    pos += consumed;
  }
  return out;
}

}  // namespace recap::ingest
