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

#include "recap/artifact/execution.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <regex>
#include <set>

#include "recap/common/files.hpp"
#include "recap/common/text.hpp"

namespace recap::artifact {

namespace {

struct Interpreter {
  std::string_view ext;
  std::string_view command;
};

constexpr std::array<Interpreter, 7> kInterpreters = {{{".py", "python3"},
                                                       {".sh", "sh"},
                                                       {".R", "Rscript"},
                                                       {".r", "Rscript"},
                                                       {".jl", "julia"},
                                                       {".js", "node"},
                                                       {".pl", "perl"}}};

constexpr std::array<std::string_view, 12> kMainFiles = {"main.py", "run.py",  "__main__.py", "run.sh",
                                                         "main.sh", "run_all.sh", "main.R", "run.R",
                                                         "main.jl", "run.jl",  "main.js", "index.js"};

std::string shell_quote(std::string_view s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

std::optional<std::string> interpreter_for(std::string_view file) {
  for (const auto& i : kInterpreters) {
    if (file.size() > i.ext.size() && file.substr(file.size() - i.ext.size()) == i.ext) return std::string(i.command);
  }
  return std::nullopt;
}

// Strips shell prompts and inline comments from a README line.
std::string clean_command(std::string_view line) {
  std::string s(text::trim(line));
  for (std::string_view prompt : {"$ ", "> ", "% ", "# "}) {
    if (s.rfind(prompt, 0) == 0) {
      s = std::string(text::trim(s.substr(prompt.size())));
      break;
    }
  }
  if (const size_t hash = s.find(" #"); hash != std::string::npos) s.resize(hash);
  return std::string(text::trim(s));
}

std::optional<Entrypoint> readme_entrypoint(const RepositorySnapshot& snap, const std::set<std::string>& files) {
  static const std::regex kScriptCmd(
      R"(^(python3?|python3\.\d+|bash|sh|Rscript|julia|node|perl)\s+(?:-u\s+)?(\.?/?[\w./-]+\.(py|sh|R|r|jl|js|pl))(\s.*)?$)");
  static const std::regex kDirectCmd(R"(^\./([\w./-]+)(\s.*)?$)");
  static const std::regex kMakeCmd(R"(^make(\s+[\w.-]+)?\s*$)");
  for (const auto& f : snap.files) {
    if (f.path.find('/') != std::string::npos || !f.is_text) continue;
    const std::string lower = text::to_lower(f.path);
    if (lower.rfind("readme", 0) != 0) continue;
    for (const auto& raw : text::split(f.truncated_content, '\n')) {
      const std::string line = clean_command(raw);
      std::smatch m;
      if (std::regex_match(line, m, kScriptCmd)) {
        std::string script = m[2].str();
        if (script.rfind("./", 0) == 0) script = script.substr(2);
        if (files.count(script)) return Entrypoint{EntrypointSource::kReadme, line, f.path + ": " + line};
      } else if (std::regex_match(line, m, kDirectCmd)) {
        if (files.count(m[1].str())) return Entrypoint{EntrypointSource::kReadme, line, f.path + ": " + line};
      } else if (std::regex_match(line, m, kMakeCmd)) {
        if (files.count("Makefile") || files.count("makefile") || files.count("GNUmakefile")) {
          return Entrypoint{EntrypointSource::kReadme, line, f.path + ": " + line};
        }
      }
    }
  }
  return std::nullopt;
}

// Builds, then runs the newest executable the build created.
std::string build_then_run(const std::string& build) {
  return "set -e; find . -type f -perm -u+x -not -path './.git/*' | sort > /tmp/.before; " + build +
         "; find . -type f -perm -u+x -not -path './.git/*' | sort > /tmp/.after; "
         "bin=$(comm -13 /tmp/.before /tmp/.after | xargs -r ls -t | head -n 1); "
         "if [ -z \"$bin\" ]; then echo 'build produced no executable' >&2; exit 1; fi; "
         "echo \"running $bin\" >&2; exec \"$bin\"";
}

std::string tail_bytes(const std::string& s, size_t n) {
  if (s.size() <= n) return s;
  size_t start = s.size() - n;
  while (start < s.size() && (static_cast<unsigned char>(s[start]) & 0xC0) == 0x80) ++start;
  return s.substr(start);
}

}  // namespace

std::string_view to_string(EntrypointSource s) {
  switch (s) {
    case EntrypointSource::kReadme: return "readme";
    case EntrypointSource::kMainFile: return "main_file";
    case EntrypointSource::kBuildScript: return "build_script";
  }
  return "main_file";
}

std::optional<Entrypoint> find_entrypoint(const RepositorySnapshot& snapshot) {
  std::set<std::string> files;
  for (const auto& f : snapshot.files) files.insert(f.path);
  if (auto e = readme_entrypoint(snapshot, files)) return e;
  for (std::string_view name : kMainFiles) {
    if (!files.count(std::string(name))) continue;
    return Entrypoint{EntrypointSource::kMainFile, *interpreter_for(name) + " " + shell_quote(name),
                      std::string(name)};
  }
  for (std::string_view mk : {"Makefile", "makefile", "GNUmakefile"}) {
    if (files.count(std::string(mk))) {
      return Entrypoint{EntrypointSource::kBuildScript, build_then_run("make"), std::string(mk)};
    }
  }
  if (files.count("build.sh")) {
    return Entrypoint{EntrypointSource::kBuildScript, build_then_run("sh build.sh"), "build.sh"};
  }
  if (files.count("CMakeLists.txt")) {
    return Entrypoint{EntrypointSource::kBuildScript,
                      build_then_run("cmake -S . -B build >/dev/null && cmake --build build"), "CMakeLists.txt"};
  }
  return std::nullopt;
}

ExecutionResult attempt_execution(const RepositorySnapshot& snapshot, double limit_s, const SandboxConfig& config) {
  auto runtime = make_runtime(config);
  return attempt_execution(snapshot, limit_s, config, *runtime);
}

ExecutionResult attempt_execution(const RepositorySnapshot& snapshot, double limit_s, const SandboxConfig& config,
                                  SandboxRuntime& runtime) {
  ExecutionResult result;
  result.runtime = runtime.name();
  if (snapshot.fetch_status != FetchStatus::kOk || snapshot.local_dir.empty()) {
    result.reason = ExecutionReason::kSandboxError;
    result.log_excerpt = "no fetched snapshot to execute";
    return result;
  }
  const auto entry = find_entrypoint(snapshot);
  if (!entry) {
    result.reason = ExecutionReason::kNoEntrypoint;
    return result;
  }
  result.entrypoint = entry->command;

  const fs::path instance = snapshot.local_dir.parent_path();
  const fs::path marker = instance / ".executed";
  // One execution per sandbox instance.
  const int fd = open(marker.c_str(), O_CREAT | O_EXCL | O_WRONLY | O_CLOEXEC, 0600);
  if (fd < 0) {
    result.reason = ExecutionReason::kSandboxError;
    result.log_excerpt = "sandbox instance already used for an execution";
    return result;
  }
  close(fd);

  if (auto why = runtime.unavailable_reason()) {
    result.reason = ExecutionReason::kSandboxError;
    result.log_excerpt = *why;
    return result;
  }
  if (auto why = runtime.prepare(config)) {
    result.reason = ExecutionReason::kSandboxError;
    result.log_excerpt = *why;
    return result;
  }
  const SandboxOutcome out = runtime.run(SandboxRun{entry->command, snapshot.local_dir, limit_s}, config);
  result.duration_s = out.duration_s;

  std::string log = "runtime: " + runtime.name() + "\nentrypoint (" + std::string(to_string(entry->source)) +
                    ", " + entry->origin + "): " + entry->command + "\n";
  if (!out.established) {
    result.reason = ExecutionReason::kSandboxError;
    log += "sandbox error: " + out.error + "\n";
  } else if (out.timed_out) {
    result.reason = ExecutionReason::kTimeout;
  } else if (out.term_signal == 0 && out.exit_code == 0) {
    result.reason = ExecutionReason::kExitOk;
    result.verdict = 'Y';
  } else {
    result.reason = ExecutionReason::kNonzeroExit;
  }
  log += "reason: " + std::string(to_string(result.reason)) + "\nduration_s: " + std::to_string(out.duration_s) +
         "\nexit_code: " + std::to_string(out.exit_code) + "\nsignal: " + std::to_string(out.term_signal) +
         "\n--- output ---\n" + out.output;
  result.log_excerpt = tail_bytes(out.established ? out.output : out.error, config.log_excerpt_bytes);

  const fs::path log_dir = config.log_dir.empty() ? instance : config.log_dir;
  fs::create_directories(log_dir);
  const std::string log_name =
      config.log_dir.empty() ? "execution.log" : instance.filename().string() + ".execution.log";
  write_file_atomic(log_dir / log_name, log);
  return result;
}

}  // namespace recap::artifact
