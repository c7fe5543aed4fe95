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

#include "recap/common/subprocess.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/resource.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstdlib>
#include <cstring>

#include "recap/common/error.hpp"

namespace recap {

namespace {

struct CStrings {
  std::vector<std::string> storage;
  std::vector<char*> ptrs;

  explicit CStrings(const std::vector<std::string>& values) : storage(values) {
    for (auto& s : storage) ptrs.push_back(s.data());
    ptrs.push_back(nullptr);
  }
};

void apply_limit(int resource, rlim_t value) {
  rlimit rl{value, value};
  setrlimit(resource, &rl);
}

[[noreturn]] void child_fail(int fd, int err) {
  (void)!write(fd, &err, sizeof(err));
  _exit(127);
}

}  // namespace

ProcessResult run_process(const ProcessSpec& spec) {
  if (spec.argv.empty()) fail(ErrorCode::kInvalidArgument, "empty argv");

  ProcessResult result;
  CStrings argv(spec.argv);
  std::optional<CStrings> envp;
  if (spec.env) envp.emplace(*spec.env);
  const std::string cwd = spec.cwd.string();

  int out_pipe[2];
  int err_pipe[2];
  if (pipe2(out_pipe, O_CLOEXEC) != 0) fail(ErrorCode::kIo, "pipe failed");
  if (pipe2(err_pipe, O_CLOEXEC) != 0) {
    close(out_pipe[0]);
    close(out_pipe[1]);
    fail(ErrorCode::kIo, "pipe failed");
  }

  const auto start = std::chrono::steady_clock::now();
  const pid_t pid = fork();
  if (pid < 0) {
    for (int fd : {out_pipe[0], out_pipe[1], err_pipe[0], err_pipe[1]}) close(fd);
    fail(ErrorCode::kIo, std::string("fork failed: ") + std::strerror(errno));
  }

  if (pid == 0) {
    setpgid(0, 0);
    close(out_pipe[0]);
    close(err_pipe[0]);
    dup2(out_pipe[1], STDOUT_FILENO);
    dup2(out_pipe[1], STDERR_FILENO);
    const int devnull = open("/dev/null", O_RDONLY);
    if (devnull >= 0) dup2(devnull, STDIN_FILENO);
    if (!cwd.empty() && chdir(cwd.c_str()) != 0) child_fail(err_pipe[1], errno);
    if (spec.limits.address_space_bytes) apply_limit(RLIMIT_AS, *spec.limits.address_space_bytes);
    if (spec.limits.cpu_seconds) apply_limit(RLIMIT_CPU, *spec.limits.cpu_seconds);
    if (spec.limits.max_processes) apply_limit(RLIMIT_NPROC, *spec.limits.max_processes);
    if (spec.limits.file_size_bytes) apply_limit(RLIMIT_FSIZE, *spec.limits.file_size_bytes);
    if (spec.child_setup) {
      if (const int rc = spec.child_setup(spec.child_setup_context); rc != 0) child_fail(err_pipe[1], rc);
    }
    if (envp) {
      execvpe(argv.ptrs[0], argv.ptrs.data(), envp->ptrs.data());
    } else {
      execvp(argv.ptrs[0], argv.ptrs.data());
    }
    child_fail(err_pipe[1], errno);
  }

  setpgid(pid, pid);
  close(out_pipe[1]);
  close(err_pipe[1]);
  result.started = true;

  const auto deadline = start + spec.timeout;
  const bool bounded = spec.timeout.count() > 0;
  bool out_open = true;
  bool err_open = true;
  bool exited = false;
  int status = 0;
  char buf[4096];

  while (true) {
    if (!exited) {
      const pid_t w = waitpid(pid, &status, WNOHANG);
      if (w == pid) exited = true;
    }
    if (exited && !out_open && !err_open) break;

    int wait_ms = 50;
    if (bounded && !exited) {
      const auto now = std::chrono::steady_clock::now();
      if (now >= deadline) {
        result.timed_out = true;
        kill(-pid, SIGKILL);
        kill(pid, SIGKILL);
        waitpid(pid, &status, 0);
        exited = true;
        break;
      }
      const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count();
      wait_ms = static_cast<int>(std::min<long long>(left, 50));
    }

    pollfd fds[2];
    int nfds = 0;
    if (out_open) fds[nfds++] = {out_pipe[0], POLLIN, 0};
    if (err_open) fds[nfds++] = {err_pipe[0], POLLIN, 0};
    if (nfds == 0) {
      if (!exited) {
        // Output closed but process alive; keep polling the exit status.
        usleep(static_cast<useconds_t>(wait_ms) * 1000);
      }
      continue;
    }
    if (poll(fds, nfds, wait_ms) <= 0) continue;
    for (int i = 0; i < nfds; ++i) {
      if (!(fds[i].revents & (POLLIN | POLLHUP | POLLERR))) continue;
      const ssize_t n = read(fds[i].fd, buf, sizeof(buf));
      if (fds[i].fd == out_pipe[0]) {
        if (n <= 0) {
          out_open = false;
          continue;
        }
        const size_t room = spec.max_output_bytes > result.output.size()
                                ? spec.max_output_bytes - result.output.size()
                                : 0;
        result.output.append(buf, std::min(room, static_cast<size_t>(n)));
        if (static_cast<size_t>(n) > room) result.output_truncated = true;
      } else {
        if (n <= 0) {
          err_open = false;
          continue;
        }
        if (n >= static_cast<ssize_t>(sizeof(int))) std::memcpy(&result.setup_errno, buf, sizeof(int));
      }
    }
  }
  // Reap anything left in the group (daemonized grandchildren).
  kill(-pid, SIGKILL);
  close(out_pipe[0]);
  close(err_pipe[0]);

  result.elapsed = std::chrono::steady_clock::now() - start;
  if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
  if (WIFSIGNALED(status)) result.term_signal = WTERMSIG(status);
  if (result.setup_errno != 0) result.started = false;
  return result;
}

std::optional<std::filesystem::path> find_executable(const std::string& name) {
  if (name.find('/') != std::string::npos) {
    if (access(name.c_str(), X_OK) == 0) return std::filesystem::path(name);
    return std::nullopt;
  }
  const char* path = std::getenv("PATH");
  std::string dirs = path ? path : "/usr/local/bin:/usr/bin:/bin";
  size_t pos = 0;
  while (pos <= dirs.size()) {
    const size_t next = dirs.find(':', pos);
    const std::string dir = dirs.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    if (!dir.empty()) {
      const auto candidate = std::filesystem::path(dir) / name;
      if (access(candidate.c_str(), X_OK) == 0) return candidate;
    }
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return std::nullopt;
}

}  // namespace recap
