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

#include "recap/artifact/sandbox.hpp"

#include <fcntl.h>
#include <grp.h>
#include <net/if.h>
#include <sched.h>
#include <signal.h>
#include <sys/ioctl.h>
#include <sys/mount.h>
#include <sys/prctl.h>
#include <sys/socket.h>
#include <sys/stat.h>
#include <sys/syscall.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <fstream>
#include <random>
#include <sstream>
#include <vector>

#include "recap/common/subprocess.hpp"

namespace recap::artifact {

namespace {

constexpr uid_t kNobody = 65534;
constexpr gid_t kNogroup = 65534;

std::vector<std::string> sandbox_env(const std::string& home) {
  return {"PATH=/usr/local/sbin:/usr/local/bin:/usr/sbin:/usr/bin:/sbin:/bin", "HOME=" + home, "TMPDIR=/tmp",
          "LANG=C.UTF-8", "LC_ALL=C.UTF-8", "PYTHONDONTWRITEBYTECODE=1", "MPLBACKEND=Agg"};
}

std::string decode_mountinfo_path(const std::string& s) {
  std::string out;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\' && i + 3 < s.size() && s[i + 1] >= '0' && s[i + 1] <= '3') {
      out += static_cast<char>(((s[i + 1] - '0') << 6) | ((s[i + 2] - '0') << 3) | (s[i + 3] - '0'));
      i += 3;
    } else {
      out += s[i];
    }
  }
  return out;
}

struct MountPoint {
  std::string path;
  unsigned long flags = 0;  // per-mount flags to keep when remounting
};

std::vector<MountPoint> read_mounts() {
  std::vector<MountPoint> mounts;
  std::ifstream in("/proc/self/mountinfo");
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string id, parent, dev, root, mount_point, options;
    if (!(ls >> id >> parent >> dev >> root >> mount_point >> options)) continue;
    MountPoint mp;
    mp.path = decode_mountinfo_path(mount_point);
    std::istringstream os(options);
    std::string opt;
    while (std::getline(os, opt, ',')) {
      if (opt == "nosuid") mp.flags |= MS_NOSUID;
      if (opt == "nodev") mp.flags |= MS_NODEV;
      if (opt == "noexec") mp.flags |= MS_NOEXEC;
      if (opt == "noatime") mp.flags |= MS_NOATIME;
      if (opt == "nodiratime") mp.flags |= MS_NODIRATIME;
      if (opt == "relatime") mp.flags |= MS_RELATIME;
    }
    mounts.push_back(std::move(mp));
  }
  return mounts;
}

struct MountAttr {
  uint64_t attr_set;
  uint64_t attr_clr;
  uint64_t propagation;
  uint64_t userns_fd;
};
constexpr uint64_t kMountAttrRdonly = 0x1;
constexpr unsigned kAtRecursive = 0x8000;

// Everything the child needs, prepared before fork: the child must not
// allocate.
struct NamespaceContext {
  std::vector<MountPoint> mounts;
  std::vector<const char*> mount_paths;
  std::string work_dir;
  bool drop_privileges = true;
};

// "/proc/self/fd/<fd>" without allocating.
void fd_path(int fd, char (&out)[32]) {
  static constexpr char kPrefix[] = "/proc/self/fd/";
  char digits[12];
  int n = 0;
  do {
    digits[n++] = static_cast<char>('0' + fd % 10);
    fd /= 10;
  } while (fd > 0);
  size_t pos = 0;
  for (; kPrefix[pos]; ++pos) out[pos] = kPrefix[pos];
  while (n > 0) out[pos++] = digits[--n];
  out[pos] = '\0';
}

int remount_all_readonly(const NamespaceContext& ctx) {
  MountAttr attr{kMountAttrRdonly, 0, 0, 0};
  if (syscall(SYS_mount_setattr, AT_FDCWD, "/", kAtRecursive, &attr, sizeof(attr)) == 0) return 0;
  if (errno != ENOSYS && errno != EINVAL) return errno;
  for (size_t i = 0; i < ctx.mounts.size(); ++i) {
    const unsigned long flags = MS_REMOUNT | MS_BIND | MS_RDONLY | ctx.mounts[i].flags;
    if (mount(nullptr, ctx.mount_paths[i], nullptr, flags, nullptr) != 0) {
      // Mounts shadowed by later ones or gone since the parent read the table.
      if (errno == ENOENT || errno == EACCES || errno == EINVAL) continue;
      return errno;
    }
  }
  return 0;
}

void bring_up_loopback() {
  const int fd = socket(AF_INET, SOCK_DGRAM | SOCK_CLOEXEC, 0);
  if (fd < 0) return;
  ifreq req{};
  std::strncpy(req.ifr_name, "lo", IFNAMSIZ - 1);
  if (ioctl(fd, SIOCGIFFLAGS, &req) == 0) {
    req.ifr_flags |= IFF_UP;
    ioctl(fd, SIOCSIFFLAGS, &req);
  }
  close(fd);
}

int setup_inner(const NamespaceContext& ctx) {
  if (mount(nullptr, "/", nullptr, MS_REC | MS_PRIVATE, nullptr) != 0) return errno;
  // Opened inside the new mount namespace so it can be a bind source after
  // /tmp is covered.
  const int work_fd = open(ctx.work_dir.c_str(), O_PATH | O_DIRECTORY | O_CLOEXEC);
  if (work_fd < 0) return errno;
  char work_fd_path[32];
  fd_path(work_fd, work_fd_path);
  if (const int rc = remount_all_readonly(ctx); rc != 0) return rc;
  if (mount("tmpfs", "/tmp", "tmpfs", MS_NOSUID | MS_NODEV, "mode=1777,size=268435456") != 0) return errno;
  if (mkdir(kSandboxWorkDir, 0755) != 0) return errno;
  if (mount(work_fd_path, kSandboxWorkDir, nullptr, MS_BIND | MS_REC, nullptr) != 0) return errno;
  MountAttr rw{0, kMountAttrRdonly, 0, 0};
  if (syscall(SYS_mount_setattr, AT_FDCWD, kSandboxWorkDir, 0u, &rw, sizeof(rw)) != 0) {
    if (mount(nullptr, kSandboxWorkDir, nullptr, MS_REMOUNT | MS_BIND | MS_NOSUID | MS_NODEV, nullptr) != 0) {
      return errno;
    }
  }
  close(work_fd);
  if (mount("proc", "/proc", "proc", MS_NOSUID | MS_NODEV | MS_NOEXEC, nullptr) != 0) return errno;
  if (sethostname("sandbox", 7) != 0) return errno;
  bring_up_loopback();
  if (chdir(kSandboxWorkDir) != 0) return errno;
  if (ctx.drop_privileges) {
    if (setgroups(0, nullptr) != 0) return errno;
    if (setgid(kNogroup) != 0) return errno;
    if (setuid(kNobody) != 0) return errno;
  }
  if (prctl(PR_SET_NO_NEW_PRIVS, 1, 0, 0, 0) != 0) return errno;
  if (prctl(PR_SET_PDEATHSIG, SIGKILL, 0, 0, 0) != 0) return errno;
  return 0;
}

int namespace_child_setup(void* raw) {
  const auto& ctx = *static_cast<const NamespaceContext*>(raw);
  if (unshare(CLONE_NEWNS | CLONE_NEWPID | CLONE_NEWNET | CLONE_NEWIPC | CLONE_NEWUTS) != 0) return errno;
  // The first child in the new PID namespace becomes its init; this process
  // stays outside and relays the exit status.
  const pid_t pid = fork();
  if (pid < 0) return errno;
  if (pid == 0) {
    if (prctl(PR_SET_PDEATHSIG, SIGKILL, 0, 0, 0) != 0) return errno;
    return setup_inner(ctx);
  }
  int status = 0;
  while (waitpid(pid, &status, 0) < 0) {
    if (errno != EINTR) _exit(126);
  }
  if (WIFEXITED(status)) _exit(WEXITSTATUS(status));
  if (WIFSIGNALED(status)) _exit(128 + WTERMSIG(status));
  _exit(126);
}

void chown_tree(const fs::path& dir, uid_t uid, gid_t gid) {
  (void)!lchown(dir.c_str(), uid, gid);
  std::error_code ec;
  for (auto it = fs::recursive_directory_iterator(dir, ec); !ec && it != fs::recursive_directory_iterator();
       it.increment(ec)) {
    (void)!lchown(it->path().c_str(), uid, gid);
  }
}

SandboxOutcome from_process(const ProcessResult& r) {
  SandboxOutcome out;
  out.duration_s = r.elapsed.count();
  out.output = r.output;
  out.timed_out = r.timed_out;
  out.exit_code = r.exit_code;
  out.term_signal = r.term_signal;
  out.established = true;
  return out;
}

class NamespaceRuntime : public SandboxRuntime {
 public:
  std::string name() const override { return "namespace"; }

  std::optional<std::string> unavailable_reason() const override {
    if (geteuid() != 0) return "namespace runtime needs root (CAP_SYS_ADMIN)";
    if (access("/proc/self/ns/pid", F_OK) != 0) return "kernel lacks PID namespaces";
    return std::nullopt;
  }

  SandboxOutcome run(const SandboxRun& run, const SandboxConfig& config) override {
    SandboxOutcome out;
    if (auto why = unavailable_reason()) {
      out.error = *why;
      return out;
    }
    NamespaceContext ctx;
    ctx.mounts = read_mounts();
    for (const auto& m : ctx.mounts) ctx.mount_paths.push_back(m.path.c_str());
    std::error_code ec;
    ctx.work_dir = fs::absolute(run.work_dir, ec).string();
    if (!fs::is_directory(ctx.work_dir, ec)) {
      out.error = "work dir missing: " + ctx.work_dir;
      return out;
    }
    chown_tree(run.work_dir, kNobody, kNogroup);

    ProcessSpec spec;
    spec.argv = {"/bin/sh", "-c", run.command};
    spec.env = sandbox_env(kSandboxWorkDir);
    spec.timeout = std::chrono::milliseconds(static_cast<long long>(run.limit_s * 1000));
    spec.limits.address_space_bytes = config.memory_bytes;
    spec.limits.cpu_seconds = static_cast<unsigned>(run.limit_s * std::max(1.0, config.cpu_cores)) + 1;
    spec.limits.max_processes = config.max_processes;
    spec.limits.file_size_bytes = config.max_file_bytes;
    spec.max_output_bytes = 1 << 20;
    spec.child_setup = namespace_child_setup;
    spec.child_setup_context = &ctx;
    const ProcessResult r = run_process(spec);
    out = from_process(r);
    if (!r.started) {
      out.established = false;
      out.error = "sandbox setup failed: " + std::string(std::strerror(r.setup_errno));
    }
    return out;
  }
};

std::string random_suffix() {
  std::random_device rd;
  std::ostringstream os;
  os << std::hex << rd() << rd();
  return os.str();
}

class DockerRuntime : public SandboxRuntime {
 public:
  std::string name() const override { return "docker"; }

  std::optional<std::string> unavailable_reason() const override {
    if (!find_executable("docker")) return "docker CLI not found";
    ProcessSpec spec;
    spec.argv = {"docker", "info", "--format", "{{.ServerVersion}}"};
    spec.timeout = std::chrono::seconds(20);
    if (!run_process(spec).ok()) return "docker daemon not reachable";
    return std::nullopt;
  }

  std::optional<std::string> prepare(const SandboxConfig& config) override {
    ProcessSpec inspect;
    inspect.argv = {"docker", "image", "inspect", config.image};
    inspect.timeout = std::chrono::seconds(30);
    if (run_process(inspect).ok()) return std::nullopt;
    if (config.image_recipe.empty()) return "image " + config.image + " missing and no recipe configured";
    ProcessSpec build;
    build.argv = {"docker", "build", "-t", config.image, "-f", config.image_recipe.string(),
                  config.image_recipe.parent_path().string()};
    build.timeout = std::chrono::hours(1);
    const ProcessResult r = run_process(build);
    if (!r.ok()) return "image build failed: " + r.output.substr(r.output.size() > 2000 ? r.output.size() - 2000 : 0);
    return std::nullopt;
  }

  SandboxOutcome run(const SandboxRun& run, const SandboxConfig& config) override {
    SandboxOutcome out;
    const std::string container = "recap-" + random_suffix();
    chown_tree(run.work_dir, kNobody, kNogroup);
    ProcessSpec spec;
    spec.argv = {"docker", "run", "--rm", "--name", container, "--network", "none",
                 "--cpus", std::to_string(config.cpu_cores), "--memory", std::to_string(config.memory_bytes),
                 "--pids-limit", std::to_string(config.max_processes), "--user", "65534:65534",
                 "--read-only", "--tmpfs", "/tmp:rw,size=256m", "--security-opt", "no-new-privileges",
                 "-e", "HOME=/work", "-v", fs::absolute(run.work_dir).string() + ":/work:rw", "-w", "/work",
                 config.image, "/bin/sh", "-c", run.command};
    spec.timeout = std::chrono::milliseconds(static_cast<long long>(run.limit_s * 1000));
    spec.max_output_bytes = 1 << 20;
    const ProcessResult r = run_process(spec);
    if (r.timed_out) {
      ProcessSpec kill;
      kill.argv = {"docker", "rm", "-f", container};
      kill.timeout = std::chrono::seconds(4);
      run_process(kill);
    }
    out = from_process(r);
    // 125: the docker CLI could not create or start the container.
    if (!r.started || (!r.timed_out && r.exit_code == 125)) {
      out.established = false;
      out.error = r.started ? "docker run failed: " + r.output : "cannot run docker";
    }
    return out;
  }
};

class UnavailableRuntime : public SandboxRuntime {
 public:
  UnavailableRuntime(std::string name, std::string reason) : name_(std::move(name)), reason_(std::move(reason)) {}
  std::string name() const override { return name_; }
  std::optional<std::string> unavailable_reason() const override { return reason_; }
  SandboxOutcome run(const SandboxRun&, const SandboxConfig&) override {
    SandboxOutcome out;
    out.error = reason_;
    return out;
  }

 private:
  std::string name_;
  std::string reason_;
};

}  // namespace

std::unique_ptr<SandboxRuntime> make_namespace_runtime() { return std::make_unique<NamespaceRuntime>(); }

std::unique_ptr<SandboxRuntime> make_docker_runtime() { return std::make_unique<DockerRuntime>(); }

std::unique_ptr<SandboxRuntime> make_runtime(const SandboxConfig& config) {
  if (config.runtime == "namespace") return make_namespace_runtime();
  if (config.runtime == "docker") return make_docker_runtime();
  if (config.runtime != "auto") {
    return std::make_unique<UnavailableRuntime>(config.runtime, "unknown sandbox runtime '" + config.runtime + "'");
  }
  auto docker = make_docker_runtime();
  const auto docker_why = docker->unavailable_reason();
  if (!docker_why) return docker;
  auto ns = make_namespace_runtime();
  const auto ns_why = ns->unavailable_reason();
  if (!ns_why) return ns;
  return std::make_unique<UnavailableRuntime>("auto", *docker_why + "; " + *ns_why);
}

}  // namespace recap::artifact
