#include "branchcrew/exec.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "branchcrew/errors.hpp"

extern char** environ;

namespace branchcrew {

namespace {

// Close-on-exec pipe pair.
struct Pipe {
  int fds[2] = {-1, -1};
  Pipe() {
    if (pipe(fds) != 0) raise(Errc::command_failure, "pipe() failed");
  }
  ~Pipe() {
    if (fds[0] >= 0) close(fds[0]);
    if (fds[1] >= 0) close(fds[1]);
  }
};

}  // namespace

CommandResult run_command(
    const std::vector<std::string>& argv, const std::filesystem::path& cwd,
    const std::vector<std::pair<std::string, std::string>>& extra_env,
    std::optional<std::chrono::milliseconds> timeout) {
  if (argv.empty()) raise(Errc::command_failure, "empty argv");

  Pipe out;       // child stdout+stderr
  Pipe started;   // written by the child only if exec fails

  std::vector<std::string> env_strings;
  for (char** e = environ; *e != nullptr; ++e) {
    const char* eq = strchr(*e, '=');
    bool overridden = false;
    for (const auto& [k, v] : extra_env) {
      if (eq != nullptr && k.size() == static_cast<size_t>(eq - *e) &&
          strncmp(*e, k.c_str(), k.size()) == 0) {
        overridden = true;
        break;
      }
    }
    if (!overridden) env_strings.emplace_back(*e);
  }
  for (const auto& [k, v] : extra_env) env_strings.push_back(k + "=" + v);

  std::vector<char*> envp;
  envp.reserve(env_strings.size() + 1);
  for (auto& s : env_strings) envp.push_back(s.data());
  envp.push_back(nullptr);

  std::vector<char*> cargv;
  cargv.reserve(argv.size() + 1);
  for (const auto& a : argv) cargv.push_back(const_cast<char*>(a.c_str()));
  cargv.push_back(nullptr);

  pid_t pid = fork();
  if (pid < 0) raise(Errc::command_failure, "fork() failed");

  if (pid == 0) {
    setpgid(0, 0);  // own process group so timeouts can kill children too
    if (!cwd.empty()) {
      if (chdir(cwd.c_str()) != 0) _exit(127);
    }
    dup2(out.fds[1], STDOUT_FILENO);
    dup2(out.fds[1], STDERR_FILENO);
    close(out.fds[0]);
    close(out.fds[1]);
    close(started.fds[0]);
    fcntl(started.fds[1], F_SETFD, FD_CLOEXEC);
    execvpe(cargv[0], cargv.data(), envp.data());
    char err = 1;
    ssize_t ignored = write(started.fds[1], &err, 1);
    (void)ignored;
    _exit(127);
  }

  close(out.fds[1]);
  out.fds[1] = -1;
  close(started.fds[1]);
  started.fds[1] = -1;

  CommandResult result;
  auto deadline = timeout ? std::chrono::steady_clock::now() + *timeout
                          : std::chrono::steady_clock::time_point::max();

  char buf[4096];
  bool open = true;
  while (open) {
    int wait_ms = -1;
    if (timeout) {
      auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
          deadline - std::chrono::steady_clock::now());
      wait_ms = remaining.count() > 0 ? static_cast<int>(remaining.count()) : 0;
    }
    struct pollfd pfd = {out.fds[0], POLLIN, 0};
    int rc = poll(&pfd, 1, wait_ms);
    if (rc < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (rc == 0) {
      // deadline hit
      result.timed_out = true;
      kill(-pid, SIGKILL);
      break;
    }
    ssize_t n = read(out.fds[0], buf, sizeof(buf));
    if (n > 0) {
      result.output.append(buf, static_cast<size_t>(n));
    } else if (n == 0) {
      open = false;
    } else if (errno != EINTR) {
      open = false;
    }
  }

  // Drain anything that arrived between the kill and process exit.
  if (result.timed_out) {
    ssize_t n;
    while ((n = read(out.fds[0], buf, sizeof(buf))) > 0)
      result.output.append(buf, static_cast<size_t>(n));
  }

  int status = 0;
  while (waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  if (WIFEXITED(status)) {
    result.exit_code = WEXITSTATUS(status);
  } else if (WIFSIGNALED(status)) {
    result.exit_code = 128 + WTERMSIG(status);
  }

  char failed = 0;
  if (!result.timed_out && read(started.fds[0], &failed, 1) == 1 && failed) {
    raise(Errc::command_failure, "cannot start: " + argv[0]);
  }
  return result;
}

CommandResult run_shell(
    const std::string& command, const std::filesystem::path& cwd,
    const std::vector<std::pair<std::string, std::string>>& extra_env,
    std::optional<std::chrono::milliseconds> timeout) {
  return run_command({"/bin/sh", "-c", command}, cwd, extra_env, timeout);
}

}  // namespace branchcrew
