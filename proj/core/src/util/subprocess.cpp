#include "dscore/util/subprocess.hpp"

#include <algorithm>
#include <cerrno>
#include <condition_variable>
#include <cstdlib>
#include <cstring>
#include <mutex>
#include <sstream>
#include <thread>

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/stat.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

namespace dscore::util {

namespace {

class Limiter {
public:
    void acquire() {
        std::unique_lock lock(mu_);
        cv_.wait(lock, [&] { return running_ < limit_; });
        ++running_;
    }
    void release() {
        {
            std::lock_guard lock(mu_);
            --running_;
        }
        cv_.notify_one();
    }
    void set(int limit) {
        {
            std::lock_guard lock(mu_);
            limit_ = std::max(1, limit);
        }
        cv_.notify_all();
    }
    int get() {
        std::lock_guard lock(mu_);
        return limit_;
    }

private:
    std::mutex mu_;
    std::condition_variable cv_;
    int running_ = 0;
    int limit_ = static_cast<int>(std::max(2U, std::thread::hardware_concurrency()));
};

Limiter& limiter() {
    static Limiter l;
    return l;
}

struct SlotGuard {
    SlotGuard() { limiter().acquire(); }
    ~SlotGuard() { limiter().release(); }
    SlotGuard(const SlotGuard&) = delete;
    SlotGuard& operator=(const SlotGuard&) = delete;
};

void close_fd(int& fd) {
    if (fd >= 0) ::close(fd);
    fd = -1;
}

}  // namespace

void set_process_limit(int limit) { limiter().set(limit); }
int process_limit() { return limiter().get(); }

std::vector<std::string> split_command(const std::string& cmd) {
    std::istringstream in(cmd);
    std::vector<std::string> out;
    std::string word;
    while (in >> word) out.push_back(word);
    return out;
}

std::string resolve_executable(const std::string& name) {
    if (name.empty()) return {};
    if (name.find('/') != std::string::npos) return ::access(name.c_str(), X_OK) == 0 ? name : std::string();
    const char* path = std::getenv("PATH");
    std::istringstream dirs(path ? path : "/usr/bin:/bin");
    std::string dir;
    while (std::getline(dirs, dir, ':')) {
        if (dir.empty()) dir = ".";
        const std::string candidate = dir + "/" + name;
        struct stat st {};
        if (::stat(candidate.c_str(), &st) == 0 && S_ISREG(st.st_mode) && ::access(candidate.c_str(), X_OK) == 0) {
            return candidate;
        }
    }
    return {};
}

ProcessResult run_process(const std::vector<std::string>& argv, const std::string& stdin_data,
                          std::chrono::milliseconds timeout) {
    ProcessResult result;
    if (argv.empty()) {
        result.spawn_error = "empty command";
        return result;
    }
    static std::once_flag ignore_sigpipe;
    std::call_once(ignore_sigpipe, [] { ::signal(SIGPIPE, SIG_IGN); });
    SlotGuard slot;

    std::vector<char*> cargv;
    cargv.reserve(argv.size() + 1);
    for (const std::string& a : argv) cargv.push_back(const_cast<char*>(a.c_str()));
    cargv.push_back(nullptr);

    int in_pipe[2] = {-1, -1};
    int out_pipe[2] = {-1, -1};
    int err_pipe[2] = {-1, -1};
    int exec_pipe[2] = {-1, -1};
    if (::pipe2(in_pipe, O_CLOEXEC) != 0 || ::pipe2(out_pipe, O_CLOEXEC) != 0 ||
        ::pipe2(err_pipe, O_CLOEXEC) != 0 || ::pipe2(exec_pipe, O_CLOEXEC) != 0) {
        result.spawn_error = std::strerror(errno);
        for (int* p : {in_pipe, out_pipe, err_pipe, exec_pipe}) {
            close_fd(p[0]);
            close_fd(p[1]);
        }
        return result;
    }

    const pid_t pid = ::fork();
    if (pid < 0) {
        result.spawn_error = std::strerror(errno);
        for (int* p : {in_pipe, out_pipe, err_pipe, exec_pipe}) {
            close_fd(p[0]);
            close_fd(p[1]);
        }
        return result;
    }
    if (pid == 0) {
        ::setpgid(0, 0);
        ::signal(SIGPIPE, SIG_DFL);
        ::dup2(in_pipe[0], STDIN_FILENO);
        ::dup2(out_pipe[1], STDOUT_FILENO);
        ::dup2(err_pipe[1], STDERR_FILENO);
        ::execvp(cargv[0], cargv.data());
        const int e = errno;
        ssize_t ignored = ::write(exec_pipe[1], &e, sizeof e);
        (void)ignored;
        ::_exit(127);
    }
    ::setpgid(pid, pid);
    close_fd(in_pipe[0]);
    close_fd(out_pipe[1]);
    close_fd(err_pipe[1]);
    close_fd(exec_pipe[1]);

    int exec_errno = 0;
    if (::read(exec_pipe[0], &exec_errno, sizeof exec_errno) == static_cast<ssize_t>(sizeof exec_errno)) {
        close_fd(exec_pipe[0]);
        close_fd(in_pipe[1]);
        close_fd(out_pipe[0]);
        close_fd(err_pipe[0]);
        int status = 0;
        ::waitpid(pid, &status, 0);
        result.spawn_error = std::strerror(exec_errno);
        return result;
    }
    close_fd(exec_pipe[0]);
    result.spawned = true;

    ::fcntl(in_pipe[1], F_SETFL, O_NONBLOCK);
    std::size_t written = 0;
    if (stdin_data.empty()) close_fd(in_pipe[1]);

    const auto deadline = std::chrono::steady_clock::now() + timeout;
    char buf[8192];
    while (out_pipe[0] >= 0 || err_pipe[0] >= 0) {
        const auto now = std::chrono::steady_clock::now();
        if (now >= deadline) {
            result.timed_out = true;
            break;
        }
        pollfd fds[3];
        int n = 0;
        int idx_in = -1;
        int idx_out = -1;
        int idx_err = -1;
        if (in_pipe[1] >= 0) {
            idx_in = n;
            fds[n++] = {in_pipe[1], POLLOUT, 0};
        }
        if (out_pipe[0] >= 0) {
            idx_out = n;
            fds[n++] = {out_pipe[0], POLLIN, 0};
        }
        if (err_pipe[0] >= 0) {
            idx_err = n;
            fds[n++] = {err_pipe[0], POLLIN, 0};
        }
        const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count();
        const int rc = ::poll(fds, static_cast<nfds_t>(n), static_cast<int>(std::min<long long>(left + 1, 1000)));
        if (rc < 0) {
            if (errno == EINTR) continue;
            break;
        }
        if (idx_in >= 0 && (fds[idx_in].revents & (POLLOUT | POLLERR | POLLHUP))) {
            const ssize_t w = ::write(in_pipe[1], stdin_data.data() + written, stdin_data.size() - written);
            if (w > 0) written += static_cast<std::size_t>(w);
            if (w < 0 && errno != EAGAIN) close_fd(in_pipe[1]);
            if (written >= stdin_data.size()) close_fd(in_pipe[1]);
        }
        auto drain = [&](int idx, int& fd, std::string& sink) {
            if (idx < 0 || !(fds[idx].revents & (POLLIN | POLLHUP | POLLERR))) return;
            const ssize_t r = ::read(fd, buf, sizeof buf);
            if (r > 0) {
                sink.append(buf, static_cast<std::size_t>(r));
            } else if (r == 0 || errno != EINTR) {
                close_fd(fd);
            }
        };
        drain(idx_out, out_pipe[0], result.out);
        drain(idx_err, err_pipe[0], result.err);
    }
    close_fd(in_pipe[1]);
    close_fd(out_pipe[0]);
    close_fd(err_pipe[0]);

    int status = 0;
    if (result.timed_out) {
        ::kill(-pid, SIGKILL);
        ::waitpid(pid, &status, 0);
        return result;
    }
    // Output closed; the child may still be running (e.g. closed its stdout early).
    while (true) {
        const pid_t w = ::waitpid(pid, &status, WNOHANG);
        if (w == pid) break;
        if (w < 0 && errno != EINTR) break;
        if (std::chrono::steady_clock::now() >= deadline) {
            result.timed_out = true;
            ::kill(-pid, SIGKILL);
            ::waitpid(pid, &status, 0);
            return result;
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(2));
    }
    if (WIFEXITED(status)) {
        result.exit_code = WEXITSTATUS(status);
    } else if (WIFSIGNALED(status)) {
        result.signaled = true;
        result.exit_code = 128 + WTERMSIG(status);
    }
    return result;
}

}  // namespace dscore::util
