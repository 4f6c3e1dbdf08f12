#pragma once

#include <chrono>
#include <string>
#include <vector>

namespace dscore::util {

struct ProcessResult {
    bool spawned = false;     // false when fork/exec failed
    bool timed_out = false;
    bool signaled = false;    // terminated by a signal other than our timeout kill
    int exit_code = -1;
    std::string out;
    std::string err;
    std::string spawn_error;  // strerror text when !spawned
};

/// Runs argv[0] (looked up in PATH) with the given stdin, collecting both
/// output streams. The child gets its own process group, which is killed as a
/// whole when the timeout expires.
ProcessResult run_process(const std::vector<std::string>& argv, const std::string& stdin_data,
                          std::chrono::milliseconds timeout);

/// Upper bound on concurrently running children across all callers.
void set_process_limit(int limit);
int process_limit();

/// Splits a command line on whitespace (no quoting), as used for the
/// DSCORE_CC / DSCORE_SMT overrides.
std::vector<std::string> split_command(const std::string& cmd);

/// First PATH match for an executable name, or empty.
std::string resolve_executable(const std::string& name);

}  // namespace dscore::util
