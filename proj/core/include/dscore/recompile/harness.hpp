#pragma once

#include "dscore/scoring/penalties.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace dscore::recompile {

enum class FixupKind : std::uint8_t {
    DeclareUndefinedVariable,
    InjectHeader,
    DefineIntrinsicTypedefs,
    RewritePseudoOpToHelper,
    DeclareMissingExternFunction,
};

const char* to_string(FixupKind kind);

struct FixupAction {
    FixupKind kind = FixupKind::DeclareUndefinedVariable;
    std::string payload;  // identifier, header name, or "ghidra" for the typedef prelude

    friend auto operator<=>(const FixupAction&, const FixupAction&) = default;
};

enum class CompileStatus : std::uint8_t { Success, Failure, ToolError };

const char* to_string(CompileStatus status);

struct Diagnostic {
    int line = 0;
    int column = 0;
    std::string severity;  // error, warning, note
    std::string message;
};

struct CompileOutcome {
    CompileStatus status = CompileStatus::Failure;
    int iterations_used = 0;
    std::string transformed_source;
    std::vector<Diagnostic> diagnostics;  // from the last compiler run
    std::vector<FixupAction> actions;     // applied, in order of discovery
    std::string tool_error;
};

struct HarnessConfig {
    std::vector<std::string> compiler = {"cc"};
    std::vector<std::string> compiler_args = {
        "-c", "-x", "c", "-std=gnu11", "-fno-diagnostics-color", "-Werror=implicit-function-declaration",
        "-Werror=implicit-int",
    };
    int max_iterations = 10;
    double compile_timeout_seconds = 20.0;
    std::string temp_root;  // empty: system temp directory

    /// Defaults with DSCORE_CC applied when set.
    static HarnessConfig from_env();
};

/// Iterative compile and fix-up loop. Each call works in a private scratch
/// directory that is removed afterwards.
CompileOutcome recompile(std::string_view source, const HarnessConfig& cfg);

/// Applies a set of fix-ups to the original text. Deterministic and idempotent
/// in the set.
std::string apply_fixups(std::string_view source, const std::vector<FixupAction>& actions);

/// Derives fix-ups from compiler diagnostics.
std::vector<FixupAction> derive_fixups(const std::vector<Diagnostic>& diags);

/// Parses "file:line:col: severity: message" lines.
std::vector<Diagnostic> parse_diagnostics(std::string_view stderr_text);

/// failure -> syn_pen, success -> 0. Throws std::invalid_argument on tool-error.
double syntax_score(const CompileOutcome& outcome, const PenaltyConfig& penalties);

}  // namespace dscore::recompile
