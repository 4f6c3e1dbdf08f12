#include "dscore/recompile/harness.hpp"

#include "dscore/frontend/lexer.hpp"
#include "dscore/frontend/parser.hpp"
#include "dscore/util/subprocess.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <regex>
#include <set>
#include <stdexcept>
#include <system_error>

namespace dscore::recompile {

namespace fs = std::filesystem;

const char* to_string(FixupKind kind) {
    switch (kind) {
        case FixupKind::DeclareUndefinedVariable: return "declare-undefined-variable";
        case FixupKind::InjectHeader: return "inject-header";
        case FixupKind::DefineIntrinsicTypedefs: return "define-intrinsic-typedefs";
        case FixupKind::RewritePseudoOpToHelper: return "rewrite-pseudo-op-to-helper";
        case FixupKind::DeclareMissingExternFunction: return "declare-missing-extern-function";
    }
    return "?";
}

const char* to_string(CompileStatus status) {
    switch (status) {
        case CompileStatus::Success: return "success";
        case CompileStatus::Failure: return "failure";
        case CompileStatus::ToolError: return "tool-error";
    }
    return "?";
}

namespace {

constexpr const char* kTypedefPrelude =
    "typedef unsigned char undefined;\n"
    "typedef unsigned char undefined1;\n"
    "typedef unsigned short undefined2;\n"
    "typedef unsigned int undefined4;\n"
    "typedef unsigned long undefined8;\n"
    "typedef unsigned char byte;\n"
    "typedef signed char sbyte;\n"
    "typedef unsigned char uchar;\n"
    "typedef unsigned short ushort;\n"
    "typedef unsigned int uint;\n"
    "typedef unsigned long ulong;\n"
    "typedef long long longlong;\n"
    "typedef unsigned long long ulonglong;\n"
    "typedef unsigned short word;\n"
    "typedef unsigned int dword;\n"
    "typedef unsigned long qword;\n"
    "typedef unsigned char bool;\n"
    "typedef long code();\n";

const std::set<std::string>& prelude_names() {
    static const std::set<std::string> names = {
        "undefined", "undefined1", "undefined2", "undefined4", "undefined8", "byte",  "sbyte",
        "uchar",     "ushort",     "uint",       "ulong",      "longlong",   "ulonglong", "word",
        "dword",     "qword",      "bool",       "code",
    };
    return names;
}

// Allow-listed headers only: stdio.h, stdlib.h, string.h, stdint.h.
const std::map<std::string, std::string>& header_symbols() {
    static const std::map<std::string, std::string> table = [] {
        std::map<std::string, std::string> m;
        for (const char* s : {"printf", "fprintf", "sprintf", "snprintf", "vprintf", "vfprintf", "vsnprintf", "puts",
                              "putchar", "fputs", "fputc", "putc", "fgets", "fgetc", "getc", "getchar", "fopen",
                              "fdopen", "fclose", "fread", "fwrite", "fflush", "fseek", "ftell", "rewind", "perror",
                              "scanf", "sscanf", "fscanf", "remove", "rename", "setvbuf", "ungetc", "stdin", "stdout",
                              "stderr", "EOF", "NULL", "FILE", "BUFSIZ"}) {
            m[s] = "stdio.h";
        }
        for (const char* s : {"malloc", "calloc", "realloc", "free", "exit", "abort", "atexit", "atoi", "atol",
                              "atoll", "strtol", "strtoul", "strtoll", "strtoull", "getenv", "setenv", "qsort",
                              "bsearch", "abs", "labs", "llabs", "rand", "srand", "system", "size_t",
                              "EXIT_FAILURE", "EXIT_SUCCESS"}) {
            m[s] = "stdlib.h";
        }
        for (const char* s : {"memcpy", "memmove", "memset", "memcmp", "memchr", "strlen", "strnlen", "strcmp",
                              "strncmp", "strcpy", "strncpy", "strcat", "strncat", "strchr", "strrchr", "strstr",
                              "strdup", "strndup", "strerror", "strtok", "strspn", "strcspn", "strpbrk",
                              "strcasecmp", "strncasecmp"}) {
            m[s] = "string.h";
        }
        for (const char* s : {"int8_t", "int16_t", "int32_t", "int64_t", "uint8_t", "uint16_t", "uint32_t",
                              "uint64_t", "intptr_t", "uintptr_t", "intmax_t", "uintmax_t", "INT8_MAX", "INT16_MAX",
                              "INT32_MAX", "INT64_MAX", "UINT8_MAX", "UINT16_MAX", "UINT32_MAX", "UINT64_MAX",
                              "INT32_MIN", "INT64_MIN", "SIZE_MAX"}) {
            m[s] = "stdint.h";
        }
        return m;
    }();
    return table;
}

std::string mask_literal(int bytes) {
    if (bytes >= 8) return "0xffffffffffffffffUL";
    return "0x" + std::string(static_cast<std::size_t>(bytes) * 2, 'f') + "UL";
}

std::string helper_definition(const std::string& name) {
    int a = 0;
    int b = 0;
    if (frontend::is_concat_name(name, a, b)) {
        return "static unsigned long " + name + "(unsigned long hi, unsigned long lo) { return ((hi & " +
               mask_literal(a) + ") << " + std::to_string(8 * b) + ") | (lo & " + mask_literal(b) + "); }\n";
    }
    if (frontend::is_subpiece_name(name, a, b)) {
        return "static unsigned long " + name + "(unsigned long x, long k) { return (x >> (8 * k)) & " +
               mask_literal(b) + "; }\n";
    }
    return {};
}

// Offset just past the opening brace of the function body, or npos.
std::size_t body_open_offset(std::string_view source) {
    try {
        const auto toks = frontend::tokenize(source);
        int depth = 0;
        for (std::size_t i = 0; i < toks.size(); ++i) {
            const auto& t = toks[i];
            if (t.kind != frontend::TokenKind::Punct) continue;
            if (t.text == "{") {
                if (depth == 0 && i > 0 && toks[i - 1].kind == frontend::TokenKind::Punct && toks[i - 1].text == ")") {
                    return t.offset + 1;
                }
                ++depth;
            } else if (t.text == "}") {
                --depth;
            }
        }
    } catch (const std::exception&) {
    }
    const auto pos = source.find('{');
    return pos == std::string_view::npos ? pos : pos + 1;
}

class ScratchDir {
public:
    explicit ScratchDir(const std::string& root) {
        fs::path base = root.empty() ? fs::temp_directory_path() : fs::path(root);
        fs::create_directories(base);
        std::string templ = (base / "dscore-cc-XXXXXX").string();
        if (::mkdtemp(templ.data()) == nullptr) throw std::runtime_error("cannot create scratch directory under " + base.string());
        path_ = templ;
    }
    ~ScratchDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    ScratchDir(const ScratchDir&) = delete;
    ScratchDir& operator=(const ScratchDir&) = delete;
    [[nodiscard]] const fs::path& path() const { return path_; }

private:
    fs::path path_;
};

}  // namespace

HarnessConfig HarnessConfig::from_env() {
    HarnessConfig cfg;
    if (const char* cc = std::getenv("DSCORE_CC"); cc && *cc) {
        auto words = util::split_command(cc);
        if (!words.empty()) cfg.compiler = std::move(words);
    }
    return cfg;
}

std::vector<Diagnostic> parse_diagnostics(std::string_view stderr_text) {
    static const std::regex line_re(R"(^(.*?):(\d+):(\d+): (fatal error|error|warning|note): (.*)$)");
    std::vector<Diagnostic> out;
    std::size_t start = 0;
    while (start < stderr_text.size()) {
        std::size_t end = stderr_text.find('\n', start);
        if (end == std::string_view::npos) end = stderr_text.size();
        const std::string line(stderr_text.substr(start, end - start));
        std::smatch m;
        if (std::regex_match(line, m, line_re)) {
            Diagnostic d;
            d.line = std::stoi(m[2].str());
            d.column = std::stoi(m[3].str());
            d.severity = m[4].str() == "fatal error" ? "error" : m[4].str();
            d.message = m[5].str();
            out.push_back(std::move(d));
        }
        start = end + 1;
    }
    return out;
}

std::vector<FixupAction> derive_fixups(const std::vector<Diagnostic>& diags) {
    static const std::regex unknown_type(R"(unknown type name '(\w+)')");
    static const std::regex undeclared(R"('(\w+)' undeclared|use of undeclared identifier '(\w+)')");
    static const std::regex implicit_fn(R"(implicit declaration of function '(\w+)'|call to undeclared (?:library )?function '(\w+)')");
    std::set<FixupAction> found;
    auto name_fix = [&](const std::string& name, bool as_type) {
        if (prelude_names().count(name)) {
            found.insert({FixupKind::DefineIntrinsicTypedefs, "ghidra"});
        } else if (auto it = header_symbols().find(name); it != header_symbols().end()) {
            found.insert({FixupKind::InjectHeader, it->second});
        } else if (!as_type) {
            found.insert({FixupKind::DeclareUndefinedVariable, name});
        }
    };
    for (const Diagnostic& d : diags) {
        if (d.severity == "note") continue;
        std::smatch m;
        if (std::regex_search(d.message, m, unknown_type)) {
            name_fix(m[1].str(), true);
        } else if (std::regex_search(d.message, m, implicit_fn)) {
            const std::string name = m[1].matched ? m[1].str() : m[2].str();
            int a = 0;
            int b = 0;
            if (frontend::is_concat_name(name, a, b) || frontend::is_subpiece_name(name, a, b)) {
                found.insert({FixupKind::RewritePseudoOpToHelper, name});
            } else if (auto it = header_symbols().find(name); it != header_symbols().end()) {
                found.insert({FixupKind::InjectHeader, it->second});
            } else {
                found.insert({FixupKind::DeclareMissingExternFunction, name});
            }
        } else if (d.severity == "error" && std::regex_search(d.message, m, undeclared)) {
            name_fix(m[1].matched ? m[1].str() : m[2].str(), false);
        }
    }
    return {found.begin(), found.end()};
}

std::string apply_fixups(std::string_view source, const std::vector<FixupAction>& actions) {
    const std::set<FixupAction> set(actions.begin(), actions.end());
    std::string head;
    std::string locals;
    for (const FixupAction& a : set) {
        if (a.kind == FixupKind::InjectHeader) head += "#include <" + a.payload + ">\n";
    }
    for (const FixupAction& a : set) {
        if (a.kind == FixupKind::DefineIntrinsicTypedefs) head += kTypedefPrelude;
    }
    for (const FixupAction& a : set) {
        if (a.kind == FixupKind::RewritePseudoOpToHelper) head += helper_definition(a.payload);
        if (a.kind == FixupKind::DeclareMissingExternFunction) head += "long " + a.payload + "();\n";
        if (a.kind == FixupKind::DeclareUndefinedVariable) locals += " long " + a.payload + " = 0;";
    }
    std::string body(source);
    if (!locals.empty()) {
        const std::size_t at = body_open_offset(source);
        if (at != std::string::npos) body.insert(at, locals);
    }
    if (head.empty()) return body;
    return head + "#line 1\n" + body;
}

CompileOutcome recompile(std::string_view source, const HarnessConfig& cfg) {
    CompileOutcome outcome;
    if (cfg.compiler.empty()) {
        outcome.status = CompileStatus::ToolError;
        outcome.tool_error = "no compiler configured";
        return outcome;
    }
    std::unique_ptr<ScratchDir> scratch;
    try {
        scratch = std::make_unique<ScratchDir>(cfg.temp_root);
    } catch (const std::exception& e) {
        outcome.status = CompileStatus::ToolError;
        outcome.tool_error = e.what();
        return outcome;
    }
    const fs::path unit = scratch->path() / "unit.c";
    const fs::path object = scratch->path() / "unit.o";
    const auto timeout = std::chrono::milliseconds(static_cast<long long>(cfg.compile_timeout_seconds * 1000.0));

    std::vector<FixupAction> applied;
    std::set<FixupAction> applied_set;
    const int max_iter = std::max(1, cfg.max_iterations);
    for (int iter = 1; iter <= max_iter; ++iter) {
        outcome.iterations_used = iter;
        outcome.transformed_source = apply_fixups(source, applied);
        {
            std::ofstream out(unit, std::ios::binary | std::ios::trunc);
            out << outcome.transformed_source;
            if (!out) {
                outcome.status = CompileStatus::ToolError;
                outcome.tool_error = "cannot write " + unit.string();
                return outcome;
            }
        }
        std::vector<std::string> argv = cfg.compiler;
        argv.insert(argv.end(), cfg.compiler_args.begin(), cfg.compiler_args.end());
        argv.insert(argv.end(), {"-o", object.string(), unit.string()});
        const util::ProcessResult run = util::run_process(argv, {}, timeout);
        if (!run.spawned) {
            outcome.status = CompileStatus::ToolError;
            outcome.tool_error = "cannot run " + cfg.compiler.front() + ": " + run.spawn_error;
            return outcome;
        }
        if (run.timed_out) {
            outcome.status = CompileStatus::ToolError;
            outcome.tool_error = "compiler timed out";
            return outcome;
        }
        outcome.diagnostics = parse_diagnostics(run.err);
        if (run.signaled) {
            outcome.status = CompileStatus::ToolError;
            outcome.tool_error = "compiler terminated by signal";
            return outcome;
        }
        if (run.exit_code == 0) {
            outcome.status = CompileStatus::Success;
            outcome.actions = applied;
            return outcome;
        }
        const bool explained = std::any_of(outcome.diagnostics.begin(), outcome.diagnostics.end(),
                                           [](const Diagnostic& d) { return d.severity == "error"; });
        if (!explained) {
            outcome.status = CompileStatus::ToolError;
            outcome.tool_error = "compiler failed without diagnostics (exit " + std::to_string(run.exit_code) + ")";
            return outcome;
        }
        bool progress = false;
        for (FixupAction& a : derive_fixups(outcome.diagnostics)) {
            if (applied_set.insert(a).second) {
                applied.push_back(std::move(a));
                progress = true;
            }
        }
        if (!progress) break;
    }
    outcome.status = CompileStatus::Failure;
    outcome.actions = applied;
    return outcome;
}

double syntax_score(const CompileOutcome& outcome, const PenaltyConfig& penalties) {
    switch (outcome.status) {
        case CompileStatus::Success: return 0.0;
        case CompileStatus::Failure: return penalties.syn_pen;
        case CompileStatus::ToolError: break;
    }
    throw std::invalid_argument("syntax_score: tool-error outcome has no syntax score");
}

}  // namespace dscore::recompile
