#include "dscore/service/config.hpp"
#include "dscore/service/corpus.hpp"
#include "dscore/service/json_writer.hpp"
#include "dscore/service/prompt.hpp"
#include "dscore/service/report.hpp"
#include "dscore/service/server.hpp"
#include "dscore/util/subprocess.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace dscore;
using namespace dscore::service;
using nlohmann::json;

namespace {

std::atomic<bool> g_stop{false};

void on_signal(int) { g_stop = true; }

struct Overrides {
    std::string config;
    std::string compiler_cmd;
    std::string solver_cmd;
    std::optional<double> timeout_sem;
    std::optional<int> max_recompile_iters;
    std::string penalties;
    std::optional<double> gamma;
    std::optional<double> delta;
    std::optional<int> unroll_bound;
    std::optional<int> jobs;
    bool verbose = false;
};

ServiceConfig resolve(const Overrides& o) {
    ServiceConfig cfg;
    if (!o.config.empty()) cfg = load_config(o.config, cfg);
    json j = json::object();
    if (!o.compiler_cmd.empty()) j["compiler_cmd"] = o.compiler_cmd;
    if (!o.solver_cmd.empty()) j["solver_cmd"] = o.solver_cmd;
    if (o.timeout_sem) j["timeout_sem"] = *o.timeout_sem;
    if (o.max_recompile_iters) j["max_recompile_iters"] = *o.max_recompile_iters;
    if (!o.penalties.empty()) j["penalties"] = o.penalties;
    if (o.gamma) j["gamma"] = *o.gamma;
    if (o.delta) j["delta"] = *o.delta;
    if (o.unroll_bound) j["unroll_bound"] = *o.unroll_bound;
    if (o.jobs) j["jobs"] = *o.jobs;
    if (o.verbose) j["verbose"] = true;
    cfg = ServiceConfig::from_json(j, cfg);
    if (cfg.jobs > 0) util::set_process_limit(cfg.jobs);
    return cfg;
}

std::string slurp(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty() && path != "-") {
            file_.open(path);
            if (!file_) throw IoError("cannot write " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

Corpus load_corpus(const std::string& path) {
    Corpus c = ingest(path);
    for (const SchemaError& e : c.errors) std::cerr << path << ":" << e.line << ": " << e.message << "\n";
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gated quality score for refined decompiler output"};
    app.require_subcommand(1);
    app.fallthrough();
    Overrides o;
    app.add_option("--config", o.config, "JSON config file")->check(CLI::ExistingFile);
    app.add_option("--compiler-cmd", o.compiler_cmd, "C compiler command (default: $DSCORE_CC or cc)");
    app.add_option("--solver-cmd", o.solver_cmd, "SMT solver command reading SMT-LIB2 on stdin (default: $DSCORE_SMT or z3 -in)");
    app.add_option("--timeout-sem", o.timeout_sem, "Semantic stage budget in seconds (default 30)");
    app.add_option("--max-recompile-iters", o.max_recompile_iters, "Compile/fix-up iterations (default 10)");
    app.add_option("--penalties", o.penalties, "syn,ret,call (default -3,-2,-1.5)");
    app.add_option("--gamma", o.gamma, "Weight of the B&W component (default 0.25)");
    app.add_option("--delta", o.delta, "Weight of the R2I component (default 0.75)");
    app.add_option("--unroll-bound", o.unroll_bound, "Visits per block along one path (default 32)");
    app.add_option("--jobs", o.jobs, "Worker threads (default: CPU count)");
    app.add_flag("--verbose", o.verbose, "Include symbolic models in diagnostics");

    std::string reference;
    std::string candidate;
    auto* score_cmd = app.add_subcommand("score", "Score one candidate against a reference");
    score_cmd->add_option("reference", reference, "Reference source file ('-' for stdin)")->required();
    score_cmd->add_option("candidate", candidate, "Candidate source file")->required();

    std::string corpus_file;
    std::string out_file;
    bool table = false;
    auto* batch_cmd = app.add_subcommand("score-batch", "Score every candidate in a JSONL corpus");
    batch_cmd->add_option("corpus", corpus_file, "JSONL corpus")->required()->check(CLI::ExistingFile);
    batch_cmd->add_option("-o,--out", out_file, "Write the JSON report here instead of stdout");
    batch_cmd->add_flag("--table", table, "Also print the summary table to stderr");

    int min_lines = 20;
    int min_cc = 4;
    auto* filter_cmd = app.add_subcommand("filter", "Keep records with enough lines and branching");
    filter_cmd->add_option("corpus", corpus_file, "JSONL corpus")->required()->check(CLI::ExistingFile);
    filter_cmd->add_option("--min-lines", min_lines, "Minimum non-blank lines")->capture_default_str();
    filter_cmd->add_option("--min-cc", min_cc, "Minimum cyclomatic complexity")->capture_default_str();
    filter_cmd->add_option("-o,--out", out_file, "Write kept records here instead of stdout");

    auto* check_cmd = app.add_subcommand("ingest-check", "Validate a JSONL corpus");
    check_cmd->add_option("corpus", corpus_file, "JSONL corpus")->required()->check(CLI::ExistingFile);

    std::string record_id;
    std::string source_file;
    auto* prompt_cmd = app.add_subcommand("emit-prompt", "Print chat prompts for records");
    auto* prompt_corpus = prompt_cmd->add_option("--corpus", corpus_file, "JSONL corpus")->check(CLI::ExistingFile);
    prompt_cmd->add_option("--id", record_id, "Only this record")->needs(prompt_corpus);
    prompt_cmd->add_option("--source", source_file, "Single source file instead of a corpus")->excludes(prompt_corpus);

    bool stdio = false;
    std::string host;
    std::optional<int> port;
    auto* serve_cmd = app.add_subcommand("serve", "Run the reward service");
    serve_cmd->add_flag("--stdio", stdio, "Newline-delimited JSON on stdin/stdout instead of HTTP");
    serve_cmd->add_option("--host", host, "Listen address (default 127.0.0.1)");
    serve_cmd->add_option("--port", port, "Listen port (default 8765, 0 picks one)");

    std::string report_file;
    bool report_json = false;
    auto* report_cmd = app.add_subcommand("report", "Summarize a score-batch report");
    report_cmd->add_option("report", report_file, "JSON report from score-batch")->required()->check(CLI::ExistingFile);
    report_cmd->add_flag("--json", report_json, "Print the recomputed summary as JSON");

    CLI11_PARSE(app, argc, argv);

    try {
        ServiceConfig cfg = resolve(o);

        if (*score_cmd) {
            const DScoreResult r = score(slurp(reference), slurp(candidate), cfg.scoring);
            std::cout << dump_json(r.to_json()) << "\n";
            return 0;
        }
        if (*batch_cmd) {
            Corpus c = load_corpus(corpus_file);
            ScoreReport report = score_batch(c.records, cfg.scoring, cfg.jobs);
            Output out(out_file);
            out.stream() << dump_json(report.to_json()) << "\n";
            if (table) std::cerr << render_table(report);
            return 0;
        }
        if (*filter_cmd) {
            Corpus c = load_corpus(corpus_file);
            FilterResult f = filter_dataset(c.records, min_lines, min_cc);
            Output out(out_file);
            for (const FunctionRecord& r : f.kept) out.stream() << dump_json(to_json(r)) << "\n";
            std::cerr << "kept " << f.kept.size() << ", dropped " << f.dropped.size() << "\n";
            return 0;
        }
        if (*check_cmd) {
            Corpus c = load_corpus(corpus_file);
            int unparseable = 0;
            for (const FunctionRecord& r : c.records) {
                if (r.parseable()) continue;
                ++unparseable;
                std::cerr << r.id << ": original_decompiled does not parse: " << r.parse_error << "\n";
            }
            std::cout << dump_json({{"records", c.records.size()},
                                    {"schema_errors", c.errors.size()},
                                    {"unparseable", unparseable}})
                      << "\n";
            return c.errors.empty() && unparseable == 0 ? 0 : 1;
        }
        if (*prompt_cmd) {
            if (!source_file.empty()) {
                std::cout << dump_json(emit_prompt(slurp(source_file))) << "\n";
                return 0;
            }
            if (corpus_file.empty()) throw CLI::RequiredError("--corpus or --source");
            Corpus c = load_corpus(corpus_file);
            bool found = false;
            for (const FunctionRecord& r : c.records) {
                if (!record_id.empty() && r.id != record_id) continue;
                found = true;
                std::cout << dump_json({{"id", r.id}, {"prompt", emit_prompt(r)}}) << "\n";
            }
            if (!found && !record_id.empty()) {
                std::cerr << "no record with id " << record_id << "\n";
                return 1;
            }
            return 0;
        }
        if (*serve_cmd) {
            if (!host.empty()) cfg.host = host;
            if (port) cfg.port = *port;
            cfg.validate();
            if (stdio) {
                serve_stdio(std::cin, std::cout, cfg);
                return 0;
            }
            std::signal(SIGINT, on_signal);
            std::signal(SIGTERM, on_signal);
            const json h = health(cfg);
            if (h["status"] != "ok") std::cerr << "warning: " << dump_json(h) << "\n";
            serve_http(cfg, g_stop, [&](int bound) {
                std::cerr << "listening on " << cfg.host << ":" << bound << "\n";
            });
            return 0;
        }
        if (*report_cmd) {
            ScoreReport report = ScoreReport::from_json(json::parse(slurp(report_file)));
            if (report_json) {
                std::cout << dump_json(report.to_json()["summary"], 2) << "\n";
            } else {
                std::cout << render_table(report);
            }
            return 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
