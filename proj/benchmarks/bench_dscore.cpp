#include "dscore/equivalence/checker.hpp"
#include "dscore/frontend/parser.hpp"
#include "dscore/readability/readability.hpp"
#include "dscore/scoring/dscore.hpp"
#include "dscore/scoring/reward_group.hpp"
#include "dscore/symbolic/engine.hpp"

#include <benchmark/benchmark.h>

#include <fstream>
#include <random>
#include <sstream>

using namespace dscore;

namespace {

std::string read(const std::string& name) {
    std::ifstream in(std::string(DSCORE_FIXTURE_DIR) + "/" + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const std::string& fdisk() {
    static const std::string s = read("fdisk_delete_all_partitions_original.c");
    return s;
}

void BM_Parse(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(frontend::parse_function(fdisk()));
}
BENCHMARK(BM_Parse);

void BM_Features(benchmark::State& state) {
    const auto ast = frontend::parse_function(fdisk());
    for (auto _ : state) benchmark::DoNotOptimize(readability::extract_features(fdisk(), ast));
}
BENCHMARK(BM_Features);

void BM_SymbolicModel(benchmark::State& state) {
    const auto ast = frontend::parse_function(read("uuid_copy_original.c"));
    const auto gt = symbolic::ground_truth_calls(ast);
    for (auto _ : state) benchmark::DoNotOptimize(symbolic::build_models(ast, gt, {}));
}
BENCHMARK(BM_SymbolicModel)->Unit(benchmark::kMicrosecond);

void BM_EquivalenceCheck(benchmark::State& state) {
    const auto ref = frontend::parse_function(fdisk());
    const auto cand = frontend::parse_function(read("fdisk_delete_all_partitions_finetuned.c"));
    const auto gt = symbolic::ground_truth_calls(ref);
    const auto cfg = equivalence::SolverConfig::from_env();
    for (auto _ : state) {
        auto ctx = std::make_shared<symbolic::ExprContext>();
        const auto a = symbolic::build_models(ref, gt, {}, ctx);
        const auto b = symbolic::build_models(cand, gt, {}, ctx);
        benchmark::DoNotOptimize(equivalence::check(a, b, cfg));
    }
}
BENCHMARK(BM_EquivalenceCheck)->Unit(benchmark::kMillisecond);

void BM_ScorePipeline(benchmark::State& state) {
    const auto ref = read("strv_length_original.c");
    const auto cand = read("strv_length_finetuned.c");
    const auto cfg = DScoreConfig::from_env();
    for (auto _ : state) benchmark::DoNotOptimize(score(ref, cand, cfg));
}
BENCHMARK(BM_ScorePipeline)->Unit(benchmark::kMillisecond);

void BM_Normalize(benchmark::State& state) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> d(-3, 1);
    std::vector<double> r(static_cast<std::size_t>(state.range(0)));
    for (double& x : r) x = d(rng);
    for (auto _ : state) benchmark::DoNotOptimize(normalize(r));
}
BENCHMARK(BM_Normalize)->Arg(3)->Arg(64)->Arg(4096);

}  // namespace

BENCHMARK_MAIN();
