#include "attrgraph/dataset.hpp"
#include "attrgraph/graph.hpp"
#include "attrgraph/signal.hpp"
#include "attrgraph/util.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

using namespace attrgraph;

namespace {

std::string jsonl_corpus(size_t entries) {
    std::mt19937 rng(42);
    std::string text;
    for (size_t i = 0; i < entries; ++i) {
        const size_t dev = rng() % (entries / 8 + 1);
        text += "{\"market\": \"google-play\", \"package_name\": \"com.bench.app" +
                std::to_string(i) + "\", \"crawl_id\": 1, \"fetched_at\": "
                "\"2021-06-01T00:00:00Z\", \"app_name\": \"Bench App " +
                std::to_string(i) + "\", \"developer_name\": \"Bench Dev " +
                std::to_string(dev) + "\", \"developer_email\": \"dev" +
                std::to_string(dev) + "@bench.example\"}\n";
    }
    return text;
}

Dataset bench_dataset(size_t entries) {
    LoadResult result = load_dataset(jsonl_corpus(entries), MarketRegistry::builtin());
    return std::move(result.dataset);
}

std::vector<const MarketEntry*> pointers(const Dataset& dataset) {
    std::vector<const MarketEntry*> out;
    for (const auto& [key, pick] : latest_entries(dataset)) out.push_back(pick.entry);
    return out;
}

void BM_NormalizeSignal(benchmark::State& state) {
    const std::string value = "  Cube Apps LTD – Photo Éditeur  ";
    for (auto _ : state) {
        benchmark::DoNotOptimize(normalize_signal(SignalKind::DeveloperName, value));
    }
}
BENCHMARK(BM_NormalizeSignal);

void BM_LevenshteinSimilarity(benchmark::State& state) {
    const std::string a(static_cast<size_t>(state.range(0)), 'a');
    std::string b(static_cast<size_t>(state.range(0)), 'a');
    for (size_t i = 0; i < b.size(); i += 3) b[i] = 'b';
    for (auto _ : state) {
        benchmark::DoNotOptimize(levenshtein_similarity(a, b));
    }
}
BENCHMARK(BM_LevenshteinSimilarity)->Arg(16)->Arg(64)->Arg(256);

void BM_LoadDataset(benchmark::State& state) {
    const std::string text = jsonl_corpus(static_cast<size_t>(state.range(0)));
    const MarketRegistry registry = MarketRegistry::builtin();
    for (auto _ : state) {
        benchmark::DoNotOptimize(load_dataset(text, registry));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LoadDataset)->Arg(100)->Arg(1000)->Arg(10000);

void BM_BuildGraph(benchmark::State& state) {
    const Dataset dataset = bench_dataset(static_cast<size_t>(state.range(0)));
    const std::vector<const MarketEntry*> entries = pointers(dataset);
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_graph(entries));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildGraph)->Arg(100)->Arg(1000)->Arg(10000);

void BM_ConnectedComponents(benchmark::State& state) {
    const Dataset dataset = bench_dataset(static_cast<size_t>(state.range(0)));
    const AttributionGraph graph = build_graph(pointers(dataset));
    for (auto _ : state) {
        benchmark::DoNotOptimize(connected_components(graph));
    }
}
BENCHMARK(BM_ConnectedComponents)->Arg(1000)->Arg(10000);

void BM_BetweennessCentrality(benchmark::State& state) {
    const Dataset dataset = bench_dataset(static_cast<size_t>(state.range(0)));
    const AttributionGraph graph = build_graph(pointers(dataset));
    for (auto _ : state) {
        benchmark::DoNotOptimize(betweenness_centrality(graph, true));
    }
}
BENCHMARK(BM_BetweennessCentrality)->Arg(200)->Arg(1000);

void BM_Ccdf(benchmark::State& state) {
    std::mt19937 rng(7);
    std::vector<uint64_t> values(static_cast<size_t>(state.range(0)));
    for (auto& v : values) v = 1 + rng() % 50;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ccdf(values));
    }
}
BENCHMARK(BM_Ccdf)->Arg(1000)->Arg(100000);

void BM_Sha256Hex(benchmark::State& state) {
    std::vector<uint8_t> bytes(static_cast<size_t>(state.range(0)));
    std::mt19937 rng(9);
    for (auto& b : bytes) b = static_cast<uint8_t>(rng());
    for (auto _ : state) {
        benchmark::DoNotOptimize(sha256_hex(bytes));
    }
    state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Sha256Hex)->Arg(4096)->Arg(1 << 20);

} // namespace

BENCHMARK_MAIN();
