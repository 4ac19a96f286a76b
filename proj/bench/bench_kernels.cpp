#include <random>

#include <benchmark/benchmark.h>

#include "asmell/evolve.hpp"
#include "asmell/metrics.hpp"

using namespace asmell;

namespace {

DependencyGraph random_graph(std::size_t n, std::size_t degree, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<NodeSpec> nodes;
    std::vector<EdgeSpec> edges;
    auto name = [](std::size_t i) { return "n" + std::to_string(i); };
    for (std::size_t i = 0; i < n; ++i) {
        nodes.push_back({{Level::Component, name(i)}, 1, std::nullopt});
        for (std::size_t d = 0; d < degree; ++d) edges.emplace_back(name(i), name(rng() % n));
    }
    return build_graph(Level::Component, nodes, edges);
}

void BM_PageRank(benchmark::State& state) {
    const auto g = random_graph(static_cast<std::size_t>(state.range(0)), 8, 1);
    for (auto _ : state) benchmark::DoNotOptimize(pagerank(g));
}

void BM_PageRankSerial(benchmark::State& state) {
    const auto g = random_graph(static_cast<std::size_t>(state.range(0)), 8, 1);
    for (auto _ : state) benchmark::DoNotOptimize(pagerank_serial(g));
}

std::vector<std::vector<SmellInstance>> random_versions(int versions, int per_version, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::vector<SmellInstance>> out(static_cast<std::size_t>(versions));
    for (int v = 0; v < versions; ++v) {
        for (int i = 0; i < per_version; ++i) {
            SmellInstance s;
            s.type = kSmellTypes[rng() % 4];
            s.level = Level::Component;
            s.version_index = v;
            auto pick = [&] { return "c" + std::to_string(rng() % 200); };
            if (s.type == SmellType::CD) {
                s.roles["member"] = {pick(), pick(), pick()};
            } else if (s.type == SmellType::GC) {
                s.roles["member"] = {pick()};
            } else if (s.type == SmellType::HL) {
                s.roles["centre"] = {pick()};
                s.roles["incoming"] = {pick(), pick()};
                s.roles["outgoing"] = {pick(), pick()};
            } else {
                s.roles["centre"] = {pick()};
                s.roles["less_stable"] = {pick(), pick()};
            }
            s.id = make_instance_id(s, std::to_string(i));
            out[static_cast<std::size_t>(v)].push_back(std::move(s));
        }
    }
    return out;
}

void BM_Cooccurrence(benchmark::State& state) {
    const auto pv = random_versions(10, static_cast<int>(state.range(0)), 2);
    for (auto _ : state) benchmark::DoNotOptimize(cooccurrence_matrix(pv, Level::Component));
}

void BM_Precedence(benchmark::State& state) {
    const auto temporal = build_temporal_instances(random_versions(10, static_cast<int>(state.range(0)), 3));
    for (auto _ : state) benchmark::DoNotOptimize(precedence_matrices(temporal, 10));
}

}  // namespace

BENCHMARK(BM_PageRank)->Arg(1000)->Arg(20000);
BENCHMARK(BM_PageRankSerial)->Arg(1000)->Arg(20000);
BENCHMARK(BM_Cooccurrence)->Arg(100)->Arg(400);
BENCHMARK(BM_Precedence)->Arg(100)->Arg(400);
BENCHMARK_MAIN();
