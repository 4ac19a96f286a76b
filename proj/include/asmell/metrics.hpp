#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "asmell/graph.hpp"
#include "asmell/smell.hpp"

namespace asmell {

struct FanCounts {
    int fan_in = 0;
    int fan_out = 0;

    bool operator==(const FanCounts&) const = default;
};

/// Distinct in/out neighbours, indexed like the graph's nodes.
std::vector<FanCounts> compute_fan(const DependencyGraph& graph);

/// Martin instability fan_out / (fan_in + fan_out); 0 for isolated nodes.
double instability(int fan_in, int fan_out);

struct PageRankOptions {
    double damping = 0.85;
    double eps = 1e-10;
    int max_iter = 200;
};

struct PageRankResult {
    std::vector<double> rank;
    int iterations = 0;
    bool converged = false;
};

/// Power iteration with uniform teleport and uniform redistribution of
/// dangling mass. Stops when the L1 change drops below eps. Throws EmptyGraph.
///
/// The per-node update runs as an OpenMP loop over predecessors (pull form);
/// reductions are done serially so results do not depend on the thread count.
PageRankResult pagerank(const DependencyGraph& graph, const PageRankOptions& options = {});

/// Single-threaded push-form reference for `pagerank`.
PageRankResult pagerank_serial(const DependencyGraph& graph, const PageRankOptions& options = {});

struct NodeMetrics {
    int fan_in = 0;
    int fan_out = 0;
    double instability = 0.0;
    double pagerank = 0.0;
    std::int64_t loc = 0;
};

std::vector<NodeMetrics> compute_metrics(const DependencyGraph& graph, const PageRankOptions& options = {});

/// Max PageRank over the affected artefacts times the node count, so a
/// uniform graph scores exactly 1. Throws MissingMetric.
double smell_centrality(const SmellInstance& instance, const DependencyGraph& graph,
                        std::span<const NodeMetrics> metrics);

}  // namespace asmell
