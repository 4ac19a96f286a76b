#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "asmell/error.hpp"
#include "asmell/graph.hpp"
#include "asmell/metrics.hpp"
#include "asmell/smell.hpp"

namespace asmell {

enum class CycleMode { Scc, Elementary };

struct CycleLimits {
    std::size_t max_len = 0;  // 0: unbounded
    std::size_t max_count = 100000;
};

/// Dense adjacency of a node subset; `members` keeps the graph indices.
struct InducedSubgraph {
    std::vector<DependencyGraph::Index> members;
    std::vector<char> adjacency;  // row-major n*n

    InducedSubgraph() = default;
    InducedSubgraph(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> edges);
    static InducedSubgraph of(const DependencyGraph& graph, std::span<const DependencyGraph::Index> members);

    std::size_t size() const noexcept { return members.size(); }
    bool edge(std::size_t from, std::size_t to) const { return adjacency[from * size() + to] != 0; }
    std::size_t edge_count() const;
    bool strongly_connected() const;
};

/// First matching rule wins: Tiny, Clique, Circle, Star, Chain, else Multi.
/// Throws NotStronglyConnected.
Shape classify_shape(const InducedSubgraph& subgraph);

std::vector<SmellInstance> detect_cycles(const DependencyGraph& graph, CycleMode mode = CycleMode::Scc,
                                         const CycleLimits& limits = {}, Diagnostics* diags = nullptr);

DesignLevel affected_design_level(const SmellInstance& cd, std::span<const SmellInstance> file_cycles,
                                  const DependencyGraph& file_graph, const DependencyGraph& component_graph);

std::vector<SmellInstance> detect_hublike(const DependencyGraph& graph);

struct HlRatios {
    double affected = 0.0;
    double afferent = 0.0;
    double efferent = 0.0;
};

/// Border-crossing file ratios of a component-level hub. Throws EmptyComponent.
HlRatios compute_hl_ratios(const SmellInstance& hl, const DependencyGraph& file_graph);

std::vector<SmellInstance> detect_unstable(const DependencyGraph& component_graph, std::span<const NodeMetrics> metrics,
                                           double threshold = 0.3);

std::vector<SmellInstance> detect_god_components(const DependencyGraph& component_graph,
                                                 const DependencyGraph& file_graph, std::int64_t min_loc = 0,
                                                 Diagnostics* diags = nullptr);

/// Quantile of sorted values by linear interpolation between order statistics.
double quantile(std::span<const double> sorted, double p);

struct DetectOptions {
    CycleMode cycle_mode = CycleMode::Scc;
    CycleLimits cycle_limits;
    double ud_threshold = 0.3;
    std::int64_t gc_min_loc = 0;
    PageRankOptions pagerank;
};

/// All detectors over one version, with every characteristic filled in.
/// Order: file CD, component CD, file HL, component HL, UD, GC.
std::vector<SmellInstance> detect_version(const DependencyGraph& file_graph, const DependencyGraph& component_graph,
                                          const DetectOptions& options, Diagnostics& diags);

}  // namespace asmell
