#include "asmell/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "asmell/error.hpp"

namespace asmell {

std::vector<FanCounts> compute_fan(const DependencyGraph& graph) {
    std::vector<FanCounts> fan(graph.node_count());
    for (DependencyGraph::Index i = 0; i < graph.node_count(); ++i) {
        fan[i] = {static_cast<int>(graph.predecessors(i).size()), static_cast<int>(graph.successors(i).size())};
    }
    return fan;
}

double instability(int fan_in, int fan_out) {
    const int total = fan_in + fan_out;
    return total == 0 ? 0.0 : static_cast<double>(fan_out) / static_cast<double>(total);
}

PageRankResult pagerank(const DependencyGraph& graph, const PageRankOptions& options) {
    const auto n = static_cast<std::ptrdiff_t>(graph.node_count());
    if (n == 0) throw Error(ErrorKind::EmptyGraph, "pagerank of an empty graph");
    const double inv_n = 1.0 / static_cast<double>(n);
    const double d = options.damping;

    PageRankResult result;
    std::vector<double> rank(static_cast<std::size_t>(n), inv_n), next(static_cast<std::size_t>(n)),
        contribution(static_cast<std::size_t>(n));
    for (int iter = 0; iter < options.max_iter; ++iter) {
        double dangling = 0.0;
        for (std::ptrdiff_t u = 0; u < n; ++u) {
            const auto out = graph.successors(static_cast<DependencyGraph::Index>(u)).size();
            if (out == 0) {
                dangling += rank[static_cast<std::size_t>(u)];
                contribution[static_cast<std::size_t>(u)] = 0.0;
            } else {
                contribution[static_cast<std::size_t>(u)] = rank[static_cast<std::size_t>(u)] / static_cast<double>(out);
            }
        }
        const double base = (1.0 - d) * inv_n + d * dangling * inv_n;
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t v = 0; v < n; ++v) {
            double sum = 0.0;
            for (auto u : graph.predecessors(static_cast<DependencyGraph::Index>(v))) sum += contribution[u];
            next[static_cast<std::size_t>(v)] = base + d * sum;
        }
        double delta = 0.0;
        for (std::ptrdiff_t v = 0; v < n; ++v) {
            delta += std::abs(next[static_cast<std::size_t>(v)] - rank[static_cast<std::size_t>(v)]);
        }
        rank.swap(next);
        result.iterations = iter + 1;
        if (delta < options.eps) {
            result.converged = true;
            break;
        }
    }
    result.rank = std::move(rank);
    return result;
}

PageRankResult pagerank_serial(const DependencyGraph& graph, const PageRankOptions& options) {
    const std::size_t n = graph.node_count();
    if (n == 0) throw Error(ErrorKind::EmptyGraph, "pagerank of an empty graph");
    const double inv_n = 1.0 / static_cast<double>(n);

    PageRankResult result;
    std::vector<double> rank(n, inv_n);
    for (int iter = 0; iter < options.max_iter; ++iter) {
        std::vector<double> next(n, 0.0);
        double dangling = 0.0;
        for (std::size_t u = 0; u < n; ++u) {
            auto succ = graph.successors(static_cast<DependencyGraph::Index>(u));
            if (succ.empty()) {
                dangling += rank[u];
                continue;
            }
            const double share = rank[u] / static_cast<double>(succ.size());
            for (auto v : succ) next[v] += share;
        }
        double delta = 0.0;
        for (std::size_t v = 0; v < n; ++v) {
            next[v] = (1.0 - options.damping) * inv_n + options.damping * (next[v] + dangling * inv_n);
            delta += std::abs(next[v] - rank[v]);
        }
        rank = std::move(next);
        result.iterations = iter + 1;
        if (delta < options.eps) {
            result.converged = true;
            break;
        }
    }
    result.rank = std::move(rank);
    return result;
}

std::vector<NodeMetrics> compute_metrics(const DependencyGraph& graph, const PageRankOptions& options) {
    std::vector<NodeMetrics> metrics(graph.node_count());
    if (graph.empty()) return metrics;
    const auto fan = compute_fan(graph);
    const auto pr = pagerank(graph, options);
    for (std::size_t i = 0; i < metrics.size(); ++i) {
        metrics[i] = {fan[i].fan_in, fan[i].fan_out, instability(fan[i].fan_in, fan[i].fan_out), pr.rank[i],
                      graph.node(static_cast<DependencyGraph::Index>(i)).loc};
    }
    return metrics;
}

double smell_centrality(const SmellInstance& instance, const DependencyGraph& graph,
                        std::span<const NodeMetrics> metrics) {
    const auto affected = instance.affected();
    if (affected.empty()) throw Error(ErrorKind::MissingMetric, "instance " + instance.id + " affects no artefacts");
    if (metrics.size() != graph.node_count()) throw Error(ErrorKind::MissingMetric, "metrics do not cover the graph");
    double best = 0.0;
    for (const auto& path : affected) {
        const auto i = graph.find(path);
        if (!i) throw Error(ErrorKind::MissingMetric, "no metrics for '" + path + "'");
        best = std::max(best, metrics[*i].pagerank);
    }
    return best * static_cast<double>(graph.node_count());
}

}  // namespace asmell
