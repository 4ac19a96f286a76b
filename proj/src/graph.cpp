#include "asmell/graph.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "asmell/error.hpp"

namespace asmell {

std::string_view to_string(Level level) {
    return level == Level::File ? "file" : "component";
}

Level parse_level(std::string_view text) {
    if (text == "file") return Level::File;
    if (text == "component") return Level::Component;
    throw Error(ErrorKind::FormatError, "unknown level '" + std::string(text) + "'");
}

std::optional<DependencyGraph::Index> DependencyGraph::find(std::string_view path) const {
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), path,
                               [](const Node& n, std::string_view p) { return n.path < p; });
    if (it == nodes_.end() || it->path != path) return std::nullopt;
    return static_cast<Index>(it - nodes_.begin());
}

DependencyGraph::Index DependencyGraph::index_of(std::string_view path) const {
    if (auto i = find(path)) return *i;
    throw Error(ErrorKind::MissingMetric, "no node '" + std::string(path) + "' in graph");
}

std::span<const DependencyGraph::Index> DependencyGraph::successors(Index i) const {
    return {out_targets_.data() + out_offsets_[i], out_offsets_[i + 1] - out_offsets_[i]};
}

std::span<const DependencyGraph::Index> DependencyGraph::predecessors(Index i) const {
    return {in_sources_.data() + in_offsets_[i], in_offsets_[i + 1] - in_offsets_[i]};
}

bool DependencyGraph::has_edge(Index from, Index to) const {
    auto succ = successors(from);
    return std::binary_search(succ.begin(), succ.end(), to);
}

std::vector<std::pair<DependencyGraph::Index, DependencyGraph::Index>> DependencyGraph::edges() const {
    std::vector<std::pair<Index, Index>> out;
    out.reserve(edge_count());
    for (Index i = 0; i < node_count(); ++i) {
        for (Index j : successors(i)) out.emplace_back(i, j);
    }
    return out;
}

DependencyGraph DependencyGraph::with_version(VersionInfo version) const {
    DependencyGraph copy = *this;
    copy.version_ = std::move(version);
    return copy;
}

DependencyGraph build_graph(Level level, std::vector<NodeSpec> nodes, std::vector<EdgeSpec> edges,
                            VersionInfo version) {
    DependencyGraph g;
    g.level_ = level;
    g.version_ = std::move(version);

    std::sort(nodes.begin(), nodes.end(),
              [](const NodeSpec& a, const NodeSpec& b) { return a.id.path < b.id.path; });
    g.nodes_.reserve(nodes.size());
    for (auto& spec : nodes) {
        if (spec.id.level != level) {
            throw Error(ErrorKind::LevelMismatch, "node '" + spec.id.path + "' has level " +
                                                      std::string(to_string(spec.id.level)) + ", graph is " +
                                                      std::string(to_string(level)));
        }
        if (spec.id.path.empty()) throw Error(ErrorKind::FormatError, "empty node path");
        if (spec.id.path.find('\\') != std::string::npos) {
            throw Error(ErrorKind::FormatError, "path uses '\\' separators: " + spec.id.path);
        }
        if (level == Level::Component && spec.component) {
            throw Error(ErrorKind::LevelMismatch, "component node '" + spec.id.path + "' has a component_of");
        }
        if (spec.loc < 0) throw Error(ErrorKind::FormatError, "negative loc for '" + spec.id.path + "'");
        if (!g.nodes_.empty() && g.nodes_.back().path == spec.id.path) {
            throw Error(ErrorKind::DuplicateNode, "node '" + spec.id.path + "' listed twice");
        }
        g.nodes_.push_back({std::move(spec.id.path), spec.loc, std::move(spec.component)});
    }

    std::vector<std::pair<DependencyGraph::Index, DependencyGraph::Index>> resolved;
    resolved.reserve(edges.size());
    for (const auto& [from, to] : edges) {
        auto a = g.find(from);
        auto b = g.find(to);
        if (!a || !b) {
            throw Error(ErrorKind::DanglingEdge,
                        "edge " + from + " -> " + to + " references missing node '" + (a ? to : from) + "'");
        }
        if (*a != *b) resolved.emplace_back(*a, *b);
    }
    std::sort(resolved.begin(), resolved.end());
    resolved.erase(std::unique(resolved.begin(), resolved.end()), resolved.end());

    const std::size_t n = g.nodes_.size();
    g.out_offsets_.assign(n + 1, 0);
    g.in_offsets_.assign(n + 1, 0);
    for (auto [a, b] : resolved) {
        ++g.out_offsets_[a + 1];
        ++g.in_offsets_[b + 1];
    }
    for (std::size_t i = 0; i < n; ++i) {
        g.out_offsets_[i + 1] += g.out_offsets_[i];
        g.in_offsets_[i + 1] += g.in_offsets_[i];
    }
    g.out_targets_.resize(resolved.size());
    g.in_sources_.resize(resolved.size());
    std::vector<std::size_t> out_fill(g.out_offsets_.begin(), g.out_offsets_.end() - 1);
    std::vector<std::size_t> in_fill(g.in_offsets_.begin(), g.in_offsets_.end() - 1);
    // resolved is sorted by (from, to), so both CSR lists come out sorted.
    for (auto [a, b] : resolved) {
        g.out_targets_[out_fill[a]++] = b;
        g.in_sources_[in_fill[b]++] = a;
    }
    return g;
}

DependencyGraph project_to_components(const DependencyGraph& file_graph) {
    std::map<std::string, std::int64_t> loc;
    for (const auto& n : file_graph.nodes()) {
        if (!n.component) throw Error(ErrorKind::MissingComponent, "file '" + n.path + "' has no component");
        loc[*n.component] += n.loc;
    }
    std::vector<NodeSpec> nodes;
    nodes.reserve(loc.size());
    for (const auto& [path, total] : loc) nodes.push_back({{Level::Component, path}, total, std::nullopt});

    std::set<EdgeSpec> edges;
    for (auto [a, b] : file_graph.edges()) {
        const auto& ca = *file_graph.node(a).component;
        const auto& cb = *file_graph.node(b).component;
        if (ca != cb) edges.emplace(ca, cb);
    }
    return build_graph(Level::Component, std::move(nodes), {edges.begin(), edges.end()}, file_graph.version());
}

std::string check_invariants(const DependencyGraph& graph) {
    for (DependencyGraph::Index i = 0; i < graph.node_count(); ++i) {
        const auto& n = graph.node(i);
        if (n.path.empty()) return "empty path";
        if (graph.level() == Level::File && !n.component) return "file '" + n.path + "' lacks component";
        if (graph.level() == Level::Component && n.component) return "component '" + n.path + "' has component_of";
        if (i > 0 && !(graph.node(i - 1).path < n.path)) return "nodes not strictly ordered";
        for (auto j : graph.successors(i)) {
            if (j == i) return "self-loop on '" + n.path + "'";
        }
    }
    return {};
}

bool structurally_equal(const DependencyGraph& a, const DependencyGraph& b) {
    if (a.level() != b.level() || a.node_count() != b.node_count() || a.edge_count() != b.edge_count()) return false;
    for (DependencyGraph::Index i = 0; i < a.node_count(); ++i) {
        const auto& x = a.node(i);
        const auto& y = b.node(i);
        if (x.path != y.path || x.loc != y.loc || x.component != y.component) return false;
    }
    return a.edges() == b.edges();
}

}  // namespace asmell
