#include "asmell/detect.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "asmell/scc.hpp"

namespace asmell {

using Index = DependencyGraph::Index;

InducedSubgraph::InducedSubgraph(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> edges)
    : adjacency(n * n, 0) {
    members.resize(n);
    for (std::size_t i = 0; i < n; ++i) members[i] = static_cast<Index>(i);
    for (auto [a, b] : edges) {
        if (a != b) adjacency[a * n + b] = 1;
    }
}

InducedSubgraph InducedSubgraph::of(const DependencyGraph& graph, std::span<const Index> members) {
    InducedSubgraph sub;
    sub.members.assign(members.begin(), members.end());
    std::sort(sub.members.begin(), sub.members.end());
    const std::size_t n = sub.members.size();
    sub.adjacency.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (Index w : graph.successors(sub.members[i])) {
            auto it = std::lower_bound(sub.members.begin(), sub.members.end(), w);
            if (it != sub.members.end() && *it == w) sub.adjacency[i * n + static_cast<std::size_t>(it - sub.members.begin())] = 1;
        }
    }
    return sub;
}

std::size_t InducedSubgraph::edge_count() const {
    return static_cast<std::size_t>(std::count(adjacency.begin(), adjacency.end(), char{1}));
}

bool InducedSubgraph::strongly_connected() const {
    const std::size_t n = size();
    if (n == 0) return false;
    auto reaches_all = [&](bool forward) {
        std::vector<bool> seen(n, false);
        std::vector<std::size_t> todo{0};
        seen[0] = true;
        while (!todo.empty()) {
            const auto v = todo.back();
            todo.pop_back();
            for (std::size_t w = 0; w < n; ++w) {
                if (!seen[w] && (forward ? edge(v, w) : edge(w, v))) {
                    seen[w] = true;
                    todo.push_back(w);
                }
            }
        }
        return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
    };
    return reaches_all(true) && reaches_all(false);
}

Shape classify_shape(const InducedSubgraph& g) {
    const std::size_t n = g.size();
    if (n < 2 || !g.strongly_connected()) {
        throw Error(ErrorKind::NotStronglyConnected, "shape needs a strongly connected subgraph of >= 2 nodes");
    }
    if (n == 2) return Shape::Tiny;

    std::vector<std::size_t> in(n, 0), out(n, 0);
    bool symmetric = true;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            if (!g.edge(a, b)) continue;
            ++out[a];
            ++in[b];
            if (!g.edge(b, a)) symmetric = false;
        }
    }
    const std::size_t edges = g.edge_count();

    if (edges == n * (n - 1)) return Shape::Clique;
    if (std::all_of(in.begin(), in.end(), [](auto d) { return d == 1; }) &&
        std::all_of(out.begin(), out.end(), [](auto d) { return d == 1; })) {
        return Shape::Circle;
    }
    if (symmetric && edges == 2 * (n - 1)) {
        // A symmetric, strongly connected graph with n-1 undirected edges is a tree.
        for (std::size_t c = 0; c < n; ++c) {
            if (out[c] == n - 1) return Shape::Star;
        }
        const bool path = std::all_of(out.begin(), out.end(), [](auto d) { return d <= 2; });
        if (path) return Shape::Chain;
    }
    return Shape::Multi;
}

namespace {

SmellInstance make_cycle_instance(const DependencyGraph& graph, std::span<const Index> members,
                                  std::string_view discriminator) {
    SmellInstance cd;
    cd.type = SmellType::CD;
    cd.level = graph.level();
    cd.version_index = graph.version_index();
    cd.version_label = graph.version_label();
    auto& set = cd.roles[std::string(role::member)];
    for (auto i : members) set.insert(graph.node(i).path);
    const auto sub = InducedSubgraph::of(graph, members);
    cd.characteristics[std::string(characteristic::size)] = static_cast<double>(members.size());
    cd.characteristics[std::string(characteristic::number_of_edges)] = static_cast<double>(sub.edge_count());
    cd.characteristics[std::string(characteristic::shape)] = std::string(to_string(classify_shape(sub)));
    cd.id = make_instance_id(cd, discriminator);
    return cd;
}

/// Johnson's elementary-circuit enumeration. A length cap is honoured by
/// treating a truncated branch as successful, which keeps blocked sets sound.
class CircuitFinder {
public:
    CircuitFinder(const DependencyGraph& graph, const CycleLimits& limits) : graph_(graph), limits_(limits) {}

    std::vector<std::vector<Index>> run() {
        const auto n = static_cast<Index>(graph_.node_count());
        blocked_.assign(n, false);
        blocked_by_.assign(n, {});
        in_scope_.assign(n, false);

        std::vector<std::vector<Index>> work = tarjan_scc(n, [&](Index v) { return graph_.successors(v); });
        auto by_smallest_last = [](const auto& a, const auto& b) { return a.front() > b.front(); };
        std::sort(work.begin(), work.end(), by_smallest_last);
        while (!work.empty() && !truncated_) {
            auto component = std::move(work.back());
            work.pop_back();
            if (component.size() < 2) continue;
            start_ = component.front();
            for (auto v : component) {
                in_scope_[v] = true;
                blocked_[v] = false;
                blocked_by_[v].clear();
            }
            circuit(start_);
            for (auto v : component) in_scope_[v] = false;

            // Remove the start node and split the rest again.
            std::vector<Index> rest(component.begin() + 1, component.end());
            std::vector<bool> keep(n, false);
            for (auto v : rest) keep[v] = true;
            std::vector<Index> local(n, UINT32_MAX);
            for (std::size_t i = 0; i < rest.size(); ++i) local[rest[i]] = static_cast<Index>(i);
            std::vector<std::vector<Index>> adj(rest.size());
            for (std::size_t i = 0; i < rest.size(); ++i) {
                for (auto w : graph_.successors(rest[i])) {
                    if (keep[w]) adj[i].push_back(local[w]);
                }
            }
            auto parts = tarjan_scc(static_cast<Index>(rest.size()), [&](Index v) -> const std::vector<Index>& { return adj[v]; });
            for (auto& p : parts) {
                if (p.size() < 2) continue;
                std::vector<Index> m;
                for (auto v : p) m.push_back(rest[v]);
                work.push_back(std::move(m));
            }
            std::sort(work.begin(), work.end(), by_smallest_last);
        }
        return std::move(cycles_);
    }

    bool truncated() const noexcept { return truncated_; }

private:
    void unblock(Index v) {
        std::vector<Index> todo{v};
        while (!todo.empty()) {
            const auto u = todo.back();
            todo.pop_back();
            if (!blocked_[u]) continue;
            blocked_[u] = false;
            for (auto w : blocked_by_[u]) todo.push_back(w);
            blocked_by_[u].clear();
        }
    }

    bool circuit(Index v) {
        bool found = false;
        path_.push_back(v);
        blocked_[v] = true;
        for (auto w : graph_.successors(v)) {
            if (truncated_) break;
            if (!in_scope_[w]) continue;
            if (w == start_) {
                cycles_.push_back(path_);
                found = true;
                if (limits_.max_count && cycles_.size() >= limits_.max_count) truncated_ = true;
            } else if (!blocked_[w]) {
                if (limits_.max_len && path_.size() >= limits_.max_len) {
                    found = true;
                } else if (circuit(w)) {
                    found = true;
                }
            }
        }
        if (found || truncated_) {
            unblock(v);
        } else {
            for (auto w : graph_.successors(v)) {
                if (in_scope_[w] && std::find(blocked_by_[w].begin(), blocked_by_[w].end(), v) == blocked_by_[w].end()) {
                    blocked_by_[w].push_back(v);
                }
            }
        }
        path_.pop_back();
        return found;
    }

    const DependencyGraph& graph_;
    CycleLimits limits_;
    Index start_ = 0;
    std::vector<bool> blocked_;
    std::vector<std::vector<Index>> blocked_by_;
    std::vector<bool> in_scope_;
    std::vector<Index> path_;
    std::vector<std::vector<Index>> cycles_;
    bool truncated_ = false;
};

double median(std::vector<double> values) {
    if (values.empty()) return 0.0;
    std::sort(values.begin(), values.end());
    const auto mid = values.size() / 2;
    return values.size() % 2 ? values[mid] : (values[mid - 1] + values[mid]) / 2.0;
}

std::size_t induced_edges(const DependencyGraph& graph, const std::set<std::string>& paths) {
    std::vector<Index> members;
    for (const auto& p : paths) {
        if (auto i = graph.find(p)) members.push_back(*i);
    }
    return InducedSubgraph::of(graph, members).edge_count();
}

}  // namespace

std::vector<SmellInstance> detect_cycles(const DependencyGraph& graph, CycleMode mode, const CycleLimits& limits,
                                         Diagnostics* diags) {
    std::vector<SmellInstance> out;
    const auto n = static_cast<Index>(graph.node_count());
    if (mode == CycleMode::Scc) {
        auto components = tarjan_scc(n, [&](Index v) { return graph.successors(v); });
        std::sort(components.begin(), components.end());
        for (const auto& c : components) {
            if (c.size() >= 2) out.push_back(make_cycle_instance(graph, c, {}));
        }
        return out;
    }

    CircuitFinder finder(graph, limits);
    auto cycles = finder.run();
    if (finder.truncated() && diags) {
        diags->warn("CycleEnumerationTruncated", std::string(to_string(graph.level())) + " graph of version " +
                                                     std::to_string(graph.version_index()) + ": stopped after " +
                                                     std::to_string(limits.max_count) + " cycles");
    }
    if (limits.max_len && diags) {
        diags->info("CycleLengthCap", "elementary cycles longer than " + std::to_string(limits.max_len) + " are not reported");
    }
    std::sort(cycles.begin(), cycles.end());
    for (const auto& cycle : cycles) {
        std::string order;
        for (auto v : cycle) order += graph.node(v).path + ">";
        out.push_back(make_cycle_instance(graph, cycle, order));
    }
    return out;
}

DesignLevel affected_design_level(const SmellInstance& cd, std::span<const SmellInstance> file_cycles,
                                  const DependencyGraph& file_graph, const DependencyGraph& component_graph) {
    const auto& members = cd.role_set(role::member);
    auto component_of_file = [&](const std::string& path) -> std::optional<std::string> {
        auto i = file_graph.find(path);
        if (!i) return std::nullopt;
        return file_graph.node(*i).component;
    };

    if (cd.level == Level::Component) {
        for (const auto& fc : file_cycles) {
            std::set<std::string> spanned;
            for (const auto& f : fc.role_set(role::member)) {
                if (auto c = component_of_file(f); c && members.count(*c)) spanned.insert(*c);
            }
            if (spanned.size() >= 2) return DesignLevel::Both;
        }
        return DesignLevel::ComponentOnly;
    }

    std::set<std::string> components;
    for (const auto& f : members) {
        if (auto c = component_of_file(f)) components.insert(*c);
    }
    if (components.size() < 2) return DesignLevel::FileOnly;
    std::vector<Index> idx;
    for (const auto& c : components) {
        if (auto i = component_graph.find(c)) idx.push_back(*i);
    }
    const auto sub = InducedSubgraph::of(component_graph, idx);
    std::vector<std::vector<Index>> adj(sub.size());
    for (std::size_t a = 0; a < sub.size(); ++a) {
        for (std::size_t b = 0; b < sub.size(); ++b) {
            if (sub.edge(a, b)) adj[a].push_back(static_cast<Index>(b));
        }
    }
    const auto sccs = tarjan_scc(static_cast<Index>(sub.size()), [&](Index v) -> const std::vector<Index>& { return adj[v]; });
    const bool cyclic = std::any_of(sccs.begin(), sccs.end(), [](const auto& s) { return s.size() >= 2; });
    return cyclic ? DesignLevel::Both : DesignLevel::FileOnly;
}

std::vector<SmellInstance> detect_hublike(const DependencyGraph& graph) {
    const auto fan = compute_fan(graph);
    std::vector<double> ins, outs;
    for (const auto& f : fan) {
        if (f.fan_in + f.fan_out > 0) {
            ins.push_back(f.fan_in);
            outs.push_back(f.fan_out);
        }
    }
    const double median_in = median(ins);
    const double median_out = median(outs);

    std::vector<SmellInstance> out;
    for (Index i = 0; i < graph.node_count(); ++i) {
        const double fi = fan[i].fan_in;
        const double fo = fan[i].fan_out;
        if (!(fi > median_in && fo > median_out && std::abs(fi - fo) < (fi + fo) / 4.0)) continue;
        SmellInstance hl;
        hl.type = SmellType::HL;
        hl.level = graph.level();
        hl.version_index = graph.version_index();
        hl.version_label = graph.version_label();
        hl.roles[std::string(role::centre)] = {graph.node(i).path};
        auto& incoming = hl.roles[std::string(role::incoming)];
        for (auto p : graph.predecessors(i)) incoming.insert(graph.node(p).path);
        auto& outgoing = hl.roles[std::string(role::outgoing)];
        for (auto s : graph.successors(i)) outgoing.insert(graph.node(s).path);
        const auto affected = hl.affected();
        hl.characteristics[std::string(characteristic::size)] = static_cast<double>(affected.size());
        hl.characteristics[std::string(characteristic::number_of_edges)] = static_cast<double>(induced_edges(graph, affected));
        hl.id = make_instance_id(hl);
        out.push_back(std::move(hl));
    }
    return out;
}

HlRatios compute_hl_ratios(const SmellInstance& hl, const DependencyGraph& file_graph) {
    const auto& centre_set = hl.role_set(role::centre);
    if (centre_set.size() != 1) throw Error(ErrorKind::EmptyComponent, "hub " + hl.id + " has no single centre");
    const auto& centre = *centre_set.begin();
    std::size_t files = 0, afferent = 0, efferent = 0, affected = 0;
    for (Index i = 0; i < file_graph.node_count(); ++i) {
        const auto& node = file_graph.node(i);
        if (node.component != centre) continue;
        ++files;
        auto outside = [&](Index j) { return file_graph.node(j).component != centre; };
        const bool in = std::any_of(file_graph.predecessors(i).begin(), file_graph.predecessors(i).end(), outside);
        const bool out = std::any_of(file_graph.successors(i).begin(), file_graph.successors(i).end(), outside);
        afferent += in;
        efferent += out;
        affected += in || out;
    }
    if (files == 0) throw Error(ErrorKind::EmptyComponent, "component '" + centre + "' has no files");
    const double total = static_cast<double>(files);
    return {static_cast<double>(affected) / total, static_cast<double>(afferent) / total,
            static_cast<double>(efferent) / total};
}

std::vector<SmellInstance> detect_unstable(const DependencyGraph& component_graph, std::span<const NodeMetrics> metrics,
                                           double threshold) {
    std::vector<SmellInstance> out;
    for (Index a = 0; a < component_graph.node_count(); ++a) {
        const auto deps = component_graph.successors(a);
        if (deps.empty()) continue;
        const double own = metrics[a].instability;
        std::vector<Index> less_stable;
        double sum = 0.0;
        for (auto d : deps) {
            if (metrics[d].instability > own) {
                less_stable.push_back(d);
                sum += metrics[d].instability;
            }
        }
        const double strength = static_cast<double>(less_stable.size()) / static_cast<double>(deps.size());
        if (!(strength > threshold)) continue;
        SmellInstance ud;
        ud.type = SmellType::UD;
        ud.level = Level::Component;
        ud.version_index = component_graph.version_index();
        ud.version_label = component_graph.version_label();
        ud.roles[std::string(role::centre)] = {component_graph.node(a).path};
        auto& ls = ud.roles[std::string(role::less_stable)];
        for (auto d : less_stable) ls.insert(component_graph.node(d).path);
        const auto affected = ud.affected();
        ud.characteristics[std::string(characteristic::size)] = static_cast<double>(affected.size());
        ud.characteristics[std::string(characteristic::number_of_edges)] =
            static_cast<double>(induced_edges(component_graph, affected));
        ud.characteristics[std::string(characteristic::strength)] = strength;
        ud.characteristics[std::string(characteristic::instability_gap)] =
            sum / static_cast<double>(less_stable.size()) - own;
        ud.id = make_instance_id(ud);
        out.push_back(std::move(ud));
    }
    return out;
}

double quantile(std::span<const double> sorted, double p) {
    if (sorted.empty()) return 0.0;
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::vector<SmellInstance> detect_god_components(const DependencyGraph& component_graph,
                                                 const DependencyGraph& file_graph, std::int64_t min_loc,
                                                 Diagnostics* diags) {
    std::vector<SmellInstance> out;
    if (component_graph.node_count() < 4) {
        if (diags) {
            diags->info("GcAbstained", "version " + std::to_string(component_graph.version_index()) + " has " +
                                           std::to_string(component_graph.node_count()) +
                                           " components; god-component detection needs at least 4");
        }
        return out;
    }
    std::vector<double> locs;
    for (const auto& n : component_graph.nodes()) locs.push_back(static_cast<double>(n.loc));
    std::sort(locs.begin(), locs.end());
    const double q1 = quantile(locs, 0.25);
    const double q3 = quantile(locs, 0.75);
    const double threshold = std::max(q3 + 1.5 * (q3 - q1), static_cast<double>(min_loc));

    std::map<std::string, std::size_t, std::less<>> files_per_component;
    for (const auto& f : file_graph.nodes()) {
        if (f.component) ++files_per_component[*f.component];
    }
    for (Index i = 0; i < component_graph.node_count(); ++i) {
        const auto& node = component_graph.node(i);
        if (!(static_cast<double>(node.loc) > threshold)) continue;
        SmellInstance gc;
        gc.type = SmellType::GC;
        gc.level = Level::Component;
        gc.version_index = component_graph.version_index();
        gc.version_label = component_graph.version_label();
        gc.roles[std::string(role::member)] = {node.path};
        auto it = files_per_component.find(node.path);
        const double files = it == files_per_component.end() ? 0.0 : static_cast<double>(it->second);
        gc.characteristics[std::string(characteristic::size)] = files;
        gc.characteristics[std::string(characteristic::number_of_edges)] = 0.0;
        gc.characteristics[std::string(characteristic::loc_density)] =
            files > 0 ? static_cast<double>(node.loc) / files : static_cast<double>(node.loc);
        gc.id = make_instance_id(gc);
        out.push_back(std::move(gc));
    }
    return out;
}

std::vector<SmellInstance> detect_version(const DependencyGraph& file_graph, const DependencyGraph& component_graph,
                                          const DetectOptions& options, Diagnostics& diags) {
    const auto file_metrics = compute_metrics(file_graph, options.pagerank);
    const auto component_metrics = compute_metrics(component_graph, options.pagerank);

    auto file_cds = detect_cycles(file_graph, options.cycle_mode, options.cycle_limits, &diags);
    auto component_cds = detect_cycles(component_graph, options.cycle_mode, options.cycle_limits, &diags);
    for (auto* group : {&file_cds, &component_cds}) {
        for (auto& cd : *group) {
            cd.characteristics[std::string(characteristic::design_level)] =
                std::string(to_string(affected_design_level(cd, file_cds, file_graph, component_graph)));
        }
    }

    auto file_hls = detect_hublike(file_graph);
    auto component_hls = detect_hublike(component_graph);
    for (auto& hl : component_hls) {
        try {
            const auto r = compute_hl_ratios(hl, file_graph);
            hl.characteristics[std::string(characteristic::affected_ratio)] = r.affected;
            hl.characteristics[std::string(characteristic::afferent_ratio)] = r.afferent;
            hl.characteristics[std::string(characteristic::efferent_ratio)] = r.efferent;
        } catch (const Error& e) {
            diags.warn("HlRatiosSkipped", e.what());
        }
    }
    auto uds = detect_unstable(component_graph, component_metrics, options.ud_threshold);
    auto gcs = detect_god_components(component_graph, file_graph, options.gc_min_loc, &diags);

    std::vector<SmellInstance> all;
    for (auto* group : {&file_cds, &component_cds, &file_hls, &component_hls, &uds, &gcs}) {
        for (auto& s : *group) all.push_back(std::move(s));
    }
    for (auto& s : all) {
        const bool file_level = s.level == Level::File;
        s.characteristics[std::string(characteristic::centrality)] =
            smell_centrality(s, file_level ? file_graph : component_graph, file_level ? file_metrics : component_metrics);
    }
    return all;
}

}  // namespace asmell
