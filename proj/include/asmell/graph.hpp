#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace asmell {

enum class Level { File, Component };

std::string_view to_string(Level level);
Level parse_level(std::string_view text);

struct ArtefactId {
    Level level = Level::File;
    std::string path;

    auto operator<=>(const ArtefactId&) const = default;
};

struct NodeSpec {
    ArtefactId id;
    std::int64_t loc = 0;
    std::optional<std::string> component;
};

/// (dependant, dependency) by path.
using EdgeSpec = std::pair<std::string, std::string>;

struct Node {
    std::string path;
    std::int64_t loc = 0;
    std::optional<std::string> component;
};

struct VersionInfo {
    int index = 0;
    std::string label;
};

/// Immutable dependency graph of one version at one abstraction level.
///
/// Nodes are kept in lexicographic path order, so a node's index is its rank
/// and every traversal that walks indices in order is deterministic. Edges are
/// stored twice in CSR form (successors and predecessors), each list sorted.
class DependencyGraph {
public:
    using Index = std::uint32_t;

    DependencyGraph() = default;

    Level level() const noexcept { return level_; }
    const VersionInfo& version() const noexcept { return version_; }
    int version_index() const noexcept { return version_.index; }
    const std::string& version_label() const noexcept { return version_.label; }

    std::size_t node_count() const noexcept { return nodes_.size(); }
    std::size_t edge_count() const noexcept { return out_targets_.size(); }
    bool empty() const noexcept { return nodes_.empty(); }

    const Node& node(Index i) const { return nodes_[i]; }
    std::span<const Node> nodes() const noexcept { return nodes_; }
    ArtefactId id(Index i) const { return {level_, nodes_[i].path}; }

    std::optional<Index> find(std::string_view path) const;
    Index index_of(std::string_view path) const;

    std::span<const Index> successors(Index i) const;
    std::span<const Index> predecessors(Index i) const;
    bool has_edge(Index from, Index to) const;

    /// All edges as (from, to) index pairs, ordered by from then to.
    std::vector<std::pair<Index, Index>> edges() const;

    /// Same graph stamped with a different version.
    DependencyGraph with_version(VersionInfo version) const;

    friend DependencyGraph build_graph(Level level, std::vector<NodeSpec> nodes,
                                       std::vector<EdgeSpec> edges, VersionInfo version);

private:
    Level level_ = Level::File;
    VersionInfo version_;
    std::vector<Node> nodes_;
    std::vector<std::size_t> out_offsets_{0};
    std::vector<Index> out_targets_;
    std::vector<std::size_t> in_offsets_{0};
    std::vector<Index> in_sources_;
};

/// Validates and canonicalizes: self-loops are dropped, duplicate edges collapsed.
/// Throws DanglingEdge, LevelMismatch or DuplicateNode.
DependencyGraph build_graph(Level level, std::vector<NodeSpec> nodes, std::vector<EdgeSpec> edges,
                            VersionInfo version = {});

/// Collapses a file graph onto its components. Throws MissingComponent.
DependencyGraph project_to_components(const DependencyGraph& file_graph);

/// Checks the structural invariants; returns an empty string when they hold.
std::string check_invariants(const DependencyGraph& graph);

bool structurally_equal(const DependencyGraph& a, const DependencyGraph& b);

// Line-oriented interchange format:
//   V <version_label>
//   N <file|component> <path> <loc> [component_path]
//   E <src_path> <dst_path>
//   # comment
// Paths are percent-encoded for '%', space, tab, CR and LF.
void save_graph(const DependencyGraph& graph, std::ostream& sink);
std::string save_graph(const DependencyGraph& graph);
DependencyGraph load_graph(std::istream& source, Level empty_level = Level::File, int version_index = 0);
DependencyGraph load_graph(std::string_view text, Level empty_level = Level::File, int version_index = 0);

/// File helpers for `<dir>/<version_index>.fgraph|.cgraph`. The version index is
/// taken from the file stem when numeric; the level of an empty graph from the extension.
void save_graph_file(const DependencyGraph& graph, const std::filesystem::path& path);
DependencyGraph load_graph_file(const std::filesystem::path& path);

std::string encode_token(std::string_view raw);
std::string decode_token(std::string_view encoded, std::size_t line);

}  // namespace asmell
