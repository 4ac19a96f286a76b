#pragma once

#include <cstdint>
#include <filesystem>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "asmell/error.hpp"
#include "asmell/graph.hpp"

namespace asmell {

enum class FileKind { Impl, Header };

struct SourceFile {
    std::string path;  // project-relative, '/'-separated
    FileKind kind = FileKind::Impl;
    std::int64_t loc = 0;
    std::string component;
};

struct SourceInventory {
    std::vector<SourceFile> files;  // sorted by path
    std::vector<std::string> include_roots;

    const SourceFile* find(std::string_view path) const;
};

enum class IncludeForm { Quoted, Angled };

struct RawInclude {
    std::string from;
    std::string spec;
    IncludeForm form = IncludeForm::Quoted;

    bool operator==(const RawInclude&) const = default;
};

/// Extractor configuration, read from a `key = value` file. List values are
/// comma-separated and repeated keys append.
///
///   roots            directories scanned, relative to the snapshot (default ".")
///   exclude          glob patterns on project-relative paths
///   impl-ext         implementation extensions (default .c,.cc,.cpp,.cxx)
///   header-ext       header extensions (default .h,.hh,.hpp,.hxx)
///   include-roots    directories searched for includes, relative to the snapshot
///   component-map    TSV of `path-prefix<TAB>component-name`, relative to the config file
///   extra-edges-file interchange `E` records injected before hoisting
///   suffix-fallback  resolve still-unresolved includes by path suffix (default true)
struct ExtractConfig {
    std::vector<std::string> roots{"."};
    std::vector<std::string> exclude;
    std::vector<std::string> impl_ext{".c", ".cc", ".cpp", ".cxx"};
    std::vector<std::string> header_ext{".h", ".hh", ".hpp", ".hxx"};
    std::vector<std::string> include_roots;
    std::vector<std::pair<std::string, std::string>> component_map;
    std::vector<EdgeSpec> extra_edges;
    bool suffix_fallback = true;

    static ExtractConfig parse(std::string_view text, const std::filesystem::path& base_dir = {});
    static ExtractConfig load(const std::filesystem::path& path);

    /// Canonical text of every setting; part of the extraction cache key.
    std::string fingerprint() const;

    /// Component of a project-relative file path.
    std::string component_of(std::string_view path) const;
};

/// Non-blank, non-comment lines. Tracks block comments across lines and
/// ignores comment markers inside string and character literals.
std::int64_t count_loc(std::string_view text);

/// Replaces comment bodies with spaces, preserving newlines and literal contents.
std::string strip_comments(std::string_view text);

std::vector<RawInclude> extract_includes(std::string_view text, std::string_view from, Diagnostics& diags);

SourceInventory scan_sources(const std::filesystem::path& root, const ExtractConfig& config, Diagnostics& diags);

struct IncludeResolution {
    std::vector<EdgeSpec> edges;
    std::size_t unresolved = 0;
};

IncludeResolution resolve_includes(const SourceInventory& inventory, std::span<const RawInclude> includes,
                                   const ExtractConfig& config, Diagnostics& diags);

/// Rewrites dependencies through headers onto implementation files and drops
/// header nodes. `headers` names the header nodes of `graph`.
DependencyGraph hoist_header_deps(const DependencyGraph& graph, const std::set<std::string>& headers,
                                  Diagnostics& diags);

struct ExtractResult {
    DependencyGraph file_graph;  // hoisted, Impl nodes only
    SourceInventory inventory;
    std::size_t unresolved_includes = 0;
};

/// Full per-snapshot chain: scan, read, extract, resolve, hoist.
ExtractResult extract_snapshot(const std::filesystem::path& root, const ExtractConfig& config, VersionInfo version,
                               Diagnostics& diags);

/// Content hash of everything extraction reads: matching sources and the config.
std::string snapshot_fingerprint(const std::filesystem::path& root, const ExtractConfig& config);

std::string normalize_path(std::string_view path);

}  // namespace asmell
