#include "asmell/extract.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <map>
#include <sstream>

#include "asmell/scc.hpp"
#include "asmell/util.hpp"

namespace fs = std::filesystem;

namespace asmell {

namespace {

constexpr std::string_view kExtractorVersion = "asmell-extract-1";

bool is_word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

/// True when the quote at `pos` is a C++14 digit separator (1'000).
bool inside_number(std::string_view text, std::size_t pos) {
    std::size_t start = pos;
    while (start > 0 && (is_word_char(text[start - 1]) || text[start - 1] == '.' || text[start - 1] == '\'')) --start;
    return start < pos && std::isdigit(static_cast<unsigned char>(text[start]));
}

std::string directory_of(std::string_view path) {
    const auto slash = path.rfind('/');
    return slash == std::string_view::npos ? std::string() : std::string(path.substr(0, slash));
}

std::string stem_of(std::string_view path) {
    const auto slash = path.rfind('/');
    auto name = slash == std::string_view::npos ? path : path.substr(slash + 1);
    const auto dot = name.rfind('.');
    return std::string(dot == std::string_view::npos || dot == 0 ? name : name.substr(0, dot));
}

std::string extension_of(std::string_view path) {
    const auto slash = path.rfind('/');
    auto name = slash == std::string_view::npos ? path : path.substr(slash + 1);
    const auto dot = name.rfind('.');
    return dot == std::string_view::npos || dot == 0 ? std::string() : std::string(name.substr(dot));
}

std::string join_path(std::string_view dir, std::string_view rel) {
    if (dir.empty() || dir == ".") return std::string(rel);
    return std::string(dir) + "/" + std::string(rel);
}

bool glob_match(const std::string& pattern, const std::string& path) {
    if (fnmatch(pattern.c_str(), path.c_str(), 0) == 0) return true;
    // A pattern naming a directory excludes everything below it.
    for (auto pos = path.find('/'); pos != std::string::npos; pos = path.find('/', pos + 1)) {
        if (fnmatch(pattern.c_str(), path.substr(0, pos).c_str(), 0) == 0) return true;
    }
    return false;
}

bool excluded(const ExtractConfig& config, const std::string& rel) {
    return std::any_of(config.exclude.begin(), config.exclude.end(),
                       [&](const std::string& g) { return glob_match(g, rel); });
}

std::vector<std::string> parse_list(std::string_view value) {
    std::vector<std::string> out;
    for (auto& part : split(value, ',')) {
        auto t = trim(part);
        if (!t.empty()) out.emplace_back(t);
    }
    return out;
}

struct ListedFile {
    std::string path;
    FileKind kind;
    fs::path absolute;
};

std::vector<ListedFile> list_sources(const fs::path& root, const ExtractConfig& config, Diagnostics& diags) {
    std::error_code ec;
    if (!fs::is_directory(root, ec)) throw Error(ErrorKind::IoError, "snapshot root is not a readable directory: " + root.string());
    fs::directory_iterator probe(root, ec);
    if (ec) throw Error(ErrorKind::IoError, "cannot read snapshot root " + root.string() + ": " + ec.message());

    std::map<std::string, ListedFile> found;
    for (const auto& configured : config.roots) {
        const auto root_rel = normalize_path(configured);
        const fs::path dir = root_rel.empty() || root_rel == "." ? root : root / root_rel;
        if (!fs::is_directory(dir, ec)) {
            diags.warn("MissingRoot", "configured root '" + configured + "' not found under " + root.string());
            continue;
        }
        fs::recursive_directory_iterator it(dir, fs::directory_options::skip_permission_denied, ec), end;
        if (ec) throw Error(ErrorKind::IoError, "cannot read " + dir.string() + ": " + ec.message());
        for (; it != end; it.increment(ec)) {
            if (ec) {
                diags.warn("IoWarning", ec.message());
                ec.clear();
                continue;
            }
            const auto rel = normalize_path(fs::relative(it->path(), root, ec).generic_string());
            if (it->is_directory(ec)) {
                if (excluded(config, rel)) it.disable_recursion_pending();
                continue;
            }
            if (!it->is_regular_file(ec) || excluded(config, rel)) continue;
            const auto ext = extension_of(rel);
            FileKind kind;
            if (std::find(config.impl_ext.begin(), config.impl_ext.end(), ext) != config.impl_ext.end()) {
                kind = FileKind::Impl;
            } else if (std::find(config.header_ext.begin(), config.header_ext.end(), ext) != config.header_ext.end()) {
                kind = FileKind::Header;
            } else {
                continue;
            }
            found.emplace(rel, ListedFile{rel, kind, it->path()});
        }
    }
    std::vector<ListedFile> out;
    out.reserve(found.size());
    for (auto& [_, f] : found) out.push_back(std::move(f));
    if (out.empty()) diags.warn("EmptyInventory", "no source files found under " + root.string());
    return out;
}

struct ReadFile {
    std::int64_t loc = 0;
    std::vector<RawInclude> includes;
    Diagnostics diags;
    bool failed = false;
};

/// Reads and analyses every listed file; per-file work is independent.
std::vector<ReadFile> read_sources(const std::vector<ListedFile>& files, bool want_includes) {
    std::vector<ReadFile> results(files.size());
    const auto n = static_cast<std::ptrdiff_t>(files.size());
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        auto& r = results[static_cast<std::size_t>(i)];
        const auto& f = files[static_cast<std::size_t>(i)];
        std::string text;
        try {
            text = read_file(f.absolute);
        } catch (const Error& e) {
            r.failed = true;
            r.diags.warn("UnreadableFile", e.what());
            continue;
        }
        r.loc = count_loc(text);
        if (want_includes) r.includes = extract_includes(text, f.path, r.diags);
    }
    return results;
}

}  // namespace

std::string normalize_path(std::string_view path) {
    std::string p(path);
    std::replace(p.begin(), p.end(), '\\', '/');
    std::vector<std::string> parts;
    for (auto& seg : split(p, '/')) {
        if (seg.empty() || seg == ".") continue;
        if (seg == ".." && !parts.empty() && parts.back() != "..") {
            parts.pop_back();
        } else {
            parts.push_back(seg);
        }
    }
    if (parts.empty()) return ".";
    std::string out = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) out += "/" + parts[i];
    return out;
}

const SourceFile* SourceInventory::find(std::string_view path) const {
    auto it = std::lower_bound(files.begin(), files.end(), path,
                               [](const SourceFile& f, std::string_view p) { return f.path < p; });
    return it != files.end() && it->path == path ? &*it : nullptr;
}

ExtractConfig ExtractConfig::parse(std::string_view text, const fs::path& base_dir) {
    ExtractConfig cfg;
    std::map<std::string, bool> seen;
    std::size_t line_no = 0;
    for (auto& raw : split(text, '\n')) {
        ++line_no;
        auto line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw FormatError(line_no, "expected key = value");
        const std::string key(trim(line.substr(0, eq)));
        const auto value = trim(line.substr(eq + 1));
        // The first occurrence of a list key replaces its default; later ones append.
        const bool first = !seen[key];
        seen[key] = true;
        auto assign = [&](std::vector<std::string>& target) {
            if (first) target.clear();
            for (auto& v : parse_list(value)) target.push_back(v);
        };
        if (key == "roots") {
            assign(cfg.roots);
        } else if (key == "exclude") {
            assign(cfg.exclude);
        } else if (key == "impl-ext") {
            assign(cfg.impl_ext);
        } else if (key == "header-ext") {
            assign(cfg.header_ext);
        } else if (key == "include-roots") {
            assign(cfg.include_roots);
        } else if (key == "component-map") {
            const auto map_text = read_file(base_dir / std::string(value));
            std::size_t map_line = 0;
            for (auto& entry : split(map_text, '\n')) {
                ++map_line;
                auto e = trim(entry);
                if (e.empty() || e.front() == '#') continue;
                const auto tab = e.find('\t');
                if (tab == std::string_view::npos) throw FormatError(map_line, "component-map needs prefix<TAB>name");
                cfg.component_map.emplace_back(std::string(trim(e.substr(0, tab))),
                                               std::string(trim(e.substr(tab + 1))));
            }
        } else if (key == "extra-edges-file") {
            const auto edges_text = read_file(base_dir / std::string(value));
            std::size_t edge_line = 0;
            for (auto& entry : split(edges_text, '\n')) {
                ++edge_line;
                auto e = trim(entry);
                if (e.empty() || e.front() == '#') continue;
                auto parts = split(e, ' ');
                parts.erase(std::remove(parts.begin(), parts.end(), std::string()), parts.end());
                if (parts.size() != 3 || parts[0] != "E") throw FormatError(edge_line, "extra edges accept only E records");
                cfg.extra_edges.emplace_back(decode_token(parts[1], edge_line), decode_token(parts[2], edge_line));
            }
        } else if (key == "suffix-fallback") {
            if (value == "true") {
                cfg.suffix_fallback = true;
            } else if (value == "false") {
                cfg.suffix_fallback = false;
            } else {
                throw FormatError(line_no, "suffix-fallback must be true or false");
            }
        } else {
            throw FormatError(line_no, "unknown key '" + key + "'");
        }
    }
    return cfg;
}

ExtractConfig ExtractConfig::load(const fs::path& path) {
    return parse(read_file(path), path.parent_path());
}

std::string ExtractConfig::fingerprint() const {
    std::ostringstream out;
    auto list = [&](std::string_view name, const std::vector<std::string>& values) {
        out << name << '=';
        for (const auto& v : values) out << v << ',';
        out << '\n';
    };
    list("roots", roots);
    list("exclude", exclude);
    list("impl-ext", impl_ext);
    list("header-ext", header_ext);
    list("include-roots", include_roots);
    for (const auto& [prefix, name] : component_map) out << "map=" << prefix << '\t' << name << '\n';
    for (const auto& [a, b] : extra_edges) out << "edge=" << a << ' ' << b << '\n';
    out << "suffix-fallback=" << suffix_fallback << '\n';
    return out.str();
}

std::string ExtractConfig::component_of(std::string_view path) const {
    const std::pair<std::string, std::string>* best = nullptr;
    for (const auto& entry : component_map) {
        if (path.substr(0, entry.first.size()) == entry.first &&
            (!best || entry.first.size() > best->first.size())) {
            best = &entry;
        }
    }
    if (best) return best->second;

    std::string root = ".";
    for (const auto& configured : roots) {
        const auto r = normalize_path(configured);
        if (r == ".") continue;
        if (path.size() > r.size() && path.substr(0, r.size()) == r && path[r.size()] == '/' &&
            (root == "." || r.size() > root.size())) {
            root = r;
        }
    }
    const auto rel = root == "." ? path : path.substr(root.size() + 1);
    const auto slash = rel.find('/');
    if (slash == std::string_view::npos) return root;
    return join_path(root, rel.substr(0, slash));
}

std::string strip_comments(std::string_view text) {
    enum class State { Code, Line, Block, String, Char };
    State state = State::Code;
    std::string out(text);
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        const char next = i + 1 < text.size() ? text[i + 1] : '\0';
        switch (state) {
            case State::Code:
                if (c == '/' && next == '/') {
                    state = State::Line;
                    out[i] = out[i + 1] = ' ';
                    ++i;
                } else if (c == '/' && next == '*') {
                    state = State::Block;
                    out[i] = out[i + 1] = ' ';
                    ++i;
                } else if (c == '"') {
                    state = State::String;
                } else if (c == '\'' && !inside_number(text, i)) {
                    state = State::Char;
                }
                break;
            case State::Line:
                if (c == '\n') {
                    state = State::Code;
                } else if (c == '\\' && next == '\n') {
                    out[i] = ' ';
                    ++i;  // continued line comment; keep the newline
                } else {
                    out[i] = ' ';
                }
                break;
            case State::Block:
                if (c == '*' && next == '/') {
                    out[i] = out[i + 1] = ' ';
                    ++i;
                    state = State::Code;
                } else if (c != '\n') {
                    out[i] = ' ';
                }
                break;
            case State::String:
            case State::Char:
                if (c == '\\' && next != '\0') {
                    ++i;
                } else if ((state == State::String && c == '"') || (state == State::Char && c == '\'') || c == '\n') {
                    state = State::Code;
                }
                break;
        }
    }
    return out;
}

std::int64_t count_loc(std::string_view text) {
    const auto stripped = strip_comments(text);
    std::int64_t count = 0;
    bool has_code = false;
    for (char c : stripped) {
        if (c == '\n') {
            count += has_code;
            has_code = false;
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            has_code = true;
        }
    }
    return count + has_code;
}

std::vector<RawInclude> extract_includes(std::string_view text, std::string_view from, Diagnostics& diags) {
    std::vector<RawInclude> out;
    const auto stripped = strip_comments(text);
    std::size_t line_no = 0;
    for (auto& raw_line : split(stripped, '\n')) {
        ++line_no;
        std::string_view line = raw_line;
        std::size_t i = 0;
        auto skip_ws = [&] {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        };
        skip_ws();
        if (i >= line.size() || line[i] != '#') continue;
        ++i;
        skip_ws();
        if (line.substr(i, 7) != "include" || (i + 7 < line.size() && is_word_char(line[i + 7]))) continue;
        i += 7;
        skip_ws();
        auto malformed = [&] {
            diags.warn("MalformedInclude", std::string(from) + ":" + std::to_string(line_no) + ": " +
                                               std::string(trim(line)));
        };
        if (i >= line.size() || (line[i] != '"' && line[i] != '<')) {
            malformed();
            continue;
        }
        const char close = line[i] == '"' ? '"' : '>';
        const auto end = line.find(close, i + 1);
        if (end == std::string_view::npos || end == i + 1) {
            malformed();
            continue;
        }
        out.push_back({std::string(from), std::string(line.substr(i + 1, end - i - 1)),
                       close == '"' ? IncludeForm::Quoted : IncludeForm::Angled});
    }
    return out;
}

SourceInventory scan_sources(const fs::path& root, const ExtractConfig& config, Diagnostics& diags) {
    const auto listed = list_sources(root, config, diags);
    auto read = read_sources(listed, false);
    SourceInventory inv;
    for (auto& ir : config.include_roots) inv.include_roots.push_back(normalize_path(ir));
    for (std::size_t i = 0; i < listed.size(); ++i) {
        diags.append(read[i].diags);
        if (read[i].failed) continue;
        inv.files.push_back({listed[i].path, listed[i].kind, read[i].loc, config.component_of(listed[i].path)});
    }
    return inv;
}

IncludeResolution resolve_includes(const SourceInventory& inventory, std::span<const RawInclude> includes,
                                   const ExtractConfig& config, Diagnostics& diags) {
    IncludeResolution res;
    auto exists = [&](const std::string& p) { return inventory.find(p) != nullptr; };
    auto pick = [&](std::vector<std::string>& matches, const RawInclude& inc) {
        std::sort(matches.begin(), matches.end());
        matches.erase(std::unique(matches.begin(), matches.end()), matches.end());
        if (matches.size() > 1) {
            std::string all;
            for (const auto& m : matches) all += " " + m;
            diags.warn("AmbiguousInclude", inc.from + ": '" + inc.spec + "' matches" + all + "; using " + matches.front());
        }
        return matches.front();
    };

    for (const auto& inc : includes) {
        std::optional<std::string> target;
        if (inc.form == IncludeForm::Quoted) {
            auto local = normalize_path(join_path(directory_of(inc.from), inc.spec));
            if (exists(local)) target = local;
        }
        if (!target) {
            std::vector<std::string> matches;
            for (const auto& root : inventory.include_roots) {
                auto candidate = normalize_path(join_path(root, inc.spec));
                if (exists(candidate)) matches.push_back(candidate);
            }
            if (!matches.empty()) target = pick(matches, inc);
        }
        if (!target && config.suffix_fallback) {
            const auto spec = normalize_path(inc.spec);
            std::vector<std::string> matches;
            for (const auto& f : inventory.files) {
                if (f.path == spec ||
                    (f.path.size() > spec.size() && f.path.compare(f.path.size() - spec.size(), spec.size(), spec) == 0 &&
                     f.path[f.path.size() - spec.size() - 1] == '/')) {
                    matches.push_back(f.path);
                }
            }
            if (!matches.empty()) target = pick(matches, inc);
        }
        if (target) {
            res.edges.emplace_back(inc.from, *target);
        } else {
            ++res.unresolved;
        }
    }
    return res;
}

DependencyGraph hoist_header_deps(const DependencyGraph& graph, const std::set<std::string>& headers,
                                  Diagnostics& diags) {
    using Index = DependencyGraph::Index;
    const auto n = static_cast<Index>(graph.node_count());
    std::vector<bool> is_header(n, false);
    for (Index i = 0; i < n; ++i) is_header[i] = headers.count(graph.node(i).path) > 0;

    // Implementers: same stem in the same component, or same directory when
    // the header carries no component.
    std::map<std::pair<std::string, std::string>, std::vector<Index>> by_component, by_directory;
    for (Index i = 0; i < n; ++i) {
        if (is_header[i]) continue;
        const auto& node = graph.node(i);
        const auto stem = stem_of(node.path);
        if (node.component) by_component[{*node.component, stem}].push_back(i);
        by_directory[{directory_of(node.path), stem}].push_back(i);
    }
    auto implementers_of = [&](Index h) -> const std::vector<Index>& {
        static const std::vector<Index> none;
        const auto& node = graph.node(h);
        const auto& table = node.component ? by_component : by_directory;
        auto it = table.find({node.component ? *node.component : directory_of(node.path), stem_of(node.path)});
        return it == table.end() ? none : it->second;
    };

    // Header-only subgraph, collapsed by SCC. Local ids index `header_nodes`.
    std::vector<Index> header_nodes;
    std::vector<Index> local(n, UINT32_MAX);
    for (Index i = 0; i < n; ++i) {
        if (is_header[i]) {
            local[i] = static_cast<Index>(header_nodes.size());
            header_nodes.push_back(i);
        }
    }
    std::vector<std::vector<Index>> header_succ(header_nodes.size());
    for (std::size_t h = 0; h < header_nodes.size(); ++h) {
        for (Index s : graph.successors(header_nodes[h])) {
            if (is_header[s]) header_succ[h].push_back(local[s]);
        }
    }
    const auto units = tarjan_scc(static_cast<std::uint32_t>(header_nodes.size()),
                                  [&](std::uint32_t h) -> const std::vector<Index>& { return header_succ[h]; });
    std::vector<std::size_t> unit_of(header_nodes.size());
    for (std::size_t u = 0; u < units.size(); ++u) {
        for (auto h : units[u]) unit_of[h] = u;
        if (units[u].size() > 1) {
            std::string members;
            for (auto h : units[u]) members += " " + graph.node(header_nodes[h]).path;
            diags.warn("CycleInHeaderChain", "header include cycle:" + members);
        }
    }

    // Tarjan emits sink units first, so every unit's successors are resolved
    // before the unit itself.
    std::vector<std::vector<Index>> unit_impls(units.size()), targets(units.size());
    for (std::size_t u = 0; u < units.size(); ++u) {
        std::set<Index> impls;
        for (auto h : units[u]) {
            const auto& found = implementers_of(header_nodes[h]);
            impls.insert(found.begin(), found.end());
        }
        unit_impls[u].assign(impls.begin(), impls.end());
        if (!impls.empty()) {
            targets[u] = unit_impls[u];
            continue;
        }
        std::set<Index> through;
        for (auto h : units[u]) {
            for (Index s : graph.successors(header_nodes[h])) {
                if (!is_header[s]) {
                    through.insert(s);
                } else if (unit_of[local[s]] != u) {
                    const auto& t = targets[unit_of[local[s]]];
                    through.insert(t.begin(), t.end());
                }
            }
        }
        targets[u].assign(through.begin(), through.end());
    }

    std::set<std::pair<Index, Index>> edges;
    auto emit_from = [&](Index source, Index dependency, std::size_t own_unit) {
        if (!is_header[dependency]) {
            edges.emplace(source, dependency);
            return;
        }
        const auto u = unit_of[local[dependency]];
        if (u == own_unit) return;
        for (Index t : targets[u]) edges.emplace(source, t);
    };
    constexpr std::size_t no_unit = SIZE_MAX;
    for (Index i = 0; i < n; ++i) {
        if (is_header[i]) continue;
        for (Index s : graph.successors(i)) emit_from(i, s, no_unit);
    }
    for (std::size_t u = 0; u < units.size(); ++u) {
        for (Index impl : unit_impls[u]) {
            for (auto h : units[u]) {
                for (Index s : graph.successors(header_nodes[h])) emit_from(impl, s, u);
            }
        }
    }

    std::vector<NodeSpec> nodes;
    for (Index i = 0; i < n; ++i) {
        if (is_header[i]) continue;
        const auto& node = graph.node(i);
        nodes.push_back({{graph.level(), node.path}, node.loc, node.component});
    }
    std::vector<EdgeSpec> out;
    out.reserve(edges.size());
    for (auto [a, b] : edges) {
        if (a != b) out.emplace_back(graph.node(a).path, graph.node(b).path);
    }
    return build_graph(graph.level(), std::move(nodes), std::move(out), graph.version());
}

ExtractResult extract_snapshot(const fs::path& root, const ExtractConfig& config, VersionInfo version,
                               Diagnostics& diags) {
    const auto listed = list_sources(root, config, diags);
    auto read = read_sources(listed, true);

    ExtractResult result;
    for (auto& ir : config.include_roots) result.inventory.include_roots.push_back(normalize_path(ir));
    std::vector<RawInclude> includes;
    for (std::size_t i = 0; i < listed.size(); ++i) {
        diags.append(read[i].diags);
        if (read[i].failed) continue;
        result.inventory.files.push_back(
            {listed[i].path, listed[i].kind, read[i].loc, config.component_of(listed[i].path)});
        includes.insert(includes.end(), read[i].includes.begin(), read[i].includes.end());
    }

    auto resolution = resolve_includes(result.inventory, includes, config, diags);
    result.unresolved_includes = resolution.unresolved;
    if (resolution.unresolved > 0) {
        diags.info("UnresolvedIncludes", std::to_string(resolution.unresolved) +
                                             " include directives did not resolve to project files");
    }
    for (const auto& [from, to] : config.extra_edges) {
        if (result.inventory.find(from) && result.inventory.find(to)) {
            resolution.edges.emplace_back(from, to);
        } else {
            diags.warn("ExtraEdgeSkipped", "extra edge " + from + " -> " + to + " names a file not in this snapshot");
        }
    }

    std::vector<NodeSpec> nodes;
    std::set<std::string> headers;
    for (const auto& f : result.inventory.files) {
        nodes.push_back({{Level::File, f.path}, f.loc, f.component});
        if (f.kind == FileKind::Header) headers.insert(f.path);
    }
    auto with_headers = build_graph(Level::File, std::move(nodes), std::move(resolution.edges), version);
    result.file_graph = hoist_header_deps(with_headers, headers, diags);
    return result;
}

std::string snapshot_fingerprint(const fs::path& root, const ExtractConfig& config) {
    Diagnostics ignored;
    const auto listed = list_sources(root, config, ignored);
    Fnv1a hash;
    hash.field(kExtractorVersion).field(config.fingerprint());
    for (const auto& f : listed) {
        hash.field(f.path);
        try {
            hash.field(read_file(f.absolute));
        } catch (const Error&) {
            hash.field("<unreadable>");
        }
    }
    return hash.hex();
}

}  // namespace asmell
