#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "asmell/error.hpp"
#include "asmell/graph.hpp"
#include "asmell/util.hpp"

namespace asmell {

std::string encode_token(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    for (char c : raw) {
        switch (c) {
            case '%': out += "%25"; break;
            case ' ': out += "%20"; break;
            case '\t': out += "%09"; break;
            case '\r': out += "%0D"; break;
            case '\n': out += "%0A"; break;
            default: out += c;
        }
    }
    return out;
}

std::string decode_token(std::string_view encoded, std::size_t line) {
    std::string out;
    out.reserve(encoded.size());
    for (std::size_t i = 0; i < encoded.size(); ++i) {
        if (encoded[i] != '%') {
            out += encoded[i];
            continue;
        }
        if (i + 2 >= encoded.size() || !std::isxdigit(static_cast<unsigned char>(encoded[i + 1])) ||
            !std::isxdigit(static_cast<unsigned char>(encoded[i + 2]))) {
            throw FormatError(line, "bad percent escape in '" + std::string(encoded) + "'");
        }
        unsigned value = 0;
        std::from_chars(encoded.data() + i + 1, encoded.data() + i + 3, value, 16);
        out += static_cast<char>(value);
        i += 2;
    }
    return out;
}

void save_graph(const DependencyGraph& graph, std::ostream& sink) {
    sink << "V " << graph.version_label() << '\n';
    for (const auto& n : graph.nodes()) {
        sink << "N " << to_string(graph.level()) << ' ' << encode_token(n.path) << ' ' << n.loc;
        if (n.component) sink << ' ' << encode_token(*n.component);
        sink << '\n';
    }
    for (auto [a, b] : graph.edges()) {
        sink << "E " << encode_token(graph.node(a).path) << ' ' << encode_token(graph.node(b).path) << '\n';
    }
}

std::string save_graph(const DependencyGraph& graph) {
    std::ostringstream out;
    save_graph(graph, out);
    return out.str();
}

namespace {

std::vector<std::string_view> tokens(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        if (i >= line.size()) break;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
        out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

}  // namespace

DependencyGraph load_graph(std::istream& source, Level empty_level, int version_index) {
    std::vector<NodeSpec> nodes;
    std::vector<EdgeSpec> edges;
    std::optional<Level> level;
    VersionInfo version{version_index, {}};
    bool have_version = false;

    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(source, raw)) {
        ++line_no;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        std::string_view line = raw;
        if (trim(line).empty() || trim(line).front() == '#') continue;
        auto tok = tokens(line);
        const auto tag = tok.front();
        if (tag == "V") {
            if (have_version) throw FormatError(line_no, "duplicate V record");
            auto rest = line.substr(line.find('V') + 1);
            if (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
            version.label = std::string(rest);
            have_version = true;
        } else if (tag == "N") {
            if (tok.size() != 4 && tok.size() != 5) throw FormatError(line_no, "N record needs 3 or 4 fields");
            Level node_level;
            try {
                node_level = parse_level(tok[1]);
            } catch (const Error&) {
                throw FormatError(line_no, "unknown level '" + std::string(tok[1]) + "'");
            }
            if (level && *level != node_level) throw FormatError(line_no, "mixed node levels");
            level = node_level;
            std::int64_t loc = 0;
            auto [end, ec] = std::from_chars(tok[3].data(), tok[3].data() + tok[3].size(), loc);
            if (ec != std::errc() || end != tok[3].data() + tok[3].size() || loc < 0) {
                throw FormatError(line_no, "bad loc '" + std::string(tok[3]) + "'");
            }
            NodeSpec spec{{node_level, decode_token(tok[2], line_no)}, loc, std::nullopt};
            if (tok.size() == 5) spec.component = decode_token(tok[4], line_no);
            nodes.push_back(std::move(spec));
        } else if (tag == "E") {
            if (tok.size() != 3) throw FormatError(line_no, "E record needs 2 fields");
            edges.emplace_back(decode_token(tok[1], line_no), decode_token(tok[2], line_no));
        } else {
            throw FormatError(line_no, "unknown record tag '" + std::string(tag) + "'");
        }
    }
    try {
        return build_graph(level.value_or(empty_level), std::move(nodes), std::move(edges), std::move(version));
    } catch (const FormatError&) {
        throw;
    } catch (const Error& e) {
        throw FormatError(line_no, e.what());
    }
}

DependencyGraph load_graph(std::string_view text, Level empty_level, int version_index) {
    std::istringstream in{std::string(text)};
    return load_graph(in, empty_level, version_index);
}

void save_graph_file(const DependencyGraph& graph, const std::filesystem::path& path) {
    write_file(path, save_graph(graph));
}

DependencyGraph load_graph_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::IoError, "cannot read " + path.string());
    const Level empty_level = path.extension() == ".cgraph" ? Level::Component : Level::File;
    int index = 0;
    const auto stem = path.stem().string();
    auto [end, ec] = std::from_chars(stem.data(), stem.data() + stem.size(), index);
    if (ec != std::errc() || end != stem.data() + stem.size()) index = 0;
    try {
        return load_graph(in, empty_level, index);
    } catch (const FormatError& e) {
        throw FormatError(e.line(), path.string() + ": " + e.what());
    }
}

}  // namespace asmell
