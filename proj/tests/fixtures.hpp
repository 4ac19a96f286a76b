// Graph and instance builders shared by the test suites.
#pragma once

#include <cstdio>
#include <unistd.h>
#include <filesystem>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "asmell/error.hpp"
#include "asmell/graph.hpp"
#include "asmell/smell.hpp"
#include "asmell/track.hpp"
#include "asmell/util.hpp"
#include "oracles.hpp"

namespace fixture {

using asmell::Level;

/// Zero-padded names keep node index == creation order.
inline std::string name(std::size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "n%03zu", i);
    return buf;
}

inline asmell::DependencyGraph numbered(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                        Level level = Level::Component) {
    std::vector<asmell::NodeSpec> nodes;
    for (std::size_t i = 0; i < n; ++i) {
        nodes.push_back({{level, name(i)}, 1, level == Level::File ? std::optional<std::string>("c") : std::nullopt});
    }
    std::vector<asmell::EdgeSpec> specs;
    for (auto [a, b] : edges) specs.emplace_back(name(a), name(b));
    return asmell::build_graph(level, nodes, specs);
}

struct FileSpec {
    std::string path;
    std::string component;
    std::int64_t loc = 1;
};

inline asmell::DependencyGraph files(const std::vector<FileSpec>& specs, const std::vector<asmell::EdgeSpec>& edges,
                                     int version = 0) {
    std::vector<asmell::NodeSpec> nodes;
    for (const auto& f : specs) nodes.push_back({{Level::File, f.path}, f.loc, f.component});
    return asmell::build_graph(Level::File, nodes, edges, {version, "v" + std::to_string(version)});
}

inline asmell::DependencyGraph components(const std::vector<std::pair<std::string, std::int64_t>>& specs,
                                          const std::vector<asmell::EdgeSpec>& edges, int version = 0) {
    std::vector<asmell::NodeSpec> nodes;
    for (const auto& [path, loc] : specs) nodes.push_back({{Level::Component, path}, loc, std::nullopt});
    return asmell::build_graph(Level::Component, nodes, edges, {version, "v" + std::to_string(version)});
}

inline std::vector<std::pair<std::size_t, std::size_t>> random_edges(std::mt19937_64& rng, std::size_t n, double p) {
    std::bernoulli_distribution coin(p);
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && coin(rng)) out.emplace_back(i, j);
    return out;
}

inline asmell::SmellInstance instance(asmell::SmellType type, Level level, int version,
                                      std::map<std::string, std::set<std::string>, std::less<>> roles) {
    asmell::SmellInstance s;
    s.type = type;
    s.level = level;
    s.version_index = version;
    s.version_label = "v" + std::to_string(version);
    s.roles = std::move(roles);
    s.id = asmell::make_instance_id(s);
    return s;
}

inline asmell::SmellInstance cd(Level level, int version, std::set<std::string> members) {
    return instance(asmell::SmellType::CD, level, version, {{"member", std::move(members)}});
}

/// Scratch directory removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("asmell-test-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& rel) const { return path_ / rel; }
    void write(const std::string& rel, const std::string& content) const { asmell::write_file(path_ / rel, content); }

private:
    std::filesystem::path path_;
};

}  // namespace fixture

namespace fixture {

/// True when `fn` throws asmell::Error of the given kind.
template <class Fn>
bool throws_kind(Fn&& fn, asmell::ErrorKind kind) {
    try {
        fn();
    } catch (const asmell::Error& e) {
        return e.kind() == kind;
    }
    return false;
}

}  // namespace fixture

namespace fixture {

/// Random multi-version history: up to `max_smells` smells, each alive over a
/// random run of versions with a slowly drifting artefact set.
inline std::vector<std::vector<asmell::SmellInstance>> random_history(std::mt19937_64& rng, int max_versions = 5,
                                                                      int max_smells = 8, int artefacts = 10) {
    using asmell::SmellType;
    const int versions = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_versions));
    std::vector<std::vector<asmell::SmellInstance>> pv(static_cast<std::size_t>(versions));
    const int smells = static_cast<int>(rng() % static_cast<std::uint64_t>(max_smells + 1));
    auto pick = [&](Level level) {
        const auto a = std::to_string(rng() % static_cast<std::uint64_t>(artefacts));
        return level == Level::File ? "f/" + a : "c" + a;
    };
    for (int s = 0; s < smells; ++s) {
        const auto type = asmell::kSmellTypes[rng() % 4];
        const Level level = (type == SmellType::UD || type == SmellType::GC || rng() % 2) ? Level::Component : Level::File;
        const int birth = static_cast<int>(rng() % static_cast<std::uint64_t>(versions));
        const int length = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(versions - birth));
        std::map<std::string, std::set<std::string>, std::less<>> roles;
        auto fill = [&](const std::string& role, std::size_t count) {
            auto& set = roles[role];
            while (set.size() < count) set.insert(pick(level));
        };
        switch (type) {
            case SmellType::CD: fill("member", 2 + rng() % 3); break;
            case SmellType::GC: fill("member", 1); break;
            case SmellType::HL:
                fill("centre", 1);
                fill("incoming", 1 + rng() % 2);
                fill("outgoing", 1 + rng() % 2);
                break;
            case SmellType::UD:
                fill("centre", 1);
                fill("less_stable", 1 + rng() % 3);
                break;
        }
        for (int v = birth; v < birth + length; ++v) {
            if (v > birth && rng() % 3 == 0) {
                // Drift: add one artefact to a random role.
                auto it = roles.begin();
                std::advance(it, static_cast<long>(rng() % roles.size()));
                if (it->first != "centre") it->second.insert(pick(level));
            }
            auto inst = instance(type, level, v, roles);
            inst.id = asmell::make_instance_id(inst, std::to_string(s));
            pv[static_cast<std::size_t>(v)].push_back(std::move(inst));
        }
    }
    return pv;
}

inline oracle::Instance to_oracle(const asmell::SmellInstance& s) {
    oracle::Instance out;
    out.type = std::string(asmell::to_string(s.type));
    for (const auto& [role, members] : s.roles) out.roles[role] = members;
    return out;
}

inline std::vector<oracle::Chain> to_oracle(const std::vector<asmell::TemporalInstance>& temporal) {
    std::vector<oracle::Chain> out;
    for (const auto& t : temporal) {
        oracle::Chain c;
        c.kind = std::string(asmell::to_string(t.type)) + "/" + std::string(asmell::to_string(t.level));
        c.birth = t.birth;
        for (const auto& s : t.chain) c.sets.push_back(s.affected());
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace fixture
