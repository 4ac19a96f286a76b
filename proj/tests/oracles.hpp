// Independent brute-force reference implementations used as test oracles.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using Adjacency = std::vector<std::vector<bool>>;

inline Adjacency adjacency(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    Adjacency adj(n, std::vector<bool>(n, false));
    for (auto [a, b] : edges) {
        if (a != b) adj[a][b] = true;
    }
    return adj;
}

/// Transitive closure by Floyd-Warshall; reach[i][i] is true.
inline Adjacency reachability(const Adjacency& adj) {
    const auto n = adj.size();
    Adjacency reach = adj;
    for (std::size_t i = 0; i < n; ++i) reach[i][i] = true;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (reach[i][k] && reach[k][j]) reach[i][j] = true;
    return reach;
}

/// Strongly connected components with >= min_size members, via pairwise reachability.
inline std::set<std::vector<std::size_t>> sccs(const Adjacency& adj, std::size_t min_size = 2) {
    const auto reach = reachability(adj);
    std::set<std::vector<std::size_t>> out;
    for (std::size_t i = 0; i < adj.size(); ++i) {
        std::vector<std::size_t> members;
        for (std::size_t j = 0; j < adj.size(); ++j) {
            if (reach[i][j] && reach[j][i]) members.push_back(j);
        }
        if (members.size() >= min_size) out.insert(members);
    }
    return out;
}

inline bool strongly_connected(const Adjacency& adj) {
    const auto reach = reachability(adj);
    for (const auto& row : reach)
        for (bool r : row)
            if (!r) return false;
    return true;
}

/// Plain power iteration for a fixed number of rounds; dangling mass spread uniformly.
inline std::vector<double> pagerank(const Adjacency& adj, double damping = 0.85, int rounds = 50) {
    const auto n = adj.size();
    std::vector<double> rank(n, 1.0 / static_cast<double>(n));
    for (int round = 0; round < rounds; ++round) {
        std::vector<double> next(n, (1.0 - damping) / static_cast<double>(n));
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t out = 0;
            for (std::size_t j = 0; j < n; ++j) out += adj[i][j];
            for (std::size_t j = 0; j < n; ++j) {
                if (out == 0) {
                    next[j] += damping * rank[i] / static_cast<double>(n);
                } else if (adj[i][j]) {
                    next[j] += damping * rank[i] / static_cast<double>(out);
                }
            }
        }
        rank = next;
    }
    return rank;
}

/// Shape rules checked literally, first match in the documented order.
inline std::string shape(const Adjacency& adj) {
    const auto n = adj.size();
    std::size_t edges = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) edges += adj[i][j];
    auto indeg = [&](std::size_t v) {
        std::size_t d = 0;
        for (std::size_t u = 0; u < n; ++u) d += adj[u][v];
        return d;
    };
    auto outdeg = [&](std::size_t v) {
        std::size_t d = 0;
        for (std::size_t u = 0; u < n; ++u) d += adj[v][u];
        return d;
    };
    if (n == 2) return "tiny";
    if (edges == n * (n - 1)) return "clique";
    bool circle = true;
    for (std::size_t v = 0; v < n; ++v) circle = circle && indeg(v) == 1 && outdeg(v) == 1;
    if (circle) return "circle";
    for (std::size_t c = 0; c < n; ++c) {
        // The edge set must be exactly {(c,s),(s,c)} for every satellite s.
        bool star = true;
        for (std::size_t i = 0; i < n && star; ++i)
            for (std::size_t j = 0; j < n && star; ++j) {
                if (i == j) continue;
                const bool expected = (i == c) != (j == c);
                star = adj[i][j] == expected;
            }
        if (star) return "star";
    }
    // Chain: some ordering v0..v(n-1) whose edge set is exactly both directions of consecutive pairs.
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    do {
        Adjacency want(n, std::vector<bool>(n, false));
        for (std::size_t i = 0; i + 1 < n; ++i) want[order[i]][order[i + 1]] = want[order[i + 1]][order[i]] = true;
        if (want == adj) return "chain";
    } while (std::next_permutation(order.begin(), order.end()));
    return "multi";
}

/// Number of shape rules (other than the Multi fallback) that hold for `adj`.
inline int shape_rules_firing(const Adjacency& adj) {
    const auto n = adj.size();
    int firing = 0;
    if (n == 2) return 1;
    std::size_t edges = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) edges += adj[i][j];
    firing += edges == n * (n - 1);
    bool circle = true;
    for (std::size_t v = 0; v < n; ++v) {
        std::size_t in = 0, out = 0;
        for (std::size_t u = 0; u < n; ++u) {
            in += adj[u][v];
            out += adj[v][u];
        }
        circle = circle && in == 1 && out == 1;
    }
    firing += circle;
    bool any_star = false;
    for (std::size_t c = 0; c < n; ++c) {
        bool star = true;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j && adj[i][j] != ((i == c) != (j == c))) star = false;
        any_star = any_star || star;
    }
    firing += any_star;
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    bool chain = false;
    do {
        Adjacency want(n, std::vector<bool>(n, false));
        for (std::size_t i = 0; i + 1 < n; ++i) want[order[i]][order[i + 1]] = want[order[i + 1]][order[i]] = true;
        chain = chain || want == adj;
    } while (std::next_permutation(order.begin(), order.end()));
    firing += chain;
    return firing;
}

struct Lifetime {
    int age;
    bool censored;
};

/// S(t) straight from the product-limit definition, recomputed from scratch for each t.
inline double km_survival(const std::vector<Lifetime>& data, int t) {
    double s = 1.0;
    for (int u = 1; u <= t; ++u) {
        int at_risk = 0, deaths = 0;
        for (const auto& l : data) {
            if (l.age >= u) ++at_risk;
            if (l.age == u && !l.censored) ++deaths;
        }
        if (deaths > 0) s *= 1.0 - static_cast<double>(deaths) / at_risk;
    }
    return s;
}

inline std::optional<int> km_median(const std::vector<Lifetime>& data) {
    int max_age = 0;
    for (const auto& l : data) max_age = std::max(max_age, l.age);
    for (int t = 0; t <= max_age; ++t) {
        if (km_survival(data, t) <= 0.5) return t;
    }
    return std::nullopt;
}

/// Minimal instance model shared by the co-occurrence and precedence oracles.
struct Instance {
    std::string type;                                  // "CD", "HL", "UD", "GC"
    std::map<std::string, std::set<std::string>> roles;
    std::set<std::string> affected() const {
        std::set<std::string> out;
        for (const auto& [_, m] : roles) out.insert(m.begin(), m.end());
        return out;
    }
};

inline bool share(const std::set<std::string>& a, const std::set<std::string>& b) {
    for (const auto& x : a)
        if (b.count(x)) return true;
    return false;
}

struct Kind {
    std::string type;
    std::string role;
};

/// entry(i,j) = 100 * #{x of kind i : exists y != x of kind j in the same version sharing an artefact} / #instances of kind i.
inline std::vector<std::vector<std::optional<double>>> cooccurrence(
    const std::vector<std::vector<Instance>>& versions, const std::vector<Kind>& kinds) {
    const auto nk = kinds.size();
    std::vector<int> total(nk, 0);
    std::vector<std::vector<int>> hit(nk, std::vector<int>(nk, 0));
    for (const auto& version : versions) {
        for (std::size_t x = 0; x < version.size(); ++x) {
            for (std::size_t i = 0; i < nk; ++i) {
                if (version[x].type != kinds[i].type) continue;
                ++total[i];
                const auto& rx = version[x].roles.at(kinds[i].role);
                for (std::size_t j = 0; j < nk; ++j) {
                    if (i == j) continue;
                    bool found = false;
                    for (std::size_t y = 0; y < version.size() && !found; ++y) {
                        if (y == x || version[y].type != kinds[j].type) continue;
                        found = share(rx, version[y].roles.at(kinds[j].role));
                    }
                    hit[i][j] += found;
                }
            }
        }
    }
    std::vector<std::vector<std::optional<double>>> out(nk, std::vector<std::optional<double>>(nk));
    for (std::size_t i = 0; i < nk; ++i)
        for (std::size_t j = 0; j < nk; ++j)
            if (i != j && total[i] > 0) out[i][j] = 100.0 * hit[i][j] / total[i];
    return out;
}

struct Chain {
    std::string kind;                          // e.g. "CD/component"
    int birth = 0;
    std::vector<std::set<std::string>> sets;   // affected set per alive version
};

/// Precedence at window k by enumerating every ordered pair of chains.
inline std::vector<std::vector<std::optional<double>>> precedence(const std::vector<Chain>& chains,
                                                                   const std::vector<std::string>& kinds, int k,
                                                                   bool pairs) {
    const auto nk = kinds.size();
    auto kind_index = [&](const std::string& kind) {
        return static_cast<std::size_t>(std::find(kinds.begin(), kinds.end(), kind) - kinds.begin());
    };
    auto overlaps = [](const Chain& x, const Chain& y) {
        for (std::size_t a = 0; a < x.sets.size(); ++a) {
            const int v = x.birth + static_cast<int>(a);
            const int b = v - y.birth;
            if (b < 0 || b >= static_cast<int>(y.sets.size())) continue;
            if (share(x.sets[a], y.sets[static_cast<std::size_t>(b)])) return true;
        }
        return false;
    };
    std::vector<std::vector<int>> num(nk, std::vector<int>(nk, 0)), den = num;
    for (std::size_t x = 0; x < chains.size(); ++x) {
        const auto i = kind_index(chains[x].kind);
        for (std::size_t j = 0; j < nk; ++j) {
            if (j == i) continue;
            int within = 0, preceded = 0;
            for (std::size_t y = 0; y < chains.size(); ++y) {
                if (y == x || kind_index(chains[y].kind) != j) continue;
                if (!overlaps(chains[x], chains[y])) continue;
                const int gap = chains[y].birth - chains[x].birth;
                if (std::abs(gap) > k) continue;
                ++within;
                if (gap > 0) ++preceded;
            }
            if (pairs) {
                den[i][j] += within;
                num[i][j] += preceded;
            } else {
                den[i][j] += within > 0;
                num[i][j] += preceded > 0;
            }
        }
    }
    std::vector<std::vector<std::optional<double>>> out(nk, std::vector<std::optional<double>>(nk));
    for (std::size_t i = 0; i < nk; ++i)
        for (std::size_t j = 0; j < nk; ++j)
            if (i != j && den[i][j] > 0) out[i][j] = 100.0 * num[i][j] / den[i][j];
    return out;
}

/// Header hoisting on an acyclic header graph by direct DFS over header paths.
/// `impls(h)` lists the implementation nodes of header h.
inline std::set<std::pair<std::size_t, std::size_t>> hoist(const Adjacency& adj, const std::vector<bool>& is_header,
                                                           const std::function<std::vector<std::size_t>(std::size_t)>& impls) {
    const auto n = adj.size();
    std::function<void(std::size_t, std::set<std::size_t>&, std::set<std::size_t>&)> resolve =
        [&](std::size_t h, std::set<std::size_t>& out, std::set<std::size_t>& seen) {
            if (!seen.insert(h).second) return;
            const auto own = impls(h);
            if (!own.empty()) {
                out.insert(own.begin(), own.end());
                return;
            }
            for (std::size_t s = 0; s < n; ++s) {
                if (!adj[h][s]) continue;
                if (is_header[s]) {
                    resolve(s, out, seen);
                } else {
                    out.insert(s);
                }
            }
        };
    std::set<std::pair<std::size_t, std::size_t>> edges;
    auto add_through = [&](std::size_t source, std::size_t dependency) {
        if (!is_header[dependency]) {
            if (source != dependency) edges.emplace(source, dependency);
            return;
        }
        std::set<std::size_t> targets, seen;
        resolve(dependency, targets, seen);
        for (auto t : targets)
            if (t != source) edges.emplace(source, t);
    };
    for (std::size_t x = 0; x < n; ++x) {
        if (is_header[x]) continue;
        for (std::size_t s = 0; s < n; ++s)
            if (adj[x][s]) add_through(x, s);
    }
    for (std::size_t h = 0; h < n; ++h) {
        if (!is_header[h]) continue;
        for (auto impl : impls(h))
            for (std::size_t s = 0; s < n; ++s)
                if (adj[h][s]) add_through(impl, s);
    }
    return edges;
}

}  // namespace oracle
