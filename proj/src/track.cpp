#include "asmell/track.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "asmell/error.hpp"

namespace asmell {

double jaccard(const SmellInstance& a, const SmellInstance& b) {
    const auto x = a.affected();
    const auto y = b.affected();
    std::size_t common = 0;
    for (const auto& p : x) common += y.count(p);
    const std::size_t uni = x.size() + y.size() - common;
    return uni == 0 ? 1.0 : static_cast<double>(common) / static_cast<double>(uni);
}

std::vector<MatchDecision> match_versions(std::span<const SmellInstance> prev, std::span<const SmellInstance> next,
                                          const TrackOptions& options) {
    if (!prev.empty()) {
        const int v = prev.front().version_index;
        for (const auto& s : prev) {
            if (s.version_index != v) throw Error(ErrorKind::VersionMismatch, "previous instances span several versions");
        }
        for (const auto& s : next) {
            if (s.version_index != v + 1) {
                throw Error(ErrorKind::VersionMismatch, "instance " + s.id + " is in version " +
                                                            std::to_string(s.version_index) + ", expected " +
                                                            std::to_string(v + 1));
            }
        }
    } else if (!next.empty()) {
        const int v = next.front().version_index;
        for (const auto& s : next) {
            if (s.version_index != v) throw Error(ErrorKind::VersionMismatch, "next instances span several versions");
        }
    }

    struct Candidate {
        double similarity;
        std::size_t p, n;
    };
    std::vector<Candidate> candidates;
    const double threshold = options.exact ? 1.0 : options.threshold;
    for (std::size_t i = 0; i < prev.size(); ++i) {
        for (std::size_t j = 0; j < next.size(); ++j) {
            if (prev[i].type != next[j].type || prev[i].level != next[j].level) continue;
            const double sim = jaccard(prev[i], next[j]);
            if (sim >= threshold && sim > 0.0) candidates.push_back({sim, i, j});
        }
    }
    std::sort(candidates.begin(), candidates.end(), [&](const Candidate& a, const Candidate& b) {
        if (a.similarity != b.similarity) return a.similarity > b.similarity;
        if (prev[a.p].id != prev[b.p].id) return prev[a.p].id < prev[b.p].id;
        return next[a.n].id < next[b.n].id;
    });
    std::vector<bool> used_prev(prev.size(), false), used_next(next.size(), false);
    std::vector<MatchDecision> out;
    for (const auto& c : candidates) {
        if (used_prev[c.p] || used_next[c.n]) continue;
        used_prev[c.p] = used_next[c.n] = true;
        out.push_back({prev[c.p].id, next[c.n].id, c.similarity});
    }
    return out;
}

std::vector<Shape> TemporalInstance::shapes() const {
    std::vector<Shape> out;
    for (const auto& s : chain) {
        if (auto tag = s.tag(characteristic::shape)) out.push_back(parse_shape(*tag));
    }
    return out;
}

std::vector<TemporalInstance> build_temporal_instances(const std::vector<std::vector<SmellInstance>>& per_version,
                                                       const TrackOptions& options) {
    std::vector<TemporalInstance> done;
    std::map<std::string, TemporalInstance> alive;  // keyed by the id of the chain's latest instance
    for (std::size_t v = 0; v < per_version.size(); ++v) {
        const auto& current = per_version[v];
        for (const auto& s : current) {
            if (s.version_index != static_cast<int>(v)) {
                throw Error(ErrorKind::VersionMismatch, "instance " + s.id + " filed under version " + std::to_string(v));
            }
        }
        std::vector<SmellInstance> previous;
        for (const auto& [_, t] : alive) previous.push_back(t.chain.back());
        std::map<std::string, std::string> next_to_prev;
        if (v > 0) {
            for (const auto& m : match_versions(previous, current, options)) next_to_prev[m.next_id] = m.prev_id;
        }

        std::map<std::string, TemporalInstance> still_alive;
        for (const auto& s : current) {
            auto link = next_to_prev.find(s.id);
            if (link != next_to_prev.end()) {
                auto node = alive.extract(link->second);
                node.mapped().chain.push_back(s);
                still_alive.emplace(s.id, std::move(node.mapped()));
            } else {
                TemporalInstance t;
                t.tid = "t" + s.id;
                t.type = s.type;
                t.level = s.level;
                t.birth = static_cast<int>(v);
                t.chain.push_back(s);
                still_alive.emplace(s.id, std::move(t));
            }
        }
        for (auto& [_, t] : alive) {
            t.death = static_cast<int>(v);
            done.push_back(std::move(t));
        }
        alive = std::move(still_alive);
    }
    for (auto& [_, t] : alive) done.push_back(std::move(t));
    std::sort(done.begin(), done.end(), [](const TemporalInstance& a, const TemporalInstance& b) {
        if (a.birth != b.birth) return a.birth < b.birth;
        return a.tid < b.tid;
    });
    return done;
}

}  // namespace asmell
