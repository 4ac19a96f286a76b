#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "asmell/smell.hpp"

namespace asmell {

struct MatchDecision {
    std::string prev_id;
    std::string next_id;
    double similarity = 0.0;
};

struct TrackOptions {
    double threshold = 0.5;
    bool exact = false;  // only identical artefact sets match
};

/// Jaccard similarity of the instances' affected sets.
double jaccard(const SmellInstance& a, const SmellInstance& b);

/// Greedy one-to-one matching of adjacent versions, best similarity first,
/// ties by (prev id, next id). Throws VersionMismatch.
std::vector<MatchDecision> match_versions(std::span<const SmellInstance> prev, std::span<const SmellInstance> next,
                                          const TrackOptions& options = {});

struct TemporalInstance {
    std::string tid;
    SmellType type = SmellType::CD;
    Level level = Level::File;
    std::vector<SmellInstance> chain;  // consecutive versions, oldest first
    int birth = 0;
    std::optional<int> death;  // first version the smell is absent; nullopt when censored

    int age() const noexcept { return static_cast<int>(chain.size()); }
    bool censored() const noexcept { return !death.has_value(); }
    /// Shape per chain version (CD only).
    std::vector<Shape> shapes() const;
};

/// Chains matched instances across consecutive versions. `per_version[v]`
/// holds the instances detected in version v. Output ordered by (birth, first id).
std::vector<TemporalInstance> build_temporal_instances(const std::vector<std::vector<SmellInstance>>& per_version,
                                                       const TrackOptions& options = {});

}  // namespace asmell
