#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "asmell/graph.hpp"
#include "asmell/metrics.hpp"
#include "asmell/smell.hpp"
#include "asmell/track.hpp"

namespace asmell {

// versions.csv: version_index,version_label,snapshot
struct VersionRecord {
    int index = 0;
    std::string label;
    std::string snapshot;
};
std::string versions_csv(const std::vector<VersionRecord>& versions);
std::vector<VersionRecord> parse_versions_csv(std::string_view text);

// smells.csv: version_index,version_label,type,level,id,role,artefact (one row per role member)
std::string smells_csv(const std::vector<std::vector<SmellInstance>>& per_version);
// characteristics.csv: id,name,value
std::string characteristics_csv(const std::vector<std::vector<SmellInstance>>& per_version);

/// Rebuilds per-version instances; `version_count` covers trailing smell-free versions.
std::vector<std::vector<SmellInstance>> parse_smells(std::string_view smells, std::string_view characteristics,
                                                     std::size_t version_count);

struct MetricRow {
    int version_index = 0;
    Level level = Level::File;
    std::string artefact;
    NodeMetrics metrics;
};
// metrics.csv: version_index,level,artefact,fan_in,fan_out,instability,pagerank,loc
std::string metrics_csv(const std::vector<MetricRow>& rows);

// temporal.csv: tid,type,level,birth,death_or_C,age,member_instance_ids (';'-separated)
std::string temporal_csv(const std::vector<TemporalInstance>& temporal);
std::vector<TemporalInstance> parse_temporal(std::string_view text,
                                             const std::vector<std::vector<SmellInstance>>& per_version);

}  // namespace asmell
