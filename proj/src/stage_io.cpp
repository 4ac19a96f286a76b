#include "asmell/stage_io.hpp"

#include <map>

#include "asmell/error.hpp"
#include "asmell/util.hpp"

namespace asmell {

namespace {

std::vector<std::vector<std::string>> body(std::string_view text, std::size_t columns, std::string_view name) {
    auto rows = csv::parse(text);
    if (rows.empty()) throw Error(ErrorKind::FormatError, std::string(name) + " has no header");
    rows.erase(rows.begin());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != columns) {
            throw FormatError(i + 2, std::string(name) + ": expected " + std::to_string(columns) + " columns");
        }
    }
    return rows;
}

int parse_int(const std::string& text) {
    const double v = parse_number(text);
    return static_cast<int>(v);
}

}  // namespace

std::string versions_csv(const std::vector<VersionRecord>& versions) {
    std::string out = csv::row({"version_index", "version_label", "snapshot"});
    for (const auto& v : versions) out += csv::row({std::to_string(v.index), v.label, v.snapshot});
    return out;
}

std::vector<VersionRecord> parse_versions_csv(std::string_view text) {
    std::vector<VersionRecord> out;
    for (auto& r : body(text, 3, "versions.csv")) out.push_back({parse_int(r[0]), r[1], r[2]});
    return out;
}

std::string smells_csv(const std::vector<std::vector<SmellInstance>>& per_version) {
    std::string out = csv::row({"version_index", "version_label", "type", "level", "id", "role", "artefact"});
    for (const auto& version : per_version) {
        for (const auto& s : version) {
            for (const auto& [role_name, members] : s.roles) {
                for (const auto& m : members) {
                    out += csv::row({std::to_string(s.version_index), s.version_label, std::string(to_string(s.type)),
                                     std::string(to_string(s.level)), s.id, role_name, m});
                }
            }
        }
    }
    return out;
}

std::string characteristics_csv(const std::vector<std::vector<SmellInstance>>& per_version) {
    std::string out = csv::row({"id", "name", "value"});
    for (const auto& version : per_version) {
        for (const auto& s : version) {
            for (const auto& [name, value] : s.characteristics) out += csv::row({s.id, name, format_char_value(value)});
        }
    }
    return out;
}

std::vector<std::vector<SmellInstance>> parse_smells(std::string_view smells, std::string_view characteristics,
                                                     std::size_t version_count) {
    std::vector<std::vector<SmellInstance>> per_version(version_count);
    std::map<std::string, std::pair<std::size_t, std::size_t>> where;
    for (auto& r : body(smells, 7, "smells.csv")) {
        const int v = parse_int(r[0]);
        if (v < 0) throw Error(ErrorKind::FormatError, "negative version index in smells.csv");
        if (static_cast<std::size_t>(v) >= per_version.size()) per_version.resize(static_cast<std::size_t>(v) + 1);
        auto it = where.find(r[4]);
        if (it == where.end()) {
            SmellInstance s;
            s.id = r[4];
            s.version_index = v;
            s.version_label = r[1];
            s.type = parse_smell_type(r[2]);
            s.level = parse_level(r[3]);
            per_version[static_cast<std::size_t>(v)].push_back(std::move(s));
            it = where.emplace(r[4], std::make_pair(static_cast<std::size_t>(v),
                                                    per_version[static_cast<std::size_t>(v)].size() - 1))
                     .first;
        }
        per_version[it->second.first][it->second.second].roles[r[5]].insert(r[6]);
    }
    for (auto& r : body(characteristics, 3, "characteristics.csv")) {
        auto it = where.find(r[0]);
        if (it == where.end()) throw Error(ErrorKind::FormatError, "characteristic for unknown instance " + r[0]);
        auto& s = per_version[it->second.first][it->second.second];
        try {
            s.characteristics[r[1]] = parse_number(r[2]);
        } catch (const Error&) {
            s.characteristics[r[1]] = r[2];
        }
    }
    return per_version;
}

std::string metrics_csv(const std::vector<MetricRow>& rows) {
    std::string out =
        csv::row({"version_index", "level", "artefact", "fan_in", "fan_out", "instability", "pagerank", "loc"});
    for (const auto& r : rows) {
        out += csv::row({std::to_string(r.version_index), std::string(to_string(r.level)), r.artefact,
                         std::to_string(r.metrics.fan_in), std::to_string(r.metrics.fan_out),
                         format_number(r.metrics.instability), format_number(r.metrics.pagerank),
                         std::to_string(r.metrics.loc)});
    }
    return out;
}

std::string temporal_csv(const std::vector<TemporalInstance>& temporal) {
    std::string out = csv::row({"tid", "type", "level", "birth", "death_or_C", "age", "member_instance_ids"});
    for (const auto& t : temporal) {
        std::string members;
        for (const auto& s : t.chain) {
            if (!members.empty()) members += ';';
            members += s.id;
        }
        out += csv::row({t.tid, std::string(to_string(t.type)), std::string(to_string(t.level)), std::to_string(t.birth),
                         t.death ? std::to_string(*t.death) : "C", std::to_string(t.age()), members});
    }
    return out;
}

std::vector<TemporalInstance> parse_temporal(std::string_view text,
                                             const std::vector<std::vector<SmellInstance>>& per_version) {
    std::map<std::string, const SmellInstance*> by_id;
    for (const auto& v : per_version) {
        for (const auto& s : v) by_id[s.id] = &s;
    }
    std::vector<TemporalInstance> out;
    std::size_t line = 1;
    for (auto& r : body(text, 7, "temporal.csv")) {
        ++line;
        TemporalInstance t;
        t.tid = r[0];
        t.type = parse_smell_type(r[1]);
        t.level = parse_level(r[2]);
        t.birth = parse_int(r[3]);
        if (r[4] != "C") t.death = parse_int(r[4]);
        for (const auto& id : split(r[6], ';')) {
            auto it = by_id.find(id);
            if (it == by_id.end()) throw FormatError(line, "temporal.csv references unknown instance " + id);
            t.chain.push_back(*it->second);
        }
        if (t.age() != parse_int(r[5])) throw FormatError(line, "temporal.csv age does not match member count");
        out.push_back(std::move(t));
    }
    return out;
}

}  // namespace asmell
