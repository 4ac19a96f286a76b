#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "asmell/evolve.hpp"
#include "asmell/graph.hpp"
#include "asmell/stage_io.hpp"
#include "asmell/track.hpp"

namespace asmell {

struct VersionGraphs {
    DependencyGraph files;
    DependencyGraph components;
};

struct EvolveOptions {
    int k_max = 0;  // 0: number of analysed versions
    PrecedenceCounting precedence = PrecedenceCounting::Instances;
    TrendOptions trend;
    PageRankOptions pagerank;
};

struct HeatmapRow {
    std::string component;
    std::map<SmellType, int> counts;
};

struct DegreeBin {
    int degree = 0;
    int in_nodes = 0;   // nodes with this in-degree
    int out_nodes = 0;  // nodes with this out-degree
};

struct TrendTally {
    std::string stratum;  // <type>/<level>
    std::string characteristic;
    std::map<TrendGroup, int> groups;
    int total = 0;
};

struct AnalysisBundle {
    std::string project_id;
    std::vector<VersionRecord> versions;
    std::vector<std::vector<SmellInstance>> per_version;
    std::vector<MetricRow> metrics;
    std::vector<TemporalInstance> temporal;
    std::vector<TrendRecord> trends;
    std::vector<TrendTally> trend_tallies;
    std::vector<SurvivalCurve> survival;
    CoocMatrix cooc_component;
    CoocMatrix cooc_file;
    std::vector<CoocMatrix> precedence;
    ShapeTransitions transitions;
    std::vector<std::map<std::string, int>> counts_over_time;  // per version, by <type>/<level>
    std::vector<SmellType> heatmap_types;                      // columns with a non-zero total
    std::vector<HeatmapRow> heatmap;                           // latest version, component-level smells
    std::vector<DegreeBin> degree_histogram;                   // latest component graph
    DependencyGraph latest_components;
    std::vector<const SmellInstance*> top_smells() const;      // latest version, largest first
};

AnalysisBundle assemble_bundle(std::string project_id, std::vector<VersionRecord> versions,
                               const std::vector<VersionGraphs>& graphs,
                               std::vector<std::vector<SmellInstance>> per_version,
                               std::vector<TemporalInstance> temporal, const EvolveOptions& options);

/// Percentages are written with two decimals wherever they appear.
std::string format_pct(double pct);

/// Every CSV file of the report tree, keyed by file name.
std::map<std::string, std::string> render_csv(const AnalysisBundle& bundle);
void emit_csv(const AnalysisBundle& bundle, const std::filesystem::path& out_dir);

// Individual evolve-stage CSVs.
std::string trends_csv(const std::vector<TrendRecord>& trends);
std::string survival_csv(const std::vector<SurvivalCurve>& curves);
std::string cooc_csv(const CoocMatrix& matrix);
std::string precedence_csv(const std::vector<CoocMatrix>& matrices);
std::string shape_transitions_csv(const ShapeTransitions& transitions);

std::string render_html(const AnalysisBundle& bundle);
void render_html(const AnalysisBundle& bundle, const std::filesystem::path& out_path);

std::string summary_json(const AnalysisBundle& bundle);

}  // namespace asmell
