#include "asmell/pipeline.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "asmell/extract.hpp"
#include "asmell/stage_io.hpp"
#include "asmell/util.hpp"

namespace asmell {

namespace fs = std::filesystem;

std::vector<fs::path> parse_snapshot_list(std::string_view arg) {
    std::vector<fs::path> out;
    const std::string text(trim(arg));
    if (text.empty()) return out;
    std::error_code ec;
    if (text.find(',') == std::string::npos && fs::is_regular_file(text, ec)) {
        std::istringstream in(read_file(text));
        const fs::path base = fs::path(text).parent_path();
        for (std::string line; std::getline(in, line);) {
            const auto entry = std::string(trim(line));
            if (entry.empty() || entry.front() == '#') continue;
            const fs::path p(entry);
            out.push_back(p.is_relative() ? base / p : p);
        }
        return out;
    }
    for (const auto& part : split(text, ',')) {
        const auto entry = std::string(trim(part));
        if (!entry.empty()) out.emplace_back(entry);
    }
    return out;
}

fs::path resolve_cache_dir(const RunConfig& config) {
    if (config.cache_dir) return *config.cache_dir;
    if (const char* env = std::getenv("ASMELL_CACHE_DIR"); env != nullptr && *env != '\0') return env;
    return config.out_dir / ".cache";
}

namespace {

std::string snapshot_label(const fs::path& snapshot) {
    auto p = snapshot.lexically_normal();
    if (p.has_filename()) return p.filename().string();
    return p.parent_path().filename().string();
}

void require(const fs::path& path) {
    std::error_code ec;
    if (!fs::exists(path, ec)) throw Error(ErrorKind::MissingStageInput, path.string());
}

void set_threads(int jobs) {
#ifdef _OPENMP
    if (jobs > 0) omp_set_num_threads(jobs);
#else
    (void)jobs;
#endif
}

// Cached extraction: <fingerprint>.fgraph plus <fingerprint>.diag.
struct CacheEntry {
    fs::path graph;
    fs::path diag;
};

CacheEntry cache_entry(const fs::path& dir, const std::string& fingerprint) {
    return {dir / (fingerprint + ".fgraph"), dir / (fingerprint + ".diag")};
}

std::string encode_diagnostics(const Diagnostics& diags) {
    std::string out;
    for (const auto& d : diags.entries()) {
        out += std::to_string(static_cast<int>(d.severity)) + '\t' + encode_token(d.code) + '\t' +
               encode_token(d.message) + '\n';
    }
    return out;
}

Diagnostics decode_diagnostics(std::string_view text) {
    Diagnostics diags;
    for (const auto& line : split(text, '\n')) {
        const auto fields = split(line, '\t');
        if (fields.size() != 3) continue;
        auto code = decode_token(fields[1], 0);
        auto message = decode_token(fields[2], 0);
        switch (fields[0].empty() ? '0' : fields[0][0]) {
            case '1': diags.warn(std::move(code), std::move(message)); break;
            case '2': diags.error(std::move(code), std::move(message)); break;
            default: diags.info(std::move(code), std::move(message));
        }
    }
    return diags;
}

struct SnapshotWork {
    fs::path root;
    std::string label;
    std::optional<DependencyGraph> files;
    Diagnostics diags;
    std::string failure;
    bool cache_hit = false;
};

void extract_one(SnapshotWork& work, const ExtractConfig& config, const fs::path& cache_dir) {
    std::error_code ec;
    if (!fs::is_directory(work.root, ec)) {
        work.failure = "not a readable directory: " + work.root.string();
        return;
    }
    try {
        const auto fingerprint = snapshot_fingerprint(work.root, config);
        const auto entry = cache_entry(cache_dir, fingerprint);
        if (fs::exists(entry.graph, ec) && fs::exists(entry.diag, ec)) {
            try {
                work.files = load_graph_file(entry.graph);
                work.diags = decode_diagnostics(read_file(entry.diag));
                work.cache_hit = true;
                return;
            } catch (const Error&) {
                work.files.reset();
                work.diags = Diagnostics{};
            }
        }
        auto result = extract_snapshot(work.root, config, VersionInfo{0, work.label}, work.diags);
        work.files = std::move(result.file_graph);
        if (result.unresolved_includes > 0) {
            work.diags.info("UnresolvedIncludes",
                            std::to_string(result.unresolved_includes) + " includes could not be resolved");
        }
        try {
            save_graph_file(*work.files, entry.graph);
            write_file(entry.diag, encode_diagnostics(work.diags));
        } catch (const Error& e) {
            work.diags.warn("CacheWriteFailed", e.what());
        }
    } catch (const std::exception& e) {
        work.files.reset();
        work.failure = e.what();
    }
}

struct ExtractedSeries {
    std::vector<VersionRecord> versions;
    std::vector<VersionGraphs> graphs;
};

ExtractedSeries extract_series(const RunConfig& config, StageResult& result) {
    if (config.snapshots.empty()) throw Error(ErrorKind::Usage, "empty snapshot list");
    const ExtractConfig extract_config = config.config_path ? ExtractConfig::load(*config.config_path) : ExtractConfig{};
    const auto cache_dir = resolve_cache_dir(config);

    std::vector<SnapshotWork> work(config.snapshots.size());
    for (std::size_t i = 0; i < work.size(); ++i) {
        work[i].root = config.snapshots[i];
        work[i].label = snapshot_label(config.snapshots[i]);
    }
    set_threads(config.jobs);
    const auto count = static_cast<std::ptrdiff_t>(work.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i) extract_one(work[static_cast<std::size_t>(i)], extract_config, cache_dir);

    ExtractedSeries series;
    std::size_t skipped = 0;
    for (auto& w : work) {
        const auto where = w.root.string() + ": ";
        for (const auto& d : w.diags.entries()) {
            switch (d.severity) {
                case Severity::Info: result.diagnostics.info(d.code, where + d.message); break;
                case Severity::Warning: result.diagnostics.warn(d.code, where + d.message); break;
                case Severity::Error: result.diagnostics.error(d.code, where + d.message); break;
            }
        }
        if (!w.files) {
            result.diagnostics.error("SnapshotSkipped", where + w.failure);
            ++skipped;
            continue;
        }
        w.cache_hit ? ++result.cache_hits : ++result.cache_misses;
        const int index = static_cast<int>(series.versions.size());
        const VersionInfo version{index, w.label};
        auto files = w.files->with_version(version);
        try {
            auto components = project_to_components(files).with_version(version);
            series.graphs.push_back({std::move(files), std::move(components)});
            series.versions.push_back({index, w.label, w.root.string()});
        } catch (const Error& e) {
            result.diagnostics.error("SnapshotSkipped", where + e.what());
            ++skipped;
        }
    }
    if (series.versions.empty()) throw Error(ErrorKind::EmptyInput, "no snapshot could be analysed");
    if (skipped > 0) {
        result.exit_code = 2;
        result.diagnostics.warn("VersionsReindexed", std::to_string(skipped) + " of " + std::to_string(work.size()) +
                                                         " snapshots skipped; " +
                                                         std::to_string(series.versions.size()) + " versions remain");
    }
    result.versions = series.versions.size();
    return series;
}

void save_series(const OutputLayout& layout, const ExtractedSeries& series) {
    const auto dir = layout.graphs();
    std::error_code ec;
    fs::remove_all(dir, ec);
    for (const auto& g : series.graphs) {
        const auto stem = std::to_string(g.files.version_index());
        save_graph_file(g.files, dir / (stem + ".fgraph"));
        save_graph_file(g.components, dir / (stem + ".cgraph"));
    }
    write_file(dir / "versions.csv", versions_csv(series.versions));
}

ExtractedSeries load_series(const OutputLayout& layout) {
    const auto dir = layout.graphs();
    ExtractedSeries series;
    std::error_code ec;
    if (fs::exists(dir / "versions.csv", ec)) {
        series.versions = parse_versions_csv(read_file(dir / "versions.csv"));
    } else if (fs::is_directory(dir, ec)) {
        // Graph-only workflow: number the .fgraph files found.
        std::vector<int> indices;
        for (const auto& entry : fs::directory_iterator(dir)) {
            if (entry.path().extension() != ".fgraph") continue;
            const auto stem = entry.path().stem().string();
            if (!stem.empty() && std::all_of(stem.begin(), stem.end(), [](char c) { return c >= '0' && c <= '9'; })) {
                indices.push_back(std::stoi(stem));
            }
        }
        std::sort(indices.begin(), indices.end());
        for (int i : indices) series.versions.push_back({i, std::to_string(i), ""});
    }
    if (series.versions.empty()) require(dir / "0.fgraph");
    for (std::size_t i = 0; i < series.versions.size(); ++i) {
        auto& record = series.versions[i];
        const auto stem = std::to_string(record.index);
        const auto fpath = dir / (stem + ".fgraph");
        require(fpath);
        auto files = load_graph_file(fpath);
        const auto cpath = dir / (stem + ".cgraph");
        auto components = fs::exists(cpath, ec) ? load_graph_file(cpath) : project_to_components(files);
        if (files.level() != Level::File || components.level() != Level::Component) {
            throw Error(ErrorKind::LevelMismatch, "graph level does not match file extension for version " + stem);
        }
        if (record.label.empty() || record.label == stem) {
            if (!files.version_label().empty()) record.label = files.version_label();
        }
        record.index = static_cast<int>(i);
        const VersionInfo version{record.index, record.label};
        series.graphs.push_back({files.with_version(version), components.with_version(version)});
    }
    return series;
}

std::vector<std::vector<SmellInstance>> detect_series(const ExtractedSeries& series, const DetectOptions& options,
                                                      int jobs, Diagnostics& diags) {
    std::vector<std::vector<SmellInstance>> per_version(series.graphs.size());
    std::vector<Diagnostics> local(series.graphs.size());
    std::vector<std::string> failures(series.graphs.size());
    set_threads(jobs);
    const auto count = static_cast<std::ptrdiff_t>(series.graphs.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        const auto v = static_cast<std::size_t>(i);
        try {
            per_version[v] = detect_version(series.graphs[v].files, series.graphs[v].components, options, local[v]);
        } catch (const std::exception& e) {
            failures[v] = e.what();
        }
    }
    for (std::size_t v = 0; v < local.size(); ++v) {
        if (!failures[v].empty()) throw Error(ErrorKind::FormatError, "detection failed for version " + std::to_string(v) + ": " + failures[v]);
        const auto where = "version " + std::to_string(v) + ": ";
        for (const auto& d : local[v].entries()) {
            switch (d.severity) {
                case Severity::Info: diags.info(d.code, where + d.message); break;
                case Severity::Warning: diags.warn(d.code, where + d.message); break;
                case Severity::Error: diags.error(d.code, where + d.message); break;
            }
        }
    }
    return per_version;
}

struct SmellStage {
    std::vector<VersionRecord> versions;
    std::vector<std::vector<SmellInstance>> per_version;
};

SmellStage load_smells(const OutputLayout& layout) {
    const auto csv_dir = layout.csv();
    for (const char* name : {"versions.csv", "smells.csv", "characteristics.csv"}) require(csv_dir / name);
    SmellStage stage;
    stage.versions = parse_versions_csv(read_file(csv_dir / "versions.csv"));
    stage.per_version = parse_smells(read_file(csv_dir / "smells.csv"), read_file(csv_dir / "characteristics.csv"),
                                     stage.versions.size());
    return stage;
}

std::vector<MetricRow> metric_rows(const ExtractedSeries& series, const PageRankOptions& options) {
    std::vector<MetricRow> rows;
    for (const auto& g : series.graphs) {
        for (const auto* graph : {&g.files, &g.components}) {
            const auto m = compute_metrics(*graph, options);
            for (DependencyGraph::Index i = 0; i < graph->node_count(); ++i) {
                rows.push_back({graph->version_index(), graph->level(), graph->node(i).path, m[i]});
            }
        }
    }
    return rows;
}

void write_detect_outputs(const OutputLayout& layout, const ExtractedSeries& series,
                          const std::vector<std::vector<SmellInstance>>& per_version, const PageRankOptions& pagerank) {
    const auto dir = layout.csv();
    write_file(dir / "versions.csv", versions_csv(series.versions));
    write_file(dir / "smells.csv", smells_csv(per_version));
    write_file(dir / "characteristics.csv", characteristics_csv(per_version));
    write_file(dir / "metrics.csv", metrics_csv(metric_rows(series, pagerank)));
}

void write_log(const OutputLayout& layout, const StageResult& result) {
    write_file(layout.log(), result.diagnostics.to_text());
}

void write_report(const OutputLayout& layout, const AnalysisBundle& bundle) {
    emit_csv(bundle, layout.csv());
    render_html(bundle, layout.report());
    write_file(layout.summary(), summary_json(bundle));
}

}  // namespace

StageResult run_pipeline(const RunConfig& config) {
    StageResult result;
    const OutputLayout layout{config.out_dir, config.project_id};
    const auto series = extract_series(config, result);
    save_series(layout, series);
    auto per_version = detect_series(series, config.detect, config.jobs, result.diagnostics);
    auto temporal = build_temporal_instances(per_version, config.track);
    const auto bundle = assemble_bundle(config.project_id, series.versions, series.graphs, std::move(per_version),
                                        std::move(temporal), config.evolve);
    write_report(layout, bundle);
    write_log(layout, result);
    return result;
}

StageResult run_extract(const RunConfig& config) {
    StageResult result;
    const OutputLayout layout{config.out_dir, config.project_id};
    const auto series = extract_series(config, result);
    save_series(layout, series);
    write_log(layout, result);
    return result;
}

StageResult run_detect(const RunConfig& config) {
    StageResult result;
    const OutputLayout layout{config.out_dir, config.project_id};
    const auto series = load_series(layout);
    const auto per_version = detect_series(series, config.detect, config.jobs, result.diagnostics);
    write_detect_outputs(layout, series, per_version, config.detect.pagerank);
    result.versions = series.versions.size();
    write_log(layout, result);
    return result;
}

StageResult run_track(const RunConfig& config) {
    StageResult result;
    const OutputLayout layout{config.out_dir, config.project_id};
    const auto stage = load_smells(layout);
    const auto temporal = build_temporal_instances(stage.per_version, config.track);
    write_file(layout.csv() / "temporal.csv", temporal_csv(temporal));
    result.versions = stage.versions.size();
    return result;
}

StageResult run_evolve(const RunConfig& config) {
    StageResult result;
    const OutputLayout layout{config.out_dir, config.project_id};
    require(layout.csv() / "temporal.csv");
    auto stage = load_smells(layout);
    auto temporal = parse_temporal(read_file(layout.csv() / "temporal.csv"), stage.per_version);
    result.versions = stage.versions.size();
    const auto bundle = assemble_bundle(config.project_id, std::move(stage.versions), {}, std::move(stage.per_version),
                                        std::move(temporal), config.evolve);
    const auto dir = layout.csv();
    auto files = render_csv(bundle);
    for (const char* name : {"trends.csv", "trend_summary.csv", "survival.csv", "survival_median.csv",
                             "cooc_component.csv", "cooc_file.csv", "precedence_k.csv", "shape_transitions.csv"}) {
        write_file(dir / name, files.at(name));
    }
    return result;
}

StageResult run_render(const RunConfig& config) {
    StageResult result;
    const OutputLayout layout{config.out_dir, config.project_id};
    require(layout.csv() / "temporal.csv");
    auto stage = load_smells(layout);
    const auto series = load_series(layout);
    if (series.versions.size() != stage.versions.size()) {
        throw Error(ErrorKind::VersionMismatch, "graphs and smells.csv cover different version counts");
    }
    auto temporal = parse_temporal(read_file(layout.csv() / "temporal.csv"), stage.per_version);
    result.versions = stage.versions.size();
    const auto bundle = assemble_bundle(config.project_id, std::move(stage.versions), series.graphs,
                                        std::move(stage.per_version), std::move(temporal), config.evolve);
    write_report(layout, bundle);
    return result;
}

}  // namespace asmell
