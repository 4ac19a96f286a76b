#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "asmell/pipeline.hpp"

namespace {

struct Flags {
    std::string snapshots;
    std::string config;
    std::string cache_dir;
    std::string cd_mode = "scc";
    bool precedence_pairs = false;
};

void add_common(CLI::App& app, asmell::RunConfig& config) {
    app.add_option("--out", config.out_dir, "Output directory")->capture_default_str();
    app.add_option("--project", config.project_id, "Project identifier")->capture_default_str();
    app.add_option("--jobs", config.jobs, "Worker threads (0: all cores)");
}

void add_extract(CLI::App& app, asmell::RunConfig& config, Flags& flags) {
    app.add_option("--snapshots", flags.snapshots, "Comma-separated snapshot directories, or a file listing them")
        ->required();
    app.add_option("--config", flags.config, "Extractor config file");
    app.add_option("--cache-dir", flags.cache_dir, "Extraction cache (default: $ASMELL_CACHE_DIR or <out>/.cache)");
}

void add_detect(CLI::App& app, asmell::RunConfig& config, Flags& flags) {
    app.add_option("--cd-mode", flags.cd_mode, "Cycle detection mode")
        ->check(CLI::IsMember({"scc", "elementary"}))
        ->capture_default_str();
    app.add_option("--cd-max-len", config.detect.cycle_limits.max_len, "Longest elementary cycle (0: unbounded)");
    app.add_option("--cd-max-count", config.detect.cycle_limits.max_count, "Elementary cycles per graph")
        ->capture_default_str();
    app.add_option("--gc-min-loc", config.detect.gc_min_loc, "Minimum LOC of a god component")->capture_default_str();
    app.add_option("--ud-threshold", config.detect.ud_threshold, "Unstable dependency strength threshold")
        ->capture_default_str();
    app.add_option("--seed", config.seed, "Seed for sampled diagnostics");
}

void add_track(CLI::App& app, asmell::RunConfig& config) {
    app.add_option("--track-threshold", config.track.threshold, "Minimum Jaccard similarity to match instances")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    app.add_flag("--track-exact", config.track.exact, "Match only identical artefact sets");
}

void add_evolve(CLI::App& app, asmell::RunConfig& config, Flags& flags) {
    app.add_option("--k-max", config.evolve.k_max, "Largest precedence window (0: number of versions)");
    app.add_flag("--precedence-pairs", flags.precedence_pairs, "Count precedence over instance pairs");
    app.add_option("--trend-flat-tol", config.evolve.trend.flat_tolerance,
                   "Relative range under which a series counts as constant")
        ->capture_default_str();
}

void finish(asmell::RunConfig& config, const Flags& flags) {
    if (!flags.snapshots.empty()) {
        config.snapshots = asmell::parse_snapshot_list(flags.snapshots);
        if (config.snapshots.empty()) throw asmell::Error(asmell::ErrorKind::Usage, "empty snapshot list");
    }
    if (!flags.config.empty()) config.config_path = flags.config;
    if (!flags.cache_dir.empty()) config.cache_dir = flags.cache_dir;
    config.detect.cycle_mode = flags.cd_mode == "elementary" ? asmell::CycleMode::Elementary : asmell::CycleMode::Scc;
    if (config.track.exact) config.track.threshold = 1.0;
    config.evolve.precedence =
        flags.precedence_pairs ? asmell::PrecedenceCounting::Pairs : asmell::PrecedenceCounting::Instances;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Architectural smell detection and evolution analysis for C/C++ code bases"};
    app.require_subcommand(1);
    asmell::RunConfig config;
    Flags flags;

    auto* run = app.add_subcommand("run", "Extract, detect, track, evolve and render in one go");
    auto* extract = app.add_subcommand("extract", "Build file and component graphs for each snapshot");
    auto* detect = app.add_subcommand("detect", "Detect smells on saved graphs");
    auto* track = app.add_subcommand("track", "Chain smell instances across versions");
    auto* evolve = app.add_subcommand("evolve", "Trend, survival, co-occurrence and precedence analyses");
    auto* render = app.add_subcommand("render", "Write the HTML report, summary.json and all CSVs");

    for (auto* sub : {run, extract, detect, track, evolve, render}) add_common(*sub, config);
    for (auto* sub : {run, extract}) add_extract(*sub, config, flags);
    for (auto* sub : {run, detect}) add_detect(*sub, config, flags);
    for (auto* sub : {run, track}) add_track(*sub, config);
    for (auto* sub : {run, evolve, render}) add_evolve(*sub, config, flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        finish(config, flags);
        asmell::StageResult result;
        if (run->parsed()) {
            result = asmell::run_pipeline(config);
        } else if (extract->parsed()) {
            result = asmell::run_extract(config);
        } else if (detect->parsed()) {
            result = asmell::run_detect(config);
        } else if (track->parsed()) {
            result = asmell::run_track(config);
        } else if (evolve->parsed()) {
            result = asmell::run_evolve(config);
        } else {
            result = asmell::run_render(config);
        }
        if (run->parsed() || extract->parsed()) {
            std::cout << "cache: " << result.cache_hits << " hit, " << result.cache_misses << " miss\n";
        }
        std::cout << "versions: " << result.versions << "\n";
        for (const auto& d : result.diagnostics.entries()) {
            if (d.severity != asmell::Severity::Info) std::cerr << d.code << ": " << d.message << "\n";
        }
        return result.exit_code;
    } catch (const asmell::Error& e) {
        std::cerr << "asmell: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "asmell: " << e.what() << "\n";
        return 1;
    }
}
