#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "asmell/detect.hpp"
#include "asmell/error.hpp"
#include "asmell/report.hpp"
#include "asmell/track.hpp"

namespace asmell {

struct RunConfig {
    std::string project_id = "project";
    std::vector<std::filesystem::path> snapshots;  // oldest first
    std::optional<std::filesystem::path> config_path;
    std::filesystem::path out_dir = "out";
    std::optional<std::filesystem::path> cache_dir;  // defaults to ASMELL_CACHE_DIR, then <out>/.cache
    DetectOptions detect;
    TrackOptions track;
    EvolveOptions evolve;
    int jobs = 0;  // 0: OpenMP default
    std::uint64_t seed = 0;
};

/// Output tree of a run.
struct OutputLayout {
    std::filesystem::path root;
    std::string project_id;

    std::filesystem::path graphs() const { return root / "graphs" / project_id; }
    std::filesystem::path csv() const { return root / "csv"; }
    std::filesystem::path report() const { return root / "report.html"; }
    std::filesystem::path summary() const { return root / "summary.json"; }
    std::filesystem::path log() const { return root / "diagnostics.log"; }
};

struct StageResult {
    int exit_code = 0;  // 0 success, 2 some snapshots skipped
    Diagnostics diagnostics;
    std::size_t versions = 0;
    std::size_t cache_hits = 0;
    std::size_t cache_misses = 0;
};

/// Comma-separated directories, or the path of a file listing one per line.
std::vector<std::filesystem::path> parse_snapshot_list(std::string_view arg);

std::filesystem::path resolve_cache_dir(const RunConfig& config);

StageResult run_pipeline(const RunConfig& config);

// Stage subcommands. Each reads the previous stage's files from the output
// tree and throws MissingStageInput naming the first absent one.
StageResult run_extract(const RunConfig& config);
StageResult run_detect(const RunConfig& config);
StageResult run_track(const RunConfig& config);
StageResult run_evolve(const RunConfig& config);
StageResult run_render(const RunConfig& config);

}  // namespace asmell
