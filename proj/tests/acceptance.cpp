// Acceptance runner: one PASS/FAIL line per criterion, non-zero exit on any failure.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "asmell/detect.hpp"
#include "asmell/evolve.hpp"
#include "asmell/pipeline.hpp"
#include "fixtures.hpp"

using namespace asmell;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

Outcome fail(std::string why) { return {false, std::move(why)}; }

bool same(const std::vector<std::vector<std::optional<double>>>& want, const CoocMatrix& got) {
    if (want.size() != got.pct.size()) return false;
    for (std::size_t i = 0; i < want.size(); ++i)
        for (std::size_t j = 0; j < want.size(); ++j) {
            if (want[i][j].has_value() != got.pct[i][j].has_value()) return false;
            if (want[i][j] && *want[i][j] != *got.pct[i][j]) return false;
        }
    return true;
}

std::string describe(const SmellInstance& s) {
    std::string out = std::string(to_string(s.type)) + "/" + std::string(to_string(s.level)) + "{";
    for (const auto& a : s.affected()) out += a + " ";
    return out + "}";
}

// --- 1: planted detector fixture ---------------------------------------------

Outcome planted_fixture() {
    const auto start = std::chrono::steady_clock::now();
    std::vector<fixture::FileSpec> specs;
    for (const char* comp : {"p", "q", "u", "x", "z", "w"})
        for (int f = 0; f < 5; ++f)
            specs.push_back({std::string(comp) + "/f" + std::to_string(f) + ".c", comp, comp[0] == 'w' ? 200 : 10});
    const std::vector<EdgeSpec> edges{
        // hub u/f0: three in, three out
        {"p/f0.c", "u/f0.c"}, {"q/f0.c", "u/f0.c"}, {"u/f1.c", "u/f0.c"},
        {"u/f0.c", "x/f0.c"}, {"u/f0.c", "z/f0.c"}, {"u/f0.c", "u/f2.c"},
        // 3-clique inside z, each member fed twice from outside the cycle
        {"z/f0.c", "z/f1.c"}, {"z/f1.c", "z/f0.c"}, {"z/f1.c", "z/f2.c"},
        {"z/f2.c", "z/f1.c"}, {"z/f0.c", "z/f2.c"}, {"z/f2.c", "z/f0.c"},
        {"p/f1.c", "z/f0.c"}, {"q/f1.c", "z/f1.c"}, {"x/f1.c", "z/f1.c"},
        {"z/f3.c", "z/f2.c"}, {"z/f4.c", "z/f2.c"},
        // x is less stable than u; w is the oversized sink
        {"x/f2.c", "w/f0.c"},
    };
    const auto files = fixture::files(specs, edges);
    const auto components = project_to_components(files);
    Diagnostics diags;
    const auto found = detect_version(files, components, DetectOptions{}, diags);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    struct Want {
        SmellType type;
        Level level;
        std::map<std::string, std::set<std::string>> roles;
    };
    const std::vector<Want> planted{
        {SmellType::CD, Level::File, {{"member", {"z/f0.c", "z/f1.c", "z/f2.c"}}}},
        {SmellType::HL, Level::File,
         {{"centre", {"u/f0.c"}}, {"incoming", {"p/f0.c", "q/f0.c", "u/f1.c"}}, {"outgoing", {"x/f0.c", "z/f0.c", "u/f2.c"}}}},
        {SmellType::UD, Level::Component, {{"centre", {"u"}}, {"less_stable", {"x"}}}},
        {SmellType::GC, Level::Component, {{"member", {"w"}}}},
    };
    std::vector<bool> hit(planted.size(), false);
    std::string extra;
    for (const auto& s : found) {
        bool matched = false;
        for (std::size_t i = 0; i < planted.size() && !matched; ++i) {
            if (hit[i] || s.type != planted[i].type || s.level != planted[i].level) continue;
            std::map<std::string, std::set<std::string>> roles(s.roles.begin(), s.roles.end());
            if (roles == planted[i].roles) hit[i] = matched = true;
        }
        if (!matched) extra += " " + describe(s);
    }
    int missed = 0;
    for (bool h : hit) missed += !h;
    std::ostringstream detail;
    detail << found.size() << " instances, " << missed << " missed, runtime " << seconds << " s";
    if (!extra.empty()) detail << ", unexpected:" << extra;
    return {missed == 0 && extra.empty() && seconds < 5.0, detail.str()};
}

// --- 2: shape exhaustiveness -------------------------------------------------

Outcome shape_exhaustive() {
    int graphs = 0, agree = 0;
    for (std::size_t n = 2; n <= 4; ++n) {
        std::vector<std::pair<std::size_t, std::size_t>> slots;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) slots.emplace_back(i, j);
        for (std::uint32_t mask = 0; mask < (1u << slots.size()); ++mask) {
            std::vector<std::pair<std::size_t, std::size_t>> edges;
            for (std::size_t b = 0; b < slots.size(); ++b)
                if (mask & (1u << b)) edges.push_back(slots[b]);
            if (!oracle::strongly_connected(oracle::adjacency(n, edges))) continue;
            ++graphs;
            agree += to_string(classify_shape(InducedSubgraph(n, edges))) == oracle::shape(oracle::adjacency(n, edges));
        }
    }
    return {graphs > 0 && agree == graphs, std::to_string(agree) + "/" + std::to_string(graphs) + " digraphs agree"};
}

// --- 3: Kaplan-Meier ---------------------------------------------------------

Outcome kaplan_meier() {
    const std::vector<Lifetime> worked{{1, false}, {2, false}, {2, true}, {3, false}};
    const auto curve = km_estimator(worked);
    if (curve.at(1) != 0.75 || curve.at(2) != 0.5 || curve.at(3) != 0.0)
        return fail("worked example gives " + std::to_string(curve.at(1)) + "," + std::to_string(curve.at(2)) + "," +
                    std::to_string(curve.at(3)));
    std::mt19937_64 rng(3);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 1 + rng() % 30;
        std::vector<Lifetime> data;
        std::vector<oracle::Lifetime> ref;
        for (std::size_t i = 0; i < n; ++i) {
            const int age = 1 + static_cast<int>(rng() % 10);
            const bool censored = rng() % 3 == 0;
            data.push_back({age, censored});
            ref.push_back({age, censored});
        }
        const auto c = km_estimator(data);
        for (int t = 0; t <= 11; ++t) worst = std::max(worst, std::abs(c.at(t) - oracle::km_survival(ref, t)));
        if (c.median != oracle::km_median(ref)) return fail("median differs in trial " + std::to_string(trial));
    }
    std::ostringstream detail;
    detail << "worked example exact, 1000 datasets max |dS| = " << worst;
    return {worst <= 1e-12, detail.str()};
}

// --- 4: DTW classification ---------------------------------------------------

/// Share of noisy template signals assigned their source group.
double trend_accuracy(std::mt19937_64& rng, int trials, bool value_relative, const TrendOptions& options,
                      bool constant_only) {
    std::uniform_real_distribution<double> base(-100.0, 100.0), span(1.0, 100.0), unit(-1.0, 1.0);
    int correct = 0;
    for (int trial = 0; trial < trials; ++trial) {
        const double low = value_relative ? span(rng) : base(rng);
        const double high = low + span(rng);
        const auto templates = trend_templates(low, high);
        const auto t = constant_only ? 0 : static_cast<std::size_t>(trial % 7);
        auto signal = templates[t];
        const auto [lo, hi] = std::minmax_element(signal.begin(), signal.end());
        const double range = *hi - *lo;
        for (auto& x : signal) x += 0.05 * unit(rng) * (value_relative ? std::abs(x) : range);
        correct += classify_trend(signal, options).group == group_of(static_cast<Template>(t));
    }
    return static_cast<double>(correct) / trials;
}

Outcome dtw_classification() {
    std::mt19937_64 rng(4);
    const double accuracy = trend_accuracy(rng, 1000, false, {}, false);
    const auto exact = trend_templates(0.0, 1.0);
    for (auto t : {Template::C, Template::F}) {
        const auto label = classify_trend(exact[static_cast<std::size_t>(t)]);
        if (label.tmpl != t || label.distance != 0.0) return fail(std::string(to_string(t)) + " not exact");
    }
    std::ostringstream detail;
    detail << "group accuracy " << 100.0 * accuracy << "% over 1000 trials, step templates exact";
    return {accuracy >= 0.95, detail.str()};
}

// --- 5: co-occurrence and precedence -----------------------------------------

Outcome cooc_precedence() {
    std::mt19937_64 rng(5);
    const auto kinds = precedence_kinds();
    int matrices = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const auto pv = fixture::random_history(rng);
        for (auto level : {Level::Component, Level::File}) {
            std::vector<oracle::Kind> ck;
            for (const auto& k : cooccurrence_kinds(level)) ck.push_back({std::string(to_string(k.type)), k.role});
            std::vector<std::vector<oracle::Instance>> versions;
            for (const auto& v : pv) {
                versions.emplace_back();
                for (const auto& s : v)
                    if (s.level == level) versions.back().push_back(fixture::to_oracle(s));
            }
            ++matrices;
            if (!same(oracle::cooccurrence(versions, ck), cooccurrence_matrix(pv, level)))
                return fail("co-occurrence differs in history " + std::to_string(trial));
        }
        const auto temporal = build_temporal_instances(pv);
        const auto chains = fixture::to_oracle(temporal);
        const int k_max = static_cast<int>(pv.size());
        for (auto counting : {PrecedenceCounting::Instances, PrecedenceCounting::Pairs}) {
            const auto ms = precedence_matrices(temporal, k_max, counting);
            for (int k = 1; k <= k_max; ++k) {
                ++matrices;
                if (!same(oracle::precedence(chains, kinds, k, counting == PrecedenceCounting::Pairs),
                          ms[static_cast<std::size_t>(k - 1)]))
                    return fail("precedence differs in history " + std::to_string(trial) + " at k=" + std::to_string(k));
            }
        }
    }
    return {true, std::to_string(matrices) + " matrices over 200 histories equal the oracle"};
}

// --- shared corpus helpers ---------------------------------------------------

/// Writes `<file>.c` and `<file>.h` for every file; deps become quoted includes.
void write_snapshot(const std::filesystem::path& root, const std::map<std::string, std::set<std::string>>& deps) {
    for (const auto& [file, targets] : deps) {
        std::string name = file;
        for (auto& ch : name)
            if (ch == '/') ch = '_';
        std::string body = "#include \"" + file + ".h\"\n";
        for (const auto& t : targets) body += "#include \"" + t + ".h\"\n";
        write_file(root / (file + ".c"), body + "int " + name + "(void) { return 0; }\n");
        write_file(root / (file + ".h"), "int " + name + "(void);\n");
    }
}

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path) { return csv::parse(read_file(path)); }

// --- 6: end-to-end evolution -------------------------------------------------

Outcome evolution_fixture() {
    fixture::TempDir dir("accept-e2e");
    RunConfig cfg;
    cfg.project_id = "e2e";
    cfg.out_dir = dir / "out";
    cfg.cache_dir = dir / "cache";
    for (int v = 1; v <= 5; ++v) {
        std::map<std::string, std::set<std::string>> deps{
            {"app/main", {"core/a"}}, {"core/a", {"core/b"}}, {"core/b", {}}, {"core/c", {}}};
        if (v <= 2) deps["core/b"] = {"core/a"};
        if (v == 3) deps["core/b"] = {"core/c"}, deps["core/c"] = {"core/a"};
        if (v >= 4) deps["core/b"] = {"core/c"};
        const auto snap = dir / ("v" + std::to_string(v));
        write_snapshot(snap, deps);
        cfg.snapshots.push_back(snap);
    }
    const auto result = run_pipeline(cfg);
    if (result.exit_code != 0) return fail("pipeline exit " + std::to_string(result.exit_code));
    const auto csv_dir = cfg.out_dir / "csv";

    std::vector<std::vector<std::string>> cds;
    for (const auto& row : read_csv(csv_dir / "temporal.csv"))
        if (row.size() >= 6 && row[1] == "CD") cds.push_back(row);
    if (cds.size() != 1) return fail(std::to_string(cds.size()) + " temporal CDs");
    const auto& cd = cds[0];
    if (cd[2] != "file" || cd[3] != "0" || cd[4] != "3" || cd[5] != "3")
        return fail("CD chain " + cd[2] + " birth " + cd[3] + " death " + cd[4] + " age " + cd[5]);

    std::string size_group;
    for (const auto& row : read_csv(csv_dir / "trends.csv"))
        if (row.size() == 4 && row[0] == cd[0] && row[1] == "size") size_group = row[3];
    if (size_group != "increasing") return fail("size trend '" + size_group + "'");

    std::string s3;
    for (const auto& row : read_csv(csv_dir / "survival.csv"))
        if (row.size() == 5 && row[0] == "CD/file" && row[1] == "3") s3 = row[4];
    if (s3.empty() || std::stod(s3) != 0.0) return fail("S(3) = '" + s3 + "'");
    return {true, "one CD, age 3, death at version 4, size increasing, S(3) = 0"};
}

// --- 7: churned component cycles die sooner ----------------------------------

/// On/off schedule over `versions` with run lengths drawn from the given ranges.
std::vector<bool> schedule(std::mt19937_64& rng, int versions, int on_min, int on_max, int off_min, int off_max) {
    std::vector<bool> alive;
    bool on = rng() % 2 == 0;
    while (static_cast<int>(alive.size()) < versions) {
        const int lo = on ? on_min : off_min, hi = on ? on_max : off_max;
        const int run = lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
        for (int i = 0; i < run && static_cast<int>(alive.size()) < versions; ++i) alive.push_back(on);
        on = !on;
    }
    return alive;
}

std::vector<std::filesystem::path> churn_corpus(const std::filesystem::path& root, std::uint64_t seed) {
    constexpr int kVersions = 12, kComponents = 8;
    std::mt19937_64 rng(seed);
    auto f = [](int c, int i) { return "c" + std::to_string(c) + "/f" + std::to_string(i); };
    std::vector<std::vector<bool>> file_cycles, comp_cycles;
    for (int c = 0; c < kComponents; ++c) file_cycles.push_back(schedule(rng, kVersions, 5, 9, 1, 2));
    for (int p = 0; p < kComponents / 2; ++p) comp_cycles.push_back(schedule(rng, kVersions, 1, 2, 1, 3));
    std::vector<std::filesystem::path> snaps;
    for (int v = 0; v < kVersions; ++v) {
        std::map<std::string, std::set<std::string>> deps;
        for (int c = 0; c < kComponents; ++c) {
            for (int i = 0; i < 4; ++i) deps[f(c, i)];
            deps[f(c, 0)].insert(f(c, 1));
            if (file_cycles[static_cast<std::size_t>(c)][static_cast<std::size_t>(v)]) deps[f(c, 1)].insert(f(c, 0));
        }
        for (int p = 0; p < kComponents / 2; ++p) {
            const int a = 2 * p, b = 2 * p + 1;
            deps[f(a, 2)].insert(f(b, 3));
            if (comp_cycles[static_cast<std::size_t>(p)][static_cast<std::size_t>(v)]) deps[f(b, 2)].insert(f(a, 3));
        }
        snaps.push_back(root / ("v" + std::to_string(v)));
        write_snapshot(snaps.back(), deps);
    }
    return snaps;
}

Outcome survival_ordering() {
    fixture::TempDir dir("accept-churn");
    RunConfig cfg;
    cfg.project_id = "churn";
    cfg.snapshots = churn_corpus(dir.path(), 7);
    cfg.out_dir = dir / "out";
    cfg.cache_dir = dir / "cache";
    run_pipeline(cfg);
    std::map<std::string, std::string> medians;
    for (const auto& row : read_csv(cfg.out_dir / "csv/survival_median.csv"))
        if (row.size() == 2) medians[row[0]] = row[1];
    const auto comp = medians["CD/component"], file = medians["CD/file"];
    const std::string detail = "median CD/component " + (comp.empty() ? "none" : comp) + ", CD/file " +
                               (file.empty() ? "none (above 50%)" : file);
    if (comp.empty()) return fail(detail);
    return {file.empty() || std::stoi(comp) < std::stoi(file), detail};
}

// --- 8: determinism ----------------------------------------------------------

Outcome determinism() {
    fixture::TempDir dir("accept-det");
    const auto snaps = churn_corpus(dir.path(), 11);
    std::vector<std::filesystem::path> outs;
    for (int run = 0; run < 2; ++run) {
        RunConfig cfg;
        cfg.project_id = "det";
        cfg.snapshots = snaps;
        cfg.out_dir = dir / ("out" + std::to_string(run));
        cfg.cache_dir = dir / ("cache" + std::to_string(run));
        cfg.jobs = run + 1;
        run_pipeline(cfg);
        outs.push_back(cfg.out_dir);
    }
    int compared = 0;
    std::vector<std::filesystem::path> rel{"report.html"};
    for (const auto& e : std::filesystem::directory_iterator(outs[0] / "csv"))
        rel.push_back(std::filesystem::path("csv") / e.path().filename());
    for (const auto& r : rel) {
        if (!std::filesystem::exists(outs[1] / r)) return fail(r.string() + " missing in second run");
        if (read_file(outs[0] / r) != read_file(outs[1] / r)) return fail(r.string() + " differs");
        ++compared;
    }
    return {compared > 1, std::to_string(compared) + " files byte-identical"};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"planted detector fixture", planted_fixture},
        {"shape classifier exhaustiveness", shape_exhaustive},
        {"Kaplan-Meier oracle", kaplan_meier},
        {"DTW trend classification", dtw_classification},
        {"co-occurrence and precedence oracle", cooc_precedence},
        {"end-to-end evolution fixture", evolution_fixture},
        {"component cycles die sooner than file cycles", survival_ordering},
        {"deterministic outputs", determinism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = fail(std::string("threw: ") + e.what());
        }
        failures += !o.pass;
        std::printf("criterion %zu %s: %s (%s)\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first, o.detail.c_str());
    }

    std::mt19937_64 rng(44);
    const double plain = trend_accuracy(rng, 1000, true, {}, true);
    TrendOptions tolerant;
    tolerant.flat_tolerance = 0.1;
    const double flat = trend_accuracy(rng, 1000, true, tolerant, true);
    std::printf("info: constant template with value-relative 5%% noise classified constant %.1f%% (flat tolerance 0), "
                "%.1f%% (flat tolerance 0.1)\n",
                100.0 * plain, 100.0 * flat);
    return failures == 0 ? 0 : 1;
}
