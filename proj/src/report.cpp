#include "asmell/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "json.hpp"

#include "asmell/error.hpp"
#include "asmell/scc.hpp"
#include "asmell/util.hpp"

namespace asmell {

std::string format_pct(double pct) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", pct);
    return buf;
}

std::vector<const SmellInstance*> AnalysisBundle::top_smells() const {
    std::vector<const SmellInstance*> out;
    if (per_version.empty()) return out;
    for (const auto& s : per_version.back()) out.push_back(&s);
    std::stable_sort(out.begin(), out.end(), [](const SmellInstance* a, const SmellInstance* b) {
        const double sa = a->number(characteristic::size).value_or(0.0);
        const double sb = b->number(characteristic::size).value_or(0.0);
        if (sa != sb) return sa > sb;
        return a->id < b->id;
    });
    if (out.size() > 20) out.resize(20);
    return out;
}

AnalysisBundle assemble_bundle(std::string project_id, std::vector<VersionRecord> versions,
                               const std::vector<VersionGraphs>& graphs,
                               std::vector<std::vector<SmellInstance>> per_version,
                               std::vector<TemporalInstance> temporal, const EvolveOptions& options) {
    AnalysisBundle b;
    b.project_id = std::move(project_id);
    b.versions = std::move(versions);
    b.per_version = std::move(per_version);
    if (b.per_version.size() < b.versions.size()) b.per_version.resize(b.versions.size());
    b.temporal = std::move(temporal);

    for (const auto& g : graphs) {
        for (const auto* graph : {&g.files, &g.components}) {
            const auto m = compute_metrics(*graph, options.pagerank);
            for (DependencyGraph::Index i = 0; i < graph->node_count(); ++i) {
                b.metrics.push_back({graph->version_index(), graph->level(), graph->node(i).path, m[i]});
            }
        }
    }

    b.trends = classify_temporal_trends(b.temporal, options.trend);
    std::map<std::pair<std::string, std::string>, TrendTally> tallies;
    for (const auto& r : b.trends) {
        auto& t = tallies[{type_stratum(r.type, r.level), r.characteristic}];
        t.stratum = type_stratum(r.type, r.level);
        t.characteristic = r.characteristic;
        ++t.groups[r.label.group];
        ++t.total;
    }
    for (auto& [_, t] : tallies) b.trend_tallies.push_back(std::move(t));

    b.survival = survival_by_stratum(b.temporal);
    b.cooc_component = cooccurrence_matrix(b.per_version, Level::Component);
    b.cooc_file = cooccurrence_matrix(b.per_version, Level::File);
    const int k_max = options.k_max > 0 ? options.k_max : static_cast<int>(b.versions.size());
    b.precedence = precedence_matrices(b.temporal, k_max, options.precedence);
    b.transitions = shape_transitions(b.temporal);

    for (const auto& version : b.per_version) {
        std::map<std::string, int> counts;
        for (const auto& kind : precedence_kinds()) counts[kind] = 0;
        for (const auto& s : version) ++counts[type_stratum(s.type, s.level)];
        b.counts_over_time.push_back(std::move(counts));
    }

    if (!b.per_version.empty()) {
        std::map<std::string, HeatmapRow> rows;
        std::map<SmellType, int> column_totals;
        for (const auto& s : b.per_version.back()) {
            if (s.level != Level::Component) continue;
            for (const auto& c : s.affected()) {
                auto& row = rows[c];
                row.component = c;
                ++row.counts[s.type];
                ++column_totals[s.type];
            }
        }
        for (auto t : kSmellTypes) {
            if (column_totals[t] > 0) b.heatmap_types.push_back(t);
        }
        for (auto& [_, r] : rows) b.heatmap.push_back(std::move(r));
        auto total = [](const HeatmapRow& r) {
            int sum = 0;
            for (const auto& [_, c] : r.counts) sum += c;
            return sum;
        };
        std::stable_sort(b.heatmap.begin(), b.heatmap.end(),
                         [&](const HeatmapRow& x, const HeatmapRow& y) { return total(x) > total(y); });
    }

    if (!graphs.empty()) {
        b.latest_components = graphs.back().components;
        const auto fan = compute_fan(b.latest_components);
        int max_degree = 0;
        for (const auto& f : fan) max_degree = std::max({max_degree, f.fan_in, f.fan_out});
        if (!fan.empty()) {
            b.degree_histogram.resize(static_cast<std::size_t>(max_degree) + 1);
            for (int d = 0; d <= max_degree; ++d) b.degree_histogram[static_cast<std::size_t>(d)].degree = d;
            for (const auto& f : fan) {
                ++b.degree_histogram[static_cast<std::size_t>(f.fan_in)].in_nodes;
                ++b.degree_histogram[static_cast<std::size_t>(f.fan_out)].out_nodes;
            }
        }
    }
    return b;
}

// --- CSV ------------------------------------------------------------------

std::string trends_csv(const std::vector<TrendRecord>& trends) {
    std::string out = csv::row({"tid", "characteristic", "template", "group"});
    for (const auto& t : trends) {
        out += csv::row({t.tid, t.characteristic, std::string(to_string(t.label.tmpl)), std::string(to_string(t.label.group))});
    }
    return out;
}

std::string survival_csv(const std::vector<SurvivalCurve>& curves) {
    std::string out = csv::row({"stratum", "t", "n", "d", "S"});
    for (const auto& c : curves) {
        for (const auto& p : c.points) {
            out += csv::row({c.stratum, std::to_string(p.t), std::to_string(p.at_risk), std::to_string(p.deaths),
                             format_number(p.survival)});
        }
    }
    return out;
}

namespace {

std::string level_of_kind(const std::string& kind) {
    const auto slash = kind.find('/');
    return slash == std::string::npos ? std::string() : kind.substr(slash + 1);
}

std::string survival_median_csv(const std::vector<SurvivalCurve>& curves) {
    std::string out = csv::row({"stratum", "median"});
    for (const auto& c : curves) out += csv::row({c.stratum, c.median ? std::to_string(*c.median) : ""});
    return out;
}

std::string trend_summary_csv(const std::vector<TrendTally>& tallies) {
    std::string out = csv::row({"stratum", "characteristic", "group", "count", "total", "pct"});
    for (const auto& t : tallies) {
        for (auto g : {TrendGroup::Constant, TrendGroup::Increasing, TrendGroup::Decreasing}) {
            auto it = t.groups.find(g);
            const int count = it == t.groups.end() ? 0 : it->second;
            out += csv::row({t.stratum, t.characteristic, std::string(to_string(g)), std::to_string(count),
                             std::to_string(t.total), format_pct(100.0 * count / t.total)});
        }
    }
    return out;
}

std::string counts_csv(const AnalysisBundle& b) {
    std::string out = csv::row({"version_index", "version_label", "stratum", "count"});
    for (std::size_t v = 0; v < b.counts_over_time.size(); ++v) {
        const auto label = v < b.versions.size() ? b.versions[v].label : std::string();
        for (const auto& [stratum, count] : b.counts_over_time[v]) {
            out += csv::row({std::to_string(v), label, stratum, std::to_string(count)});
        }
    }
    return out;
}

std::string heatmap_csv(const AnalysisBundle& b) {
    std::string out = csv::row({"component", "type", "count"});
    for (const auto& r : b.heatmap) {
        for (auto t : b.heatmap_types) {
            auto it = r.counts.find(t);
            out += csv::row({r.component, std::string(to_string(t)), std::to_string(it == r.counts.end() ? 0 : it->second)});
        }
    }
    return out;
}

std::string degree_csv(const AnalysisBundle& b) {
    std::string out = csv::row({"degree", "in_nodes", "out_nodes"});
    for (const auto& d : b.degree_histogram) {
        out += csv::row({std::to_string(d.degree), std::to_string(d.in_nodes), std::to_string(d.out_nodes)});
    }
    return out;
}

}  // namespace

std::string cooc_csv(const CoocMatrix& m) {
    std::string out = csv::row({"row", "col", "pct", "row_total"});
    for (std::size_t i = 0; i < m.kinds.size(); ++i) {
        for (std::size_t j = 0; j < m.kinds.size(); ++j) {
            if (i == j || !m.pct[i][j]) continue;
            out += csv::row({m.kinds[i], m.kinds[j], format_pct(*m.pct[i][j]), std::to_string(m.totals[i])});
        }
    }
    return out;
}

std::string precedence_csv(const std::vector<CoocMatrix>& matrices) {
    std::string out = csv::row({"k", "row", "col", "pct"});
    for (const auto& m : matrices) {
        for (std::size_t i = 0; i < m.kinds.size(); ++i) {
            for (std::size_t j = 0; j < m.kinds.size(); ++j) {
                if (i == j || !m.pct[i][j] || level_of_kind(m.kinds[i]) != level_of_kind(m.kinds[j])) continue;
                out += csv::row({std::to_string(m.k.value_or(0)), m.kinds[i], m.kinds[j], format_pct(*m.pct[i][j])});
            }
        }
    }
    return out;
}

std::string shape_transitions_csv(const ShapeTransitions& t) {
    std::string out = csv::row({"record", "from", "to", "count", "total", "pct"});
    const int total = t.total_transitions();
    for (const auto& [pair, count] : t.transitions) {
        out += csv::row({"transition", std::string(to_string(pair.first)), std::string(to_string(pair.second)),
                         std::to_string(count), std::to_string(total), format_pct(100.0 * count / total)});
    }
    for (const auto& [shape, population] : t.population) {
        auto it = t.changed.find(shape);
        const int changed = it == t.changed.end() ? 0 : it->second;
        out += csv::row({"changed", std::string(to_string(shape)), "", std::to_string(changed), std::to_string(population),
                         format_pct(100.0 * changed / population)});
    }
    return out;
}

std::map<std::string, std::string> render_csv(const AnalysisBundle& b) {
    std::map<std::string, std::string> files;
    files["versions.csv"] = versions_csv(b.versions);
    files["smells.csv"] = smells_csv(b.per_version);
    files["characteristics.csv"] = characteristics_csv(b.per_version);
    files["metrics.csv"] = metrics_csv(b.metrics);
    files["temporal.csv"] = temporal_csv(b.temporal);
    files["trends.csv"] = trends_csv(b.trends);
    files["trend_summary.csv"] = trend_summary_csv(b.trend_tallies);
    files["survival.csv"] = survival_csv(b.survival);
    files["survival_median.csv"] = survival_median_csv(b.survival);
    files["cooc_component.csv"] = cooc_csv(b.cooc_component);
    files["cooc_file.csv"] = cooc_csv(b.cooc_file);
    files["precedence_k.csv"] = precedence_csv(b.precedence);
    files["shape_transitions.csv"] = shape_transitions_csv(b.transitions);
    files["counts_over_time.csv"] = counts_csv(b);
    files["heatmap.csv"] = heatmap_csv(b);
    files["degree_histogram.csv"] = degree_csv(b);
    return files;
}

void emit_csv(const AnalysisBundle& bundle, const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw Error(ErrorKind::IoError, "cannot create " + out_dir.string() + ": " + ec.message());
    for (const auto& [name, content] : render_csv(bundle)) write_file(out_dir / name, content);
}

// --- HTML -----------------------------------------------------------------

namespace {

std::string esc(std::string_view text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", v);
    return buf;
}

constexpr const char* kPalette[] = {"#d62728", "#1f77b4", "#ff7f0e", "#2ca02c", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

const char* type_colour(SmellType t) {
    return kPalette[static_cast<int>(t)];
}

void graph_overview(std::ostream& out, const AnalysisBundle& b) {
    out << "<section id=\"graph\"><h2>Component dependency graph</h2>\n";
    const auto& g = b.latest_components;
    if (g.empty()) {
        out << "<p class=\"placeholder\">No components.</p></section>\n";
        return;
    }
    // Layers: sinks at the bottom, each condensation node one above its highest dependency.
    const auto n = static_cast<std::uint32_t>(g.node_count());
    const auto sccs = tarjan_scc(n, [&](std::uint32_t v) { return g.successors(v); });
    std::vector<int> layer(n, 0);
    std::vector<std::size_t> scc_of(n);
    for (std::size_t s = 0; s < sccs.size(); ++s) {
        for (auto v : sccs[s]) scc_of[v] = s;
    }
    for (std::size_t s = 0; s < sccs.size(); ++s) {
        int best = 0;
        for (auto v : sccs[s]) {
            for (auto w : g.successors(v)) {
                if (scc_of[w] != s) best = std::max(best, layer[w] + 1);
            }
        }
        for (auto v : sccs[s]) layer[v] = best;
    }
    const int top = *std::max_element(layer.begin(), layer.end());
    std::vector<std::vector<std::uint32_t>> rows(static_cast<std::size_t>(top) + 1);
    for (std::uint32_t v = 0; v < n; ++v) rows[static_cast<std::size_t>(top - layer[v])].push_back(v);
    std::size_t widest = 1;
    for (const auto& r : rows) widest = std::max(widest, r.size());
    const double width = 160.0 * static_cast<double>(widest) + 40.0;
    const double height = 90.0 * static_cast<double>(rows.size()) + 30.0;
    std::vector<double> x(n), y(n);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const double step = width / static_cast<double>(rows[r].size() + 1);
        for (std::size_t i = 0; i < rows[r].size(); ++i) {
            x[rows[r][i]] = step * static_cast<double>(i + 1);
            y[rows[r][i]] = 40.0 + 90.0 * static_cast<double>(r);
        }
    }
    std::set<std::string> smelly;
    if (!b.per_version.empty()) {
        for (const auto& s : b.per_version.back()) {
            if (s.level == Level::Component) {
                for (const auto& a : s.affected()) smelly.insert(a);
            }
        }
    }
    out << "<svg class=\"chart\" width=\"" << num(width) << "\" height=\"" << num(height) << "\" viewBox=\"0 0 "
        << num(width) << ' ' << num(height) << "\">\n"
        << "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"16\" refY=\"5\" markerWidth=\"6\" markerHeight=\"6\" "
           "orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\" fill=\"#888\"/></marker></defs>\n";
    for (auto [a, c] : g.edges()) {
        out << "<line x1=\"" << num(x[a]) << "\" y1=\"" << num(y[a]) << "\" x2=\"" << num(x[c]) << "\" y2=\"" << num(y[c])
            << "\" stroke=\"#aaa\" marker-end=\"url(#arrow)\"/>\n";
    }
    for (std::uint32_t v = 0; v < n; ++v) {
        const bool hot = smelly.count(g.node(v).path) > 0;
        out << "<circle cx=\"" << num(x[v]) << "\" cy=\"" << num(y[v]) << "\" r=\"7\" fill=\""
            << (hot ? "#d62728" : "#4a90d9") << "\"/><text x=\"" << num(x[v]) << "\" y=\"" << num(y[v] - 11)
            << "\" text-anchor=\"middle\">" << esc(g.node(v).path) << "</text>\n";
    }
    out << "</svg>\n<p class=\"note\">Layered by dependency depth; red nodes take part in a component-level smell in "
           "the latest version.</p></section>\n";
}

void heatmap(std::ostream& out, const AnalysisBundle& b) {
    out << "<section id=\"heatmap\"><h2>Smells per component (latest version)</h2>\n";
    if (b.heatmap.empty()) {
        out << "<p class=\"placeholder\">No smells detected.</p></section>\n";
        return;
    }
    int max_count = 1;
    for (const auto& r : b.heatmap) {
        for (const auto& [_, c] : r.counts) max_count = std::max(max_count, c);
    }
    out << "<table class=\"heatmap\"><tr><th>component</th>";
    for (auto t : b.heatmap_types) out << "<th class=\"heat-col\" data-type=\"" << to_string(t) << "\">" << to_string(t) << "</th>";
    out << "</tr>\n";
    for (const auto& r : b.heatmap) {
        out << "<tr><td>" << esc(r.component) << "</td>";
        for (auto t : b.heatmap_types) {
            auto it = r.counts.find(t);
            const int c = it == r.counts.end() ? 0 : it->second;
            const double alpha = static_cast<double>(c) / max_count;
            char style[96];
            std::snprintf(style, sizeof style, "background:rgba(214,39,40,%.2f)", alpha);
            out << "<td style=\"" << style << "\">" << c << "</td>";
        }
        out << "</tr>\n";
    }
    out << "</table></section>\n";
}

struct Axes {
    double width = 640, height = 260, left = 50, right = 20, top = 20, bottom = 40;
    double x_max = 1, y_max = 1;
    double px(double v) const { return left + (width - left - right) * v / x_max; }
    double py(double v) const { return height - bottom - (height - top - bottom) * v / y_max; }
};

void draw_axes(std::ostream& out, const Axes& a, std::string_view x_label, std::string_view y_label) {
    out << "<line x1=\"" << num(a.left) << "\" y1=\"" << num(a.py(0)) << "\" x2=\"" << num(a.width - a.right) << "\" y2=\""
        << num(a.py(0)) << "\" stroke=\"#333\"/>"
        << "<line x1=\"" << num(a.left) << "\" y1=\"" << num(a.top) << "\" x2=\"" << num(a.left) << "\" y2=\""
        << num(a.py(0)) << "\" stroke=\"#333\"/>\n"
        << "<text x=\"" << num(a.width / 2) << "\" y=\"" << num(a.height - 6) << "\" text-anchor=\"middle\">"
        << esc(x_label) << "</text><text x=\"12\" y=\"" << num(a.top + 4) << "\">" << esc(y_label) << "</text>\n"
        << "<text x=\"" << num(a.left - 4) << "\" y=\"" << num(a.py(a.y_max) + 4) << "\" text-anchor=\"end\">"
        << format_number(a.y_max) << "</text><text x=\"" << num(a.left - 4) << "\" y=\"" << num(a.py(0) + 4)
        << "\" text-anchor=\"end\">0</text>"
        << "<text x=\"" << num(a.px(a.x_max)) << "\" y=\"" << num(a.py(0) + 16) << "\" text-anchor=\"middle\">"
        << format_number(a.x_max) << "</text>\n";
}

void counts_chart(std::ostream& out, const AnalysisBundle& b) {
    out << "<section id=\"counts\"><h2>Smells over time</h2>\n";
    std::map<std::string, std::vector<int>> series;
    int max_count = 0;
    for (const auto& counts : b.counts_over_time) {
        for (const auto& [stratum, c] : counts) {
            series[stratum].push_back(c);
            max_count = std::max(max_count, c);
        }
    }
    if (max_count == 0) {
        out << "<p class=\"placeholder\">No smells detected.</p></section>\n";
        return;
    }
    Axes a;
    a.x_max = std::max<double>(1, static_cast<double>(b.counts_over_time.size()) - 1);
    a.y_max = max_count;
    out << "<svg class=\"chart\" width=\"" << num(a.width) << "\" height=\"" << num(a.height) << "\">\n";
    draw_axes(out, a, "version", "instances");
    int colour = 0;
    int legend_y = 30;
    for (const auto& [stratum, values] : series) {
        if (std::all_of(values.begin(), values.end(), [](int v) { return v == 0; })) {
            ++colour;
            continue;
        }
        const char* c = kPalette[colour++ % 10];
        out << "<polyline fill=\"none\" stroke=\"" << c << "\" stroke-width=\"2\" points=\"";
        for (std::size_t v = 0; v < values.size(); ++v) out << num(a.px(static_cast<double>(v))) << ',' << num(a.py(values[v])) << ' ';
        out << "\"/><text x=\"" << num(a.width - 150) << "\" y=\"" << legend_y << "\" fill=\"" << c << "\">"
            << esc(stratum) << "</text>\n";
        legend_y += 14;
    }
    out << "</svg></section>\n";
}

void degree_chart(std::ostream& out, const AnalysisBundle& b) {
    out << "<section id=\"degrees\"><h2>Component in/out-degree histogram (latest version)</h2>\n";
    if (b.degree_histogram.empty()) {
        out << "<p class=\"placeholder\">No components.</p></section>\n";
        return;
    }
    Axes a;
    a.x_max = static_cast<double>(b.degree_histogram.size());
    int max_nodes = 1;
    for (const auto& d : b.degree_histogram) max_nodes = std::max({max_nodes, d.in_nodes, d.out_nodes});
    a.y_max = max_nodes;
    const double slot = (a.width - a.left - a.right) / a.x_max;
    out << "<svg class=\"chart\" width=\"" << num(a.width) << "\" height=\"" << num(a.height) << "\">\n";
    draw_axes(out, a, "degree", "components");
    for (const auto& d : b.degree_histogram) {
        const double x0 = a.px(d.degree);
        out << "<rect x=\"" << num(x0 + 2) << "\" y=\"" << num(a.py(d.in_nodes)) << "\" width=\"" << num(slot / 2 - 2)
            << "\" height=\"" << num(a.py(0) - a.py(d.in_nodes)) << "\" fill=\"#1f77b4\"><title>in-degree " << d.degree
            << ": " << d.in_nodes << "</title></rect>"
            << "<rect x=\"" << num(x0 + slot / 2) << "\" y=\"" << num(a.py(d.out_nodes)) << "\" width=\""
            << num(slot / 2 - 2) << "\" height=\"" << num(a.py(0) - a.py(d.out_nodes))
            << "\" fill=\"#ff7f0e\"><title>out-degree " << d.degree << ": " << d.out_nodes << "</title></rect>"
            << "<text x=\"" << num(x0 + slot / 2) << "\" y=\"" << num(a.py(0) + 14) << "\" text-anchor=\"middle\">"
            << d.degree << "</text>\n";
    }
    out << "<text x=\"" << num(a.width - 150) << "\" y=\"30\" fill=\"#1f77b4\">in-degree</text>"
        << "<text x=\"" << num(a.width - 150) << "\" y=\"44\" fill=\"#ff7f0e\">out-degree</text></svg></section>\n";
}

void survival_chart(std::ostream& out, const AnalysisBundle& b) {
    out << "<section id=\"survival\"><h2>Survival (Kaplan-Meier)</h2>\n";
    if (b.survival.empty()) {
        out << "<p class=\"placeholder\">No smells detected.</p></section>\n";
        return;
    }
    Axes a;
    a.height = 300;
    a.y_max = 1.0;
    int t_max = 1;
    for (const auto& c : b.survival) {
        for (const auto& p : c.points) t_max = std::max(t_max, p.t);
    }
    t_max = std::max<int>(t_max, static_cast<int>(b.versions.size()));
    a.x_max = t_max;
    out << "<svg class=\"chart\" width=\"" << num(a.width) << "\" height=\"" << num(a.height) << "\">\n";
    draw_axes(out, a, "versions survived (t)", "S(t)");
    out << "<line class=\"guide\" x1=\"" << num(a.px(0)) << "\" y1=\"" << num(a.py(0.5)) << "\" x2=\"" << num(a.px(t_max))
        << "\" y2=\"" << num(a.py(0.5)) << "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
    int colour = 0;
    int legend_y = 30;
    for (const auto& c : b.survival) {
        const char* col = kPalette[colour++ % 10];
        out << "<path fill=\"none\" stroke=\"" << col << "\" stroke-width=\"2\" d=\"M" << num(a.px(0)) << ','
            << num(a.py(1.0));
        double s = 1.0;
        for (const auto& p : c.points) {
            if (p.t == 0) continue;
            out << " H" << num(a.px(p.t)) << " V" << num(a.py(p.survival));
            s = p.survival;
        }
        out << " H" << num(a.px(t_max)) << "\"><title>" << esc(c.stratum) << "</title></path>\n";
        (void)s;
        if (c.median) {
            out << "<line class=\"median\" data-stratum=\"" << esc(c.stratum) << "\" data-median=\"" << *c.median
                << "\" x1=\"" << num(a.px(*c.median)) << "\" y1=\"" << num(a.py(0)) << "\" x2=\"" << num(a.px(*c.median))
                << "\" y2=\"" << num(a.py(0.5)) << "\" stroke=\"" << col << "\" stroke-dasharray=\"3 3\"/>"
                << "<text x=\"" << num(a.px(*c.median) + 3) << "\" y=\"" << num(a.py(0.5) - 4) << "\" fill=\"" << col
                << "\">t=" << *c.median << "</text>\n";
        }
        out << "<text x=\"" << num(a.width - 150) << "\" y=\"" << legend_y << "\" fill=\"" << col << "\">"
            << esc(c.stratum) << (c.median ? " (median " + std::to_string(*c.median) + ")" : std::string()) << "</text>\n";
        legend_y += 14;
    }
    out << "</svg></section>\n";
}

void matrix_table(std::ostream& out, const CoocMatrix& m, bool same_level_only) {
    out << "<table class=\"matrix\"><tr><th></th>";
    for (const auto& k : m.kinds) out << "<th>" << esc(k) << "</th>";
    out << "<th>instances</th></tr>\n";
    for (std::size_t i = 0; i < m.kinds.size(); ++i) {
        out << "<tr><th>" << esc(m.kinds[i]) << "</th>";
        for (std::size_t j = 0; j < m.kinds.size(); ++j) {
            const bool hidden = i == j || (same_level_only && level_of_kind(m.kinds[i]) != level_of_kind(m.kinds[j]));
            out << "<td>" << (hidden ? "-" : m.pct[i][j] ? format_pct(*m.pct[i][j]) : "") << "</td>";
        }
        out << "<td>" << m.totals[i] << "</td></tr>\n";
    }
    out << "</table>\n";
}

void characteristics_section(std::ostream& out, const AnalysisBundle& b) {
    out << "<section id=\"trends\"><h2>Characteristic trends (instances alive for at least " << kMinTrendAge
        << " versions)</h2>\n";
    if (b.trend_tallies.empty()) {
        out << "<p class=\"placeholder\">No temporal instances old enough to classify.</p>\n";
    } else {
        out << "<table><tr><th>smell</th><th>characteristic</th><th>constant %</th><th>increasing %</th>"
               "<th>decreasing %</th><th>instances</th></tr>\n";
        for (const auto& t : b.trend_tallies) {
            out << "<tr><td>" << esc(t.stratum) << "</td><td>" << esc(t.characteristic) << "</td>";
            for (auto g : {TrendGroup::Constant, TrendGroup::Increasing, TrendGroup::Decreasing}) {
                auto it = t.groups.find(g);
                out << "<td>" << format_pct(100.0 * (it == t.groups.end() ? 0 : it->second) / t.total) << "</td>";
            }
            out << "<td>" << t.total << "</td></tr>\n";
        }
        out << "</table>\n";
    }
    out << "</section>\n<section id=\"smells\"><h2>Largest smells (latest version)</h2>\n";
    const auto top = b.top_smells();
    if (top.empty()) {
        out << "<p class=\"placeholder\">No smells detected.</p></section>\n";
        return;
    }
    out << "<table><tr><th>type</th><th>level</th><th>id</th><th>artefacts</th><th>characteristics</th></tr>\n";
    for (const auto* s : top) {
        out << "<tr><td style=\"color:" << type_colour(s->type) << "\">" << to_string(s->type) << "</td><td>"
            << to_string(s->level) << "</td><td><code>" << s->id << "</code></td><td>";
        bool first_role = true;
        for (const auto& [name, members] : s->roles) {
            if (!first_role) out << "<br>";
            first_role = false;
            out << esc(name) << ": ";
            std::size_t shown = 0;
            for (const auto& m : members) {
                if (shown == 6) {
                    out << " &hellip;";
                    break;
                }
                out << (shown++ ? ", " : "") << esc(m);
            }
        }
        out << "</td><td>";
        bool first = true;
        for (const auto& [name, value] : s->characteristics) {
            out << (first ? "" : "<br>") << esc(name) << " = " << esc(format_char_value(value));
            first = false;
        }
        out << "</td></tr>\n";
    }
    out << "</table></section>\n";
}

}  // namespace

std::string render_html(const AnalysisBundle& b) {
    std::ostringstream out;
    out << "<!DOCTYPE html>\n<html lang=\"en\"><head><meta charset=\"utf-8\"><title>Architectural smells: "
        << esc(b.project_id) << "</title>\n<style>\n"
        << "body{font-family:sans-serif;margin:2em;color:#222}table{border-collapse:collapse;margin:0.5em 0}"
           "td,th{border:1px solid #ccc;padding:3px 8px;font-size:13px;text-align:left}"
           "svg.chart{border:1px solid #eee;margin:0.5em 0}svg text{font-size:11px}"
           ".placeholder{color:#888;font-style:italic}.note{color:#666;font-size:12px}\n"
        << "</style></head><body>\n<h1>Architectural smells: " << esc(b.project_id) << "</h1>\n";
    std::size_t total = 0;
    for (const auto& v : b.per_version) total += v.size();
    out << "<p>" << b.versions.size() << " versions analysed";
    if (!b.versions.empty()) out << " (" << esc(b.versions.front().label) << " to " << esc(b.versions.back().label) << ")";
    out << "; " << total << " smell instances; " << b.temporal.size() << " temporal instances.</p>\n";
    if (total == 0) out << "<p class=\"placeholder\">No smells detected.</p>\n";

    graph_overview(out, b);
    heatmap(out, b);
    counts_chart(out, b);
    degree_chart(out, b);
    survival_chart(out, b);
    characteristics_section(out, b);

    out << "<section id=\"cooccurrence\"><h2>Co-occurrence</h2>\n<h3>Component level</h3>\n";
    matrix_table(out, b.cooc_component, false);
    out << "<h3>File level</h3>\n";
    matrix_table(out, b.cooc_file, false);
    out << "</section>\n<section id=\"precedence\"><h2>Precedence</h2>\n";
    if (b.precedence.empty()) {
        out << "<p class=\"placeholder\">No versions.</p>\n";
    } else {
        for (const auto* m : {&b.precedence.front(), &b.precedence.back()}) {
            out << "<h3>k = " << m->k.value_or(0) << "</h3>\n";
            matrix_table(out, *m, true);
            if (b.precedence.size() == 1) break;
        }
    }
    out << "</section>\n<section id=\"shapes\"><h2>Cycle shape changes</h2>\n";
    const int transitions = b.transitions.total_transitions();
    if (b.transitions.population.empty()) {
        out << "<p class=\"placeholder\">No cycles detected.</p>\n";
    } else {
        out << "<table><tr><th>shape at birth</th><th>instances</th><th>changed</th><th>changed %</th></tr>\n";
        for (const auto& [shape, population] : b.transitions.population) {
            auto it = b.transitions.changed.find(shape);
            const int changed = it == b.transitions.changed.end() ? 0 : it->second;
            out << "<tr><td>" << to_string(shape) << "</td><td>" << population << "</td><td>" << changed << "</td><td>"
                << format_pct(100.0 * changed / population) << "</td></tr>\n";
        }
        out << "</table>\n";
        if (transitions > 0) {
            out << "<table><tr><th>from</th><th>to</th><th>count</th><th>%</th></tr>\n";
            for (const auto& [pair, count] : b.transitions.transitions) {
                out << "<tr><td>" << to_string(pair.first) << "</td><td>" << to_string(pair.second) << "</td><td>"
                    << count << "</td><td>" << format_pct(100.0 * count / transitions) << "</td></tr>\n";
            }
            out << "</table>\n";
        }
    }
    out << "</section>\n</body></html>\n";
    return out.str();
}

void render_html(const AnalysisBundle& bundle, const std::filesystem::path& out_path) {
    write_file(out_path, render_html(bundle));
}

std::string summary_json(const AnalysisBundle& b) {
    using nlohmann::json;
    auto rounded = [](double pct) { return std::round(pct * 100.0) / 100.0; };
    json j;
    j["project"] = b.project_id;
    j["versions"] = b.versions.size();
    json counts = json::object(), latest = json::object(), temporal = json::object();
    for (const auto& kind : precedence_kinds()) {
        counts[kind] = 0;
        latest[kind] = 0;
        temporal[kind] = 0;
    }
    for (const auto& v : b.per_version) {
        for (const auto& s : v) counts[type_stratum(s.type, s.level)] = counts[type_stratum(s.type, s.level)].get<int>() + 1;
    }
    if (!b.counts_over_time.empty()) {
        for (const auto& [k, c] : b.counts_over_time.back()) latest[k] = c;
    }
    for (const auto& t : b.temporal) {
        temporal[type_stratum(t.type, t.level)] = temporal[type_stratum(t.type, t.level)].get<int>() + 1;
    }
    j["instance_counts"] = counts;
    j["latest_version_counts"] = latest;
    j["temporal_instance_counts"] = temporal;
    json medians = json::object();
    for (const auto& c : b.survival) medians[c.stratum] = c.median ? json(*c.median) : json(nullptr);
    j["median_survival"] = medians;
    json trends = json::object();
    for (const auto& t : b.trend_tallies) {
        json groups = json::object();
        for (auto g : {TrendGroup::Constant, TrendGroup::Increasing, TrendGroup::Decreasing}) {
            auto it = t.groups.find(g);
            groups[std::string(to_string(g))] = rounded(100.0 * (it == t.groups.end() ? 0 : it->second) / t.total);
        }
        trends[t.stratum][t.characteristic] = groups;
    }
    j["trend_group_pct"] = trends;
    return j.dump(2) + "\n";
}

}  // namespace asmell
