#include "asmell/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "asmell/error.hpp"

namespace asmell {

double dtw_distance(std::span<const double> signal, std::span<const double> reference) {
    if (signal.size() < 2 || reference.size() < 2) throw Error(ErrorKind::TooShort, "DTW needs at least 2 points per sequence");
    struct Cell {
        double cost;
        std::size_t length;
    };
    const std::size_t n = signal.size(), m = reference.size();
    const Cell unreachable{std::numeric_limits<double>::infinity(), 0};
    std::vector<Cell> prev(m + 1, unreachable), cur(m + 1, unreachable);
    prev[0] = {0.0, 0};
    auto better = [](const Cell& a, const Cell& b) {
        return a.cost < b.cost || (a.cost == b.cost && a.length < b.length);
    };
    for (std::size_t i = 1; i <= n; ++i) {
        cur[0] = unreachable;
        for (std::size_t j = 1; j <= m; ++j) {
            Cell best = prev[j - 1];
            if (better(prev[j], best)) best = prev[j];
            if (better(cur[j - 1], best)) best = cur[j - 1];
            cur[j] = {best.cost + std::abs(signal[i - 1] - reference[j - 1]), best.length + 1};
        }
        std::swap(prev, cur);
    }
    return prev[m].cost / static_cast<double>(prev[m].length);
}

std::string_view to_string(Template t) {
    static constexpr std::string_view names[] = {"a", "b", "c", "d", "e", "f", "g"};
    return names[static_cast<int>(t)];
}

std::string_view to_string(TrendGroup g) {
    switch (g) {
        case TrendGroup::Constant: return "constant";
        case TrendGroup::Increasing: return "increasing";
        case TrendGroup::Decreasing: return "decreasing";
    }
    return "?";
}

TrendGroup group_of(Template t) {
    switch (t) {
        case Template::A: return TrendGroup::Constant;
        case Template::B:
        case Template::C:
        case Template::D: return TrendGroup::Increasing;
        default: return TrendGroup::Decreasing;
    }
}

std::array<std::array<double, 4>, 7> trend_templates(double l, double h) {
    const double m = (h + l) / 2.0;
    const double third = (h - l) / 3.0;
    return {{
        {m, m, m, m},
        {l, l + third, l + 2.0 * third, h},
        {l, l, h, h},
        {l, l, l, h},
        {h, h - third, h - 2.0 * third, l},
        {h, h, l, l},
        {h, h, h, l},
    }};
}

TrendLabel classify_trend(std::span<const double> series, const TrendOptions& options) {
    if (series.size() < 3) throw Error(ErrorKind::TooShort, "trend classification needs at least 3 values");
    const auto [lo, hi] = std::minmax_element(series.begin(), series.end());
    const double l = *lo, h = *hi;
    const double scale = std::max(std::abs(h), std::abs(l));
    if (h == l || (options.flat_tolerance > 0.0 && h - l <= options.flat_tolerance * scale)) {
        return {Template::A, TrendGroup::Constant, 0.0};
    }
    // Compare on the unit scale so affine copies of a signal see identical
    // distances, and treat near-equal distances as ties.
    constexpr double tie = 1e-12;
    std::vector<double> unit;
    unit.reserve(series.size());
    for (double x : series) unit.push_back((x - l) / (h - l));
    const auto templates = trend_templates(0.0, 1.0);
    TrendLabel best{Template::A, TrendGroup::Constant, std::numeric_limits<double>::infinity()};
    for (std::size_t t = 0; t < templates.size(); ++t) {
        const double d = dtw_distance(unit, templates[t]);
        if (d < best.distance - tie) {
            best.tmpl = static_cast<Template>(t);
            best.distance = d;
        }
    }
    best.distance = best.distance < tie ? 0.0 : best.distance * (h - l);
    best.group = group_of(best.tmpl);
    return best;
}

std::vector<TrendRecord> classify_temporal_trends(std::span<const TemporalInstance> temporal,
                                                  const TrendOptions& options) {
    std::vector<TrendRecord> out;
    for (const auto& t : temporal) {
        if (t.age() < kMinTrendAge) continue;
        std::set<std::string, std::less<>> names;
        for (const auto& [name, value] : t.chain.front().characteristics) {
            if (std::holds_alternative<double>(value)) names.insert(name);
        }
        for (const auto& name : names) {
            std::vector<double> series;
            for (const auto& s : t.chain) {
                if (auto v = s.number(name)) series.push_back(*v);
            }
            if (series.size() != t.chain.size()) continue;
            out.push_back({t.tid, t.type, t.level, name, classify_trend(series, options)});
        }
    }
    return out;
}

double SurvivalCurve::at(int t) const {
    double s = 1.0;
    for (const auto& p : points) {
        if (p.t > t) break;
        s = p.survival;
    }
    return s;
}

SurvivalCurve km_estimator(std::span<const Lifetime> lifetimes, std::string stratum) {
    if (lifetimes.empty()) throw Error(ErrorKind::EmptyInput, "no lifetimes for stratum '" + stratum + "'");
    SurvivalCurve curve;
    curve.stratum = std::move(stratum);
    std::set<int> event_times;
    for (const auto& l : lifetimes) {
        if (l.age < 1) throw Error(ErrorKind::EmptyInput, "lifetime with age < 1");
        if (!l.censored) event_times.insert(l.age);
    }
    curve.points.push_back({0, static_cast<int>(lifetimes.size()), 0, 1.0});
    double s = 1.0;
    for (int t : event_times) {
        int at_risk = 0, deaths = 0;
        for (const auto& l : lifetimes) {
            at_risk += l.age >= t;
            deaths += !l.censored && l.age == t;
        }
        s *= 1.0 - static_cast<double>(deaths) / static_cast<double>(at_risk);
        curve.points.push_back({t, at_risk, deaths, s});
        if (!curve.median && s <= 0.5) curve.median = t;
    }
    return curve;
}

std::string type_stratum(SmellType type, Level level) {
    return std::string(to_string(type)) + "/" + std::string(to_string(level));
}

std::vector<SurvivalCurve> survival_by_stratum(std::span<const TemporalInstance> temporal) {
    std::vector<SurvivalCurve> out;
    for (auto type : kSmellTypes) {
        for (auto level : {Level::Component, Level::File}) {
            std::vector<Lifetime> lives;
            for (const auto& t : temporal) {
                if (t.type == type && t.level == level) lives.push_back({t.age(), t.censored()});
            }
            if (!lives.empty()) out.push_back(km_estimator(lives, type_stratum(type, level)));
        }
    }
    for (auto shape : kShapes) {
        std::vector<Lifetime> lives;
        for (const auto& t : temporal) {
            if (t.type != SmellType::CD) continue;
            const auto shapes = t.shapes();
            if (!shapes.empty() && shapes.front() == shape) lives.push_back({t.age(), t.censored()});
        }
        if (!lives.empty()) out.push_back(km_estimator(lives, "shape/" + std::string(to_string(shape))));
    }
    return out;
}

std::vector<SmellKind> cooccurrence_kinds(Level level) {
    if (level == Level::File) {
        return {{SmellType::CD, "member", "CD"},
                {SmellType::HL, "incoming", "HL.incoming"},
                {SmellType::HL, "centre", "HL.centre"},
                {SmellType::HL, "outgoing", "HL.outgoing"}};
    }
    return {{SmellType::CD, "member", "CD"},
            {SmellType::UD, "less_stable", "UD.less_stable"},
            {SmellType::UD, "centre", "UD.centre"},
            {SmellType::HL, "incoming", "HL.incoming"},
            {SmellType::HL, "centre", "HL.centre"},
            {SmellType::HL, "outgoing", "HL.outgoing"},
            {SmellType::GC, "member", "GC"}};
}

namespace {

bool intersects(const std::set<std::string>& a, const std::set<std::string>& b) {
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j) {
            ++i;
        } else if (*j < *i) {
            ++j;
        } else {
            return true;
        }
    }
    return false;
}

CoocMatrix empty_matrix(std::vector<std::string> kinds, Level level, std::optional<int> k) {
    CoocMatrix m;
    m.k = k;
    m.level = level;
    const auto n = kinds.size();
    m.kinds = std::move(kinds);
    m.totals.assign(n, 0);
    m.numerator.assign(n, std::vector<int>(n, 0));
    m.denominator.assign(n, std::vector<int>(n, 0));
    m.pct.assign(n, std::vector<std::optional<double>>(n));
    return m;
}

void fill_percentages(CoocMatrix& m) {
    for (std::size_t i = 0; i < m.kinds.size(); ++i) {
        for (std::size_t j = 0; j < m.kinds.size(); ++j) {
            if (i != j && m.denominator[i][j] > 0) {
                m.pct[i][j] = 100.0 * static_cast<double>(m.numerator[i][j]) / static_cast<double>(m.denominator[i][j]);
            }
        }
    }
}

}  // namespace

CoocMatrix cooccurrence_matrix(const std::vector<std::vector<SmellInstance>>& per_version, Level level) {
    const auto kinds = cooccurrence_kinds(level);
    std::vector<std::string> labels;
    for (const auto& k : kinds) labels.push_back(k.label);
    auto m = empty_matrix(labels, level, std::nullopt);
    const std::size_t nk = kinds.size();

    for (const auto& version : per_version) {
        std::vector<const SmellInstance*> instances;
        for (const auto& s : version) {
            if (s.level == level) instances.push_back(&s);
        }
        const auto n = static_cast<std::ptrdiff_t>(instances.size());
        // hits[x][i*nk + j]: instance x, seen as kind i, overlaps another instance of kind j.
        std::vector<std::vector<char>> hits(instances.size(), std::vector<char>(nk * nk, 0));
#pragma omp parallel for schedule(dynamic, 4)
        for (std::ptrdiff_t x = 0; x < n; ++x) {
            const auto& sx = *instances[static_cast<std::size_t>(x)];
            for (std::size_t i = 0; i < nk; ++i) {
                if (kinds[i].type != sx.type) continue;
                const auto& rx = sx.role_set(kinds[i].role);
                for (std::ptrdiff_t y = 0; y < n; ++y) {
                    if (y == x) continue;
                    const auto& sy = *instances[static_cast<std::size_t>(y)];
                    for (std::size_t j = 0; j < nk; ++j) {
                        if (j == i || kinds[j].type != sy.type) continue;
                        auto& hit = hits[static_cast<std::size_t>(x)][i * nk + j];
                        if (!hit && intersects(rx, sy.role_set(kinds[j].role))) hit = 1;
                    }
                }
            }
        }
        for (std::size_t x = 0; x < instances.size(); ++x) {
            for (std::size_t i = 0; i < nk; ++i) {
                if (kinds[i].type != instances[x]->type) continue;
                ++m.totals[i];
                for (std::size_t j = 0; j < nk; ++j) {
                    m.numerator[i][j] += hits[x][i * nk + j];
                    ++m.denominator[i][j];
                }
            }
        }
    }
    fill_percentages(m);
    return m;
}

std::vector<std::string> precedence_kinds() {
    std::vector<std::string> out;
    for (auto level : {Level::Component, Level::File}) {
        for (auto type : kSmellTypes) {
            if (level == Level::File && (type == SmellType::UD || type == SmellType::GC)) continue;
            out.push_back(type_stratum(type, level));
        }
    }
    return out;
}

std::vector<CoocMatrix> precedence_matrices(std::span<const TemporalInstance> temporal, int max_k,
                                            PrecedenceCounting counting) {
    const auto kinds = precedence_kinds();
    const std::size_t nk = kinds.size();
    const auto n = static_cast<std::ptrdiff_t>(temporal.size());
    std::vector<std::size_t> kind_of(temporal.size());
    for (std::size_t x = 0; x < temporal.size(); ++x) {
        const auto label = type_stratum(temporal[x].type, temporal[x].level);
        kind_of[x] = static_cast<std::size_t>(std::find(kinds.begin(), kinds.end(), label) - kinds.begin());
    }

    std::vector<std::vector<std::set<std::string>>> affected(temporal.size());
    for (std::size_t x = 0; x < temporal.size(); ++x) {
        for (const auto& s : temporal[x].chain) affected[x].push_back(s.affected());
    }

    // For every ordered pair that overlaps in some shared version, the birth gap.
    constexpr int none = std::numeric_limits<int>::max();
    std::vector<std::vector<int>> gap(temporal.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t x = 0; x < n; ++x) {
        const auto& tx = temporal[static_cast<std::size_t>(x)];
        auto& row = gap[static_cast<std::size_t>(x)];
        row.assign(temporal.size(), none);
        for (std::ptrdiff_t y = 0; y < n; ++y) {
            const auto& ty = temporal[static_cast<std::size_t>(y)];
            if (x == y || kind_of[static_cast<std::size_t>(x)] == kind_of[static_cast<std::size_t>(y)]) continue;
            bool overlap = false;
            for (std::size_t a = 0; a < tx.chain.size(); ++a) {
                const int v = tx.birth + static_cast<int>(a);
                if (v < ty.birth || v >= ty.birth + ty.age()) continue;
                if (intersects(affected[static_cast<std::size_t>(x)][a],
                               affected[static_cast<std::size_t>(y)][static_cast<std::size_t>(v - ty.birth)])) {
                    overlap = true;
                    break;
                }
            }
            if (overlap) row[static_cast<std::size_t>(y)] = ty.birth - tx.birth;
        }
    }

    std::vector<CoocMatrix> out;
    for (int k = 1; k <= max_k; ++k) {
        auto m = empty_matrix(kinds, Level::Component, k);
        for (std::size_t x = 0; x < temporal.size(); ++x) ++m.totals[kind_of[x]];
        for (std::size_t x = 0; x < temporal.size(); ++x) {
            const auto i = kind_of[x];
            std::vector<char> within(nk, 0), preceded(nk, 0);
            for (std::size_t y = 0; y < temporal.size(); ++y) {
                const int g = gap[x][y];
                if (g == none || std::abs(g) > k) continue;
                const auto j = kind_of[y];
                const bool precedes = g > 0;
                if (counting == PrecedenceCounting::Pairs) {
                    ++m.denominator[i][j];
                    m.numerator[i][j] += precedes;
                } else {
                    within[j] = 1;
                    preceded[j] |= static_cast<char>(precedes);
                }
            }
            if (counting == PrecedenceCounting::Instances) {
                for (std::size_t j = 0; j < nk; ++j) {
                    m.denominator[i][j] += within[j];
                    m.numerator[i][j] += preceded[j];
                }
            }
        }
        fill_percentages(m);
        out.push_back(std::move(m));
    }
    return out;
}

int ShapeTransitions::total_transitions() const {
    int total = 0;
    for (const auto& [_, c] : transitions) total += c;
    return total;
}

ShapeTransitions shape_transitions(std::span<const TemporalInstance> temporal) {
    ShapeTransitions out;
    for (const auto& t : temporal) {
        if (t.type != SmellType::CD) continue;
        const auto shapes = t.shapes();
        if (shapes.empty()) continue;
        ++out.population[shapes.front()];
        bool changed = false;
        for (std::size_t i = 1; i < shapes.size(); ++i) {
            if (shapes[i] != shapes[i - 1]) {
                ++out.transitions[{shapes[i - 1], shapes[i]}];
                changed = true;
            }
        }
        if (changed) ++out.changed[shapes.front()];
    }
    return out;
}

}  // namespace asmell
