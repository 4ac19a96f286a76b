#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "asmell/smell.hpp"
#include "asmell/track.hpp"

namespace asmell {

// --- trend classification -------------------------------------------------

/// DTW with |x - y| local cost and symmetric match/insert/delete steps, no
/// window. Returns the cheapest path's cost divided by that path's length
/// (ties on cost resolved towards the shorter path). Throws TooShort.
double dtw_distance(std::span<const double> signal, std::span<const double> reference);

enum class Template { A, B, C, D, E, F, G };
enum class TrendGroup { Constant, Increasing, Decreasing };

std::string_view to_string(Template t);
std::string_view to_string(TrendGroup g);
TrendGroup group_of(Template t);

/// a=(m,m,m,m), b/e gradual rise/fall, c/f step in the middle, d/g late step.
std::array<std::array<double, 4>, 7> trend_templates(double low, double high);

struct TrendLabel {
    Template tmpl = Template::A;
    TrendGroup group = TrendGroup::Constant;
    double distance = 0.0;
};

struct TrendOptions {
    /// Signals whose range is at most this fraction of max(|h|, |l|) are
    /// treated as constant. 0 keeps only the exact h == l rule.
    double flat_tolerance = 0.0;
};

/// Nearest template by DTW, ties by template order. Throws TooShort below 3 points.
TrendLabel classify_trend(std::span<const double> series, const TrendOptions& options = {});

struct TrendRecord {
    std::string tid;
    SmellType type = SmellType::CD;
    Level level = Level::File;
    std::string characteristic;
    TrendLabel label;
};

inline constexpr int kMinTrendAge = 3;

/// Every numeric characteristic of every temporal instance of age >= 3.
std::vector<TrendRecord> classify_temporal_trends(std::span<const TemporalInstance> temporal,
                                                  const TrendOptions& options = {});

// --- survival -------------------------------------------------------------

struct Lifetime {
    int age = 1;
    bool censored = false;
};

struct SurvivalPoint {
    int t = 0;
    int at_risk = 0;
    int deaths = 0;
    double survival = 1.0;
};

struct SurvivalCurve {
    std::string stratum;
    std::vector<SurvivalPoint> points;  // t = 0 first, then each event time
    std::optional<int> median;          // smallest t with S(t) <= 0.5

    double at(int t) const;
};

/// Kaplan-Meier product-limit estimate over version counts. Throws EmptyInput.
SurvivalCurve km_estimator(std::span<const Lifetime> lifetimes, std::string stratum = {});

/// One curve per `<type>/<level>` and per `shape/<birth shape>` of CD chains.
std::vector<SurvivalCurve> survival_by_stratum(std::span<const TemporalInstance> temporal);

std::string type_stratum(SmellType type, Level level);

// --- co-occurrence and precedence -------------------------------------------

/// A role-resolved smell kind such as "HL.centre", or a whole type ("CD").
struct SmellKind {
    SmellType type;
    std::string role;  // role whose members stand for the kind
    std::string label;
};

std::vector<SmellKind> cooccurrence_kinds(Level level);

struct CoocMatrix {
    std::optional<int> k;  // precedence window; nullopt for co-occurrence
    Level level = Level::Component;
    std::vector<std::string> kinds;
    std::vector<int> totals;                        // instances per row kind
    std::vector<std::vector<int>> numerator;        // [row][col]
    std::vector<std::vector<int>> denominator;      // [row][col]
    std::vector<std::vector<std::optional<double>>> pct;  // blank on the diagonal and when denominator is 0
};

/// Percentage of row-kind instances sharing an artefact with some other
/// instance of the column kind in the same version.
CoocMatrix cooccurrence_matrix(const std::vector<std::vector<SmellInstance>>& per_version, Level level);

enum class PrecedenceCounting { Instances, Pairs };

/// Kinds are `<type>/<level>`. For each k in 1..K: share of row instances with
/// an overlapping column instance born 1..k versions later, among row instances
/// with an overlapping column instance born within k versions either way.
std::vector<CoocMatrix> precedence_matrices(std::span<const TemporalInstance> temporal, int max_k,
                                            PrecedenceCounting counting = PrecedenceCounting::Instances);

std::vector<std::string> precedence_kinds();

struct ShapeTransitions {
    std::map<std::pair<Shape, Shape>, int> transitions;  // adjacent-version changes
    std::map<Shape, int> population;                     // CD chains by birth shape
    std::map<Shape, int> changed;                        // of those, chains that ever change shape
    int total_transitions() const;
};

ShapeTransitions shape_transitions(std::span<const TemporalInstance> temporal);

}  // namespace asmell
