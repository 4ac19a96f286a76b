#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "asmell/graph.hpp"

namespace asmell {

enum class SmellType { CD, HL, UD, GC };

inline constexpr SmellType kSmellTypes[] = {SmellType::CD, SmellType::HL, SmellType::UD, SmellType::GC};

std::string_view to_string(SmellType type);
SmellType parse_smell_type(std::string_view text);

enum class Shape { Tiny, Circle, Chain, Star, Clique, Multi };

inline constexpr Shape kShapes[] = {Shape::Tiny, Shape::Circle, Shape::Chain, Shape::Star, Shape::Clique, Shape::Multi};

std::string_view to_string(Shape shape);
Shape parse_shape(std::string_view text);

enum class DesignLevel { FileOnly, ComponentOnly, Both };

std::string_view to_string(DesignLevel level);

namespace role {
inline constexpr std::string_view member = "member";
inline constexpr std::string_view centre = "centre";
inline constexpr std::string_view incoming = "incoming";
inline constexpr std::string_view outgoing = "outgoing";
inline constexpr std::string_view less_stable = "less_stable";
}  // namespace role

namespace characteristic {
inline constexpr std::string_view size = "size";
inline constexpr std::string_view number_of_edges = "number_of_edges";
inline constexpr std::string_view centrality = "centrality";
inline constexpr std::string_view shape = "shape";
inline constexpr std::string_view design_level = "affected_design_level";
inline constexpr std::string_view strength = "strength";
inline constexpr std::string_view instability_gap = "instability_gap";
inline constexpr std::string_view affected_ratio = "affected_ratio";
inline constexpr std::string_view afferent_ratio = "afferent_ratio";
inline constexpr std::string_view efferent_ratio = "efferent_ratio";
inline constexpr std::string_view loc_density = "loc_density";
}  // namespace characteristic

/// Either a number or a tag (shape, design level).
using CharValue = std::variant<double, std::string>;

std::string format_char_value(const CharValue& value);

struct SmellInstance {
    std::string id;
    SmellType type = SmellType::CD;
    Level level = Level::File;
    int version_index = 0;
    std::string version_label;
    std::map<std::string, std::set<std::string>, std::less<>> roles;
    std::map<std::string, CharValue, std::less<>> characteristics;

    /// Union of all role sets.
    std::set<std::string> affected() const;
    const std::set<std::string>& role_set(std::string_view name) const;

    std::optional<double> number(std::string_view name) const;
    std::optional<std::string> tag(std::string_view name) const;
};

/// Stable id from type, level, version and role-tagged members. `discriminator`
/// separates instances with identical member sets (elementary cycles over the
/// same nodes in different orders).
std::string make_instance_id(const SmellInstance& instance, std::string_view discriminator = {});

}  // namespace asmell
