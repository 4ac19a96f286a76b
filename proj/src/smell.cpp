#include "asmell/smell.hpp"

#include "asmell/error.hpp"
#include "asmell/util.hpp"

namespace asmell {

std::string_view to_string(SmellType type) {
    switch (type) {
        case SmellType::CD: return "CD";
        case SmellType::HL: return "HL";
        case SmellType::UD: return "UD";
        case SmellType::GC: return "GC";
    }
    return "?";
}

SmellType parse_smell_type(std::string_view text) {
    for (auto t : kSmellTypes) {
        if (to_string(t) == text) return t;
    }
    throw Error(ErrorKind::FormatError, "unknown smell type '" + std::string(text) + "'");
}

std::string_view to_string(Shape shape) {
    switch (shape) {
        case Shape::Tiny: return "tiny";
        case Shape::Circle: return "circle";
        case Shape::Chain: return "chain";
        case Shape::Star: return "star";
        case Shape::Clique: return "clique";
        case Shape::Multi: return "multi";
    }
    return "?";
}

Shape parse_shape(std::string_view text) {
    for (auto s : kShapes) {
        if (to_string(s) == text) return s;
    }
    throw Error(ErrorKind::FormatError, "unknown shape '" + std::string(text) + "'");
}

std::string_view to_string(DesignLevel level) {
    switch (level) {
        case DesignLevel::FileOnly: return "file";
        case DesignLevel::ComponentOnly: return "component";
        case DesignLevel::Both: return "both";
    }
    return "?";
}

std::string format_char_value(const CharValue& value) {
    if (const auto* d = std::get_if<double>(&value)) return format_number(*d);
    return std::get<std::string>(value);
}

std::set<std::string> SmellInstance::affected() const {
    std::set<std::string> all;
    for (const auto& [_, members] : roles) all.insert(members.begin(), members.end());
    return all;
}

const std::set<std::string>& SmellInstance::role_set(std::string_view name) const {
    static const std::set<std::string> empty;
    auto it = roles.find(name);
    return it == roles.end() ? empty : it->second;
}

std::optional<double> SmellInstance::number(std::string_view name) const {
    auto it = characteristics.find(name);
    if (it == characteristics.end()) return std::nullopt;
    if (const auto* d = std::get_if<double>(&it->second)) return *d;
    return std::nullopt;
}

std::optional<std::string> SmellInstance::tag(std::string_view name) const {
    auto it = characteristics.find(name);
    if (it == characteristics.end()) return std::nullopt;
    if (const auto* s = std::get_if<std::string>(&it->second)) return *s;
    return std::nullopt;
}

std::string make_instance_id(const SmellInstance& instance, std::string_view discriminator) {
    Fnv1a hash;
    hash.field(to_string(instance.type)).field(to_string(instance.level)).field(std::to_string(instance.version_index));
    for (const auto& [name, members] : instance.roles) {
        hash.field(name);
        for (const auto& m : members) hash.field(m);
    }
    hash.field(discriminator);
    return hash.hex();
}

}  // namespace asmell
