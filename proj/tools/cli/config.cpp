#include "config.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <variant>

#include <json.hpp>

namespace bzwave::cli {

namespace {

using json = nlohmann::json;

using Slot = std::variant<std::optional<double>*, std::optional<long>*, std::optional<std::string>*>;

void assign(const std::string& key, const json& v, Slot slot) {
    if (auto* d = std::get_if<std::optional<double>*>(&slot)) {
        if (!v.is_number()) throw UsageError("config key '" + key + "' must be a number");
        **d = v.get<double>();
    } else if (auto* l = std::get_if<std::optional<long>*>(&slot)) {
        if (!v.is_number_integer()) throw UsageError("config key '" + key + "' must be an integer");
        **l = v.get<long>();
    } else {
        auto* s = std::get<std::optional<std::string>*>(slot);
        if (!v.is_string()) throw UsageError("config key '" + key + "' must be a string");
        *s = v.get<std::string>();
    }
}

void walk(const json& node, const std::string& prefix, const std::map<std::string, Slot>& slots) {
    if (!node.is_object()) {
        throw UsageError("config " + (prefix.empty() ? std::string("document") : "key '" + prefix + "'") +
                         " must be an object");
    }
    for (const auto& [k, v] : node.items()) {
        const std::string key = prefix.empty() ? k : prefix + "." + k;
        if (auto it = slots.find(key); it != slots.end()) {
            assign(key, v, it->second);
            continue;
        }
        bool is_group = false;
        for (const auto& [name, slot] : slots) {
            if (name.rfind(key + ".", 0) == 0) {
                is_group = true;
                break;
            }
        }
        if (!is_group) throw UsageError("unknown config key '" + key + "'");
        walk(v, key, slots);
    }
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw UsageError(std::string("config is not valid JSON: ") + e.what());
    }
    RunConfig c;
    const std::map<std::string, Slot> slots = {
        {"params.r", &c.r},
        {"params.b", &c.b},
        {"params.h", &c.h},
        {"c", &c.c},
        {"super", &c.super_kind},
        {"sweep", &c.sweep},
        {"front_file", &c.front_file},
        {"grid.min", &c.grid_min},
        {"grid.max", &c.grid_max},
        {"grid.points", &c.grid_points},
        {"iter.tol", &c.tol},
        {"iter.max_iter", &c.max_iter},
        {"iter.B", &c.B},
        {"sim.length", &c.length},
        {"sim.dx", &c.dx},
        {"sim.dt", &c.dt},
        {"sim.t_end", &c.t_end},
        {"sim.ic", &c.ic},
        {"sim.track_level", &c.track_level},
        {"sim.transient_cut", &c.transient_cut},
        {"output.path", &c.out},
        {"output.format", &c.format},
    };
    walk(doc, "", slots);
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

namespace {

template <typename T>
void take(std::optional<T>& dst, const std::optional<T>& flag, const std::optional<T>& file) {
    dst = flag ? flag : file;
}

}  // namespace

RunConfig merge(const RunConfig& f, const RunConfig& c) {
    RunConfig m;
    take(m.r, f.r, c.r);
    take(m.b, f.b, c.b);
    take(m.h, f.h, c.h);
    take(m.c, f.c, c.c);
    take(m.super_kind, f.super_kind, c.super_kind);
    take(m.sweep, f.sweep, c.sweep);
    take(m.front_file, f.front_file, c.front_file);
    take(m.grid_min, f.grid_min, c.grid_min);
    take(m.grid_max, f.grid_max, c.grid_max);
    take(m.grid_points, f.grid_points, c.grid_points);
    take(m.tol, f.tol, c.tol);
    take(m.B, f.B, c.B);
    take(m.max_iter, f.max_iter, c.max_iter);
    take(m.length, f.length, c.length);
    take(m.dx, f.dx, c.dx);
    take(m.dt, f.dt, c.dt);
    take(m.t_end, f.t_end, c.t_end);
    take(m.track_level, f.track_level, c.track_level);
    take(m.transient_cut, f.transient_cut, c.transient_cut);
    take(m.ic, f.ic, c.ic);
    take(m.out, f.out, c.out);
    take(m.format, f.format, c.format);
    return m;
}

}  // namespace bzwave::cli
