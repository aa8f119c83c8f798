#include "evcp/instance.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "evcp/error.hpp"
#include "evcp/io.hpp"
#include "evcp/random.hpp"

namespace evcp {

namespace {

using nlohmann::json;

std::string describe(LatticePoint p) {
    return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
}

bool inside(const GridInstance& inst, LatticePoint p) {
    return p.x >= 0 && p.x < inst.width && p.y >= 0 && p.y < inst.height;
}

json points_to_json(const std::vector<LatticePoint>& pts) {
    json arr = json::array();
    for (const auto& p : pts) {
        arr.push_back(json::array({p.x, p.y}));
    }
    return arr;
}

const json& require(const json& doc, const char* field, std::string_view origin) {
    auto it = doc.find(field);
    if (it == doc.end()) {
        throw ParseError(std::string(origin) + ": missing field '" + field + "'");
    }
    return *it;
}

int require_int(const json& doc, const char* field, std::string_view origin) {
    const json& v = require(doc, field, origin);
    if (!v.is_number_integer()) {
        throw ParseError(std::string(origin) + ": field '" + field + "' must be an integer");
    }
    return v.get<int>();
}

std::vector<LatticePoint> require_points(const json& doc, const char* field,
                                         std::string_view origin) {
    const json& v = require(doc, field, origin);
    if (!v.is_array()) {
        throw ParseError(std::string(origin) + ": field '" + field + "' must be an array of [x,y]");
    }
    std::vector<LatticePoint> pts;
    pts.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const json& e = v[i];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
            !e[1].is_number_integer()) {
            throw ParseError(std::string(origin) + ": field '" + field + "'[" + std::to_string(i) +
                             "] must be an integer pair [x,y]");
        }
        pts.push_back({e[0].get<int>(), e[1].get<int>()});
    }
    return pts;
}

}  // namespace

void validate(const GridInstance& inst) {
    if (inst.width <= 0 || inst.height <= 0) {
        throw ValidationError("grid dimensions must be positive, got " + std::to_string(inst.width) +
                              "x" + std::to_string(inst.height));
    }
    std::set<LatticePoint> seen;
    auto check = [&](const std::vector<LatticePoint>& pts, const char* what) {
        for (const auto& p : pts) {
            if (!inside(inst, p)) {
                throw ValidationError(std::string(what) + " " + describe(p) + " lies outside the " +
                                      std::to_string(inst.width) + "x" +
                                      std::to_string(inst.height) + " grid");
            }
            if (!seen.insert(p).second) {
                throw ValidationError(std::string(what) + " " + describe(p) +
                                      " shares a node with another point");
            }
        }
    };
    check(inst.pois, "POI");
    check(inst.old_chargers, "old charger");

    const long long nodes = static_cast<long long>(inst.width) * inst.height;
    const long long free_nodes = nodes - static_cast<long long>(seen.size());
    if (inst.new_charger_count < 1) {
        throw ValidationError("new_charger_count must be at least 1");
    }
    if (inst.new_charger_count > free_nodes) {
        throw ValidationError("new_charger_count " + std::to_string(inst.new_charger_count) +
                              " exceeds the " + std::to_string(free_nodes) + " candidate sites");
    }
}

GridInstance generate_instance(const InstanceSpec& spec) {
    if (spec.width <= 0 || spec.height <= 0) {
        throw InfeasibleSpec("grid dimensions must be positive");
    }
    if (spec.n_poi < 0 || spec.n_old < 0) {
        throw InfeasibleSpec("point counts must be non-negative");
    }
    if (spec.n_new < 1) {
        throw InfeasibleSpec("at least one new charger is required");
    }
    const long long nodes = static_cast<long long>(spec.width) * spec.height;
    const long long occupied = static_cast<long long>(spec.n_poi) + spec.n_old;
    if (occupied > nodes) {
        throw InfeasibleSpec(std::to_string(occupied) + " points do not fit on " +
                             std::to_string(nodes) + " grid nodes");
    }
    if (occupied + spec.n_new > nodes) {
        throw InfeasibleSpec("only " + std::to_string(nodes - occupied) +
                             " free nodes for " + std::to_string(spec.n_new) + " new chargers");
    }

    // Partial Fisher-Yates over row-major node indices.
    std::vector<long long> order(static_cast<std::size_t>(nodes));
    std::iota(order.begin(), order.end(), 0LL);
    Rng rng = make_rng(spec.rng_seed, 0, StreamTag::instance);
    for (long long i = 0; i < occupied; ++i) {
        std::uniform_int_distribution<long long> pick(i, nodes - 1);
        std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(pick(rng))]);
    }

    auto node = [&](long long idx) {
        return LatticePoint{static_cast<int>(idx % spec.width), static_cast<int>(idx / spec.width)};
    };
    GridInstance inst;
    inst.width = spec.width;
    inst.height = spec.height;
    inst.new_charger_count = spec.n_new;
    for (long long i = 0; i < spec.n_poi; ++i) {
        inst.pois.push_back(node(order[static_cast<std::size_t>(i)]));
    }
    for (long long i = spec.n_poi; i < occupied; ++i) {
        inst.old_chargers.push_back(node(order[static_cast<std::size_t>(i)]));
    }
    return inst;
}

std::vector<LatticePoint> candidate_sites(const GridInstance& inst) {
    std::vector<char> occupied(static_cast<std::size_t>(inst.width) * inst.height, 0);
    auto mark = [&](const std::vector<LatticePoint>& pts) {
        for (const auto& p : pts) {
            if (inside(inst, p)) {
                occupied[static_cast<std::size_t>(p.y) * inst.width + p.x] = 1;
            }
        }
    };
    mark(inst.pois);
    mark(inst.old_chargers);

    std::vector<LatticePoint> sites;
    for (int y = 0; y < inst.height; ++y) {
        for (int x = 0; x < inst.width; ++x) {
            if (!occupied[static_cast<std::size_t>(y) * inst.width + x]) {
                sites.push_back({x, y});
            }
        }
    }
    if (sites.empty()) {
        throw NoCandidates("every grid node is occupied by a POI or an existing charger");
    }
    return sites;
}

std::string label(const GridInstance& inst) {
    std::ostringstream os;
    os << "EVCP(" << inst.pois.size() << "," << inst.old_chargers.size() << ","
       << inst.new_charger_count << ")";
    return os.str();
}

std::string to_json_text(const GridInstance& inst) {
    json doc = json::object();
    doc["width"] = inst.width;
    doc["height"] = inst.height;
    doc["pois"] = points_to_json(inst.pois);
    doc["old_chargers"] = points_to_json(inst.old_chargers);
    doc["new_charger_count"] = inst.new_charger_count;
    return doc.dump(2) + "\n";
}

GridInstance parse_instance(std::string_view text, std::string_view origin) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string(origin) + ": " + e.what());
    }
    if (!doc.is_object()) {
        throw ParseError(std::string(origin) + ": expected a single object");
    }
    GridInstance inst;
    inst.width = require_int(doc, "width", origin);
    inst.height = require_int(doc, "height", origin);
    inst.pois = require_points(doc, "pois", origin);
    inst.old_chargers = require_points(doc, "old_chargers", origin);
    inst.new_charger_count = require_int(doc, "new_charger_count", origin);
    try {
        validate(inst);
    } catch (const ValidationError& e) {
        throw ValidationError(std::string(origin) + ": " + e.what());
    }
    return inst;
}

void save_instance(const GridInstance& inst, const std::filesystem::path& path) {
    validate(inst);
    io::write_file_atomic(path, to_json_text(inst));
}

GridInstance load_instance(const std::filesystem::path& path) {
    return parse_instance(io::read_file(path), path.string());
}

}  // namespace evcp
