#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "evcp/geometry.hpp"

namespace evcp {

/// An EVCP problem: POIs and existing chargers on the nodes of a width x height
/// grid, plus the number of new chargers to place.
struct GridInstance {
    int width = 0;
    int height = 0;
    std::vector<LatticePoint> pois;
    std::vector<LatticePoint> old_chargers;
    int new_charger_count = 1;

    friend bool operator==(const GridInstance&, const GridInstance&) = default;
};

/// Parameters for a random EVCP(n_poi, n_old, n_new) dataset.
struct InstanceSpec {
    int width = 0;
    int height = 0;
    int n_poi = 0;
    int n_old = 0;
    int n_new = 1;
    std::uint64_t rng_seed = 0;
};

/// Throws ValidationError if any GridInstance invariant is violated.
void validate(const GridInstance& inst);

/// Samples distinct lattice nodes without replacement, POIs first, then old
/// chargers. Throws InfeasibleSpec if the points do not fit on the grid.
GridInstance generate_instance(const InstanceSpec& spec);

/// Every unoccupied node in row-major order. Throws NoCandidates when the grid
/// is full.
std::vector<LatticePoint> candidate_sites(const GridInstance& inst);

/// Dataset label in the EVCP(n,o,c) naming scheme.
std::string label(const GridInstance& inst);

std::string to_json_text(const GridInstance& inst);

/// Parses and validates an instance document. `origin` prefixes diagnostics.
GridInstance parse_instance(std::string_view text, std::string_view origin = "<memory>");

void save_instance(const GridInstance& inst, const std::filesystem::path& path);
GridInstance load_instance(const std::filesystem::path& path);

}  // namespace evcp
