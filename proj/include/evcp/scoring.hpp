#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "evcp/geometry.hpp"
#include "evcp/instance.hpp"

namespace evcp {

enum class Provenance { annealer, ga, hybrid };

std::string_view to_string(Provenance p);

/// New charger coordinates and the strategy that produced them.
struct Placement {
    std::vector<Point> coords;
    Provenance provenance = Provenance::annealer;

    friend bool operator==(const Placement&, const Placement&) = default;
};

struct ScoreReport {
    std::vector<double> per_run;
    double mean = 0.0;
    double variance = 0.0;
    double combined = 0.0;  ///< mean + variance; lower is better.
};

/// Sum over POIs of the Euclidean distance to the nearest charger, old or new.
/// Throws NoChargers when there are POIs but no chargers at all.
double run_score(std::span<const Point> new_chargers, const GridInstance& inst);
double run_score(const Placement& p, const GridInstance& inst);

/// Mean, population variance (divisor n) and their sum. Throws EmptyRuns.
ScoreReport aggregate(std::span<const double> per_run);

}  // namespace evcp
