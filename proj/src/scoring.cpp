#include "evcp/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "evcp/error.hpp"

namespace evcp {

std::string_view to_string(Provenance p) {
    switch (p) {
        case Provenance::annealer: return "annealer";
        case Provenance::ga: return "ga";
        case Provenance::hybrid: return "hybrid";
    }
    return "unknown";
}

double run_score(std::span<const Point> new_chargers, const GridInstance& inst) {
    if (new_chargers.empty() && inst.old_chargers.empty()) {
        throw NoChargers("no chargers to measure POI distances against");
    }
    double total = 0.0;
    for (const auto& poi_node : inst.pois) {
        const Point poi(poi_node);
        double best = std::numeric_limits<double>::infinity();
        for (const auto& c : inst.old_chargers) best = std::min(best, squared_distance(poi, Point(c)));
        for (const auto& c : new_chargers) best = std::min(best, squared_distance(poi, c));
        total += std::sqrt(best);
    }
    return total;
}

double run_score(const Placement& p, const GridInstance& inst) { return run_score(p.coords, inst); }

ScoreReport aggregate(std::span<const double> per_run) {
    if (per_run.empty()) {
        throw EmptyRuns("cannot aggregate zero runs");
    }
    ScoreReport r;
    r.per_run.assign(per_run.begin(), per_run.end());
    const double n = static_cast<double>(per_run.size());
    double sum = 0.0;
    for (double v : per_run) sum += v;
    r.mean = sum / n;
    double ss = 0.0;
    for (double v : per_run) ss += (v - r.mean) * (v - r.mean);
    r.variance = ss / n;
    r.combined = r.mean + r.variance;
    return r;
}

}  // namespace evcp
