#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "evcp/genetic.hpp"
#include "evcp/instance.hpp"
#include "evcp/scoring.hpp"

namespace evcp::svg {

/// Scatter of POIs (blue circles), existing chargers (red squares) and new
/// chargers (green diamonds). Every data marker carries class "point".
std::string placement_plot(const GridInstance& inst, const Placement& placement,
                           std::string_view title);

struct Series {
    std::string name;
    std::vector<double> values;
};

/// Line chart of best fitness against generation, one polyline per series.
std::string history_plot(const std::vector<Series>& series, std::string_view title);

struct BarGroup {
    std::string label;
    std::vector<double> values;  ///< one bar per series name
};

/// Grouped bar chart, lower-is-better scores per dataset.
std::string bar_chart(const std::vector<std::string>& series_names, const std::vector<BarGroup>& groups,
                      std::string_view title);

}  // namespace evcp::svg
