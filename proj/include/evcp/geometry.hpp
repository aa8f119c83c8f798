#pragma once

#include <cmath>
#include <compare>

namespace evcp {

/// A node of the integer grid. One cell is one distance unit.
struct LatticePoint {
    int x = 0;
    int y = 0;

    friend constexpr auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

/// A continuous position inside the grid rectangle.
struct Point {
    double x = 0.0;
    double y = 0.0;

    constexpr Point() = default;
    constexpr Point(double px, double py) : x(px), y(py) {}
    constexpr explicit Point(LatticePoint p) : x(p.x), y(p.y) {}

    friend constexpr bool operator==(const Point&, const Point&) = default;
};

constexpr double squared_distance(Point a, Point b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

inline double distance(Point a, Point b) { return std::sqrt(squared_distance(a, b)); }

}  // namespace evcp
