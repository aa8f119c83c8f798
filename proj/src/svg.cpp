#include "evcp/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace evcp::svg {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

void open_svg(std::ostringstream& os, double w, double h, std::string_view title) {
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w) << "\" height=\"" << num(h)
       << "\" viewBox=\"0 0 " << num(w) << " " << num(h) << "\" font-family=\"sans-serif\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
       << "<text x=\"" << num(w / 2) << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
       << escape(title) << "</text>\n";
}

// Marker shapes: 0 circle, 1 square, 2 diamond.
void marker(std::ostringstream& os, int shape, double cx, double cy, double r, const char* fill,
            std::string_view cls) {
    switch (shape) {
        case 0:
            os << "<circle class=\"" << cls << "\" cx=\"" << num(cx) << "\" cy=\"" << num(cy)
               << "\" r=\"" << num(r) << "\" fill=\"" << fill << "\"/>\n";
            break;
        case 1:
            os << "<rect class=\"" << cls << "\" x=\"" << num(cx - r) << "\" y=\"" << num(cy - r)
               << "\" width=\"" << num(2 * r) << "\" height=\"" << num(2 * r) << "\" fill=\"" << fill
               << "\"/>\n";
            break;
        default:
            os << "<polygon class=\"" << cls << "\" points=\"" << num(cx) << "," << num(cy - r * 1.3)
               << " " << num(cx + r * 1.3) << "," << num(cy) << " " << num(cx) << ","
               << num(cy + r * 1.3) << " " << num(cx - r * 1.3) << "," << num(cy) << "\" fill=\""
               << fill << "\" stroke=\"black\" stroke-width=\"0.5\"/>\n";
    }
}

}  // namespace

std::string placement_plot(const GridInstance& inst, const Placement& placement,
                           std::string_view title) {
    const double span = std::max(1, std::max(inst.width - 1, inst.height - 1));
    const double cell = std::clamp(560.0 / span, 2.0, 40.0);
    const double margin = 40.0;
    const double legend_w = 150.0;
    const double plot_w = (inst.width - 1) * cell;
    const double plot_h = (inst.height - 1) * cell;
    const double w = plot_w + 2 * margin + legend_w;
    const double h = plot_h + 2 * margin;
    const double r = std::clamp(cell * 0.3, 3.0, 8.0);
    auto px = [&](double x) { return margin + x * cell; };
    auto py = [&](double y) { return margin + plot_h - y * cell; };

    std::ostringstream os;
    open_svg(os, w, h, title);
    os << "<rect x=\"" << num(margin) << "\" y=\"" << num(margin) << "\" width=\"" << num(plot_w)
       << "\" height=\"" << num(plot_h) << "\" fill=\"none\" stroke=\"#999\"/>\n";
    if (cell >= 8.0) {
        os << "<g stroke=\"#eee\">\n";
        for (int x = 1; x < inst.width - 1; ++x) {
            os << "<line x1=\"" << num(px(x)) << "\" y1=\"" << num(py(0)) << "\" x2=\"" << num(px(x))
               << "\" y2=\"" << num(py(inst.height - 1)) << "\"/>\n";
        }
        for (int y = 1; y < inst.height - 1; ++y) {
            os << "<line x1=\"" << num(px(0)) << "\" y1=\"" << num(py(y)) << "\" x2=\""
               << num(px(inst.width - 1)) << "\" y2=\"" << num(py(y)) << "\"/>\n";
        }
        os << "</g>\n";
    }
    for (const auto& p : inst.pois) marker(os, 0, px(p.x), py(p.y), r, kPalette[0], "point poi");
    for (const auto& p : inst.old_chargers) {
        marker(os, 1, px(p.x), py(p.y), r, kPalette[1], "point old-charger");
    }
    for (const auto& p : placement.coords) marker(os, 2, px(p.x), py(p.y), r, kPalette[2], "point new-charger");

    const double lx = margin + plot_w + 20;
    const char* names[] = {"POI", "existing charger", "new charger"};
    for (int k = 0; k < 3; ++k) {
        const double ly = margin + 10 + 22.0 * k;
        marker(os, k, lx + 6, ly, 6, kPalette[k], "legend-marker");
        os << "<text x=\"" << num(lx + 18) << "\" y=\"" << num(ly + 4) << "\" font-size=\"12\">"
           << names[k] << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string history_plot(const std::vector<Series>& series, std::string_view title) {
    const double w = 640, h = 400, left = 70, right = 150, top = 40, bottom = 50;
    std::size_t len = 1;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& s : series) {
        len = std::max(len, s.values.size());
        for (double v : s.values) {
            if (std::isfinite(v)) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
    }
    if (!std::isfinite(lo)) lo = 0, hi = 1;
    if (hi <= lo) hi = lo + 1;
    const double pw = w - left - right, ph = h - top - bottom;
    auto px = [&](double g) { return left + pw * g / std::max<double>(1, len - 1); };
    auto py = [&](double v) { return top + ph * (1.0 - (v - lo) / (hi - lo)); };

    std::ostringstream os;
    open_svg(os, w, h, title);
    os << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(pw)
       << "\" height=\"" << num(ph) << "\" fill=\"none\" stroke=\"#999\"/>\n";
    os << "<text x=\"" << num(left + pw / 2) << "\" y=\"" << num(h - 12)
       << "\" text-anchor=\"middle\" font-size=\"12\">generation</text>\n";
    os << "<text x=\"" << num(left - 6) << "\" y=\"" << num(top + 4)
       << "\" text-anchor=\"end\" font-size=\"10\">" << num(hi) << "</text>\n";
    os << "<text x=\"" << num(left - 6) << "\" y=\"" << num(top + ph)
       << "\" text-anchor=\"end\" font-size=\"10\">" << num(lo) << "</text>\n";
    for (std::size_t k = 0; k < series.size(); ++k) {
        const char* color = kPalette[k % std::size(kPalette)];
        os << "<polyline class=\"series\" fill=\"none\" stroke=\"" << color << "\" points=\"";
        for (std::size_t g = 0; g < series[k].values.size(); ++g) {
            if (g) os << " ";
            os << num(px(static_cast<double>(g))) << "," << num(py(series[k].values[g]));
        }
        os << "\"/>\n";
        const double ly = top + 10 + 20.0 * k;
        os << "<line x1=\"" << num(w - right + 10) << "\" y1=\"" << num(ly) << "\" x2=\""
           << num(w - right + 30) << "\" y2=\"" << num(ly) << "\" stroke=\"" << color
           << "\" stroke-width=\"2\"/>\n"
           << "<text x=\"" << num(w - right + 35) << "\" y=\"" << num(ly + 4) << "\" font-size=\"12\">"
           << escape(series[k].name) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string bar_chart(const std::vector<std::string>& series_names, const std::vector<BarGroup>& groups,
                      std::string_view title) {
    const double group_w = 30.0 * std::max<std::size_t>(1, series_names.size()) + 20.0;
    const double left = 70, right = 150, top = 40, bottom = 90, ph = 300;
    const double pw = group_w * std::max<std::size_t>(1, groups.size());
    const double w = left + pw + right, h = top + ph + bottom;
    double hi = 0.0;
    for (const auto& g : groups) {
        for (double v : g.values) {
            if (std::isfinite(v)) hi = std::max(hi, v);
        }
    }
    if (hi <= 0.0) hi = 1.0;

    std::ostringstream os;
    open_svg(os, w, h, title);
    os << "<line x1=\"" << num(left) << "\" y1=\"" << num(top + ph) << "\" x2=\"" << num(left + pw)
       << "\" y2=\"" << num(top + ph) << "\" stroke=\"#333\"/>\n";
    os << "<text x=\"" << num(left - 6) << "\" y=\"" << num(top + 4)
       << "\" text-anchor=\"end\" font-size=\"10\">" << num(hi) << "</text>\n";
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        const double gx = left + gi * group_w + 10;
        for (std::size_t s = 0; s < groups[gi].values.size(); ++s) {
            const double v = groups[gi].values[s];
            if (!std::isfinite(v)) continue;
            const double bh = ph * v / hi;
            os << "<rect class=\"bar\" x=\"" << num(gx + 30.0 * s) << "\" y=\"" << num(top + ph - bh)
               << "\" width=\"26\" height=\"" << num(bh) << "\" fill=\""
               << kPalette[s % std::size(kPalette)] << "\"/>\n";
        }
        const double tx = gx + 15.0 * groups[gi].values.size();
        os << "<text x=\"" << num(tx) << "\" y=\"" << num(top + ph + 14)
           << "\" text-anchor=\"end\" font-size=\"10\" transform=\"rotate(-35 " << num(tx) << " "
           << num(top + ph + 14) << ")\">" << escape(groups[gi].label) << "</text>\n";
    }
    for (std::size_t s = 0; s < series_names.size(); ++s) {
        const double ly = top + 10 + 20.0 * s;
        os << "<rect x=\"" << num(w - right + 10) << "\" y=\"" << num(ly - 6)
           << "\" width=\"12\" height=\"12\" fill=\"" << kPalette[s % std::size(kPalette)] << "\"/>\n"
           << "<text x=\"" << num(w - right + 28) << "\" y=\"" << num(ly + 4) << "\" font-size=\"12\">"
           << escape(series_names[s]) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace evcp::svg
