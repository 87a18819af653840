#include "tugsched/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "tugsched/error.hpp"

namespace tug {

namespace {

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f"};

std::vector<Coordinate> layout(const Instance& inst) {
    if (inst.has_coordinates()) {
        return inst.data().coordinates;
    }
    std::vector<Coordinate> out;
    const int n = inst.node_count() - 1;  // s and s' share the centre
    for (NodeId i = 0; i < inst.node_count(); ++i) {
        if (i >= inst.source()) {
            out.push_back({0.0, 0.0});
            continue;
        }
        const double angle = 2.0 * std::numbers::pi * i / std::max(n - 1, 1);
        out.push_back({std::cos(angle), std::sin(angle)});
    }
    return out;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace

RouteMap render_route_map(const Instance& inst, const Solution& sol) {
    if (static_cast<int>(sol.routes.size()) != inst.tugboat_count()) {
        throw MismatchedInstance("solution has " + std::to_string(sol.routes.size()) + " routes, instance has " +
                                 std::to_string(inst.tugboat_count()) + " tugboats");
    }
    for (const Route& r : sol.routes) {
        for (const RouteElement& el : r) {
            if (!inst.valid_node(el.node) || el.node >= inst.source()) {
                throw MismatchedInstance("node " + std::to_string(el.node) + " is not part of the instance");
            }
        }
    }
    const std::vector<Coordinate> pos = layout(inst);

    // Distinct ports with the nodes located there.
    std::map<std::pair<double, double>, std::vector<NodeId>> port_nodes;
    for (NodeId i = 0; i < inst.node_count(); ++i) {
        port_nodes[{pos[static_cast<std::size_t>(i)].lon, pos[static_cast<std::size_t>(i)].lat}].push_back(i);
    }

    nlohmann::json features = nlohmann::json::array();
    for (const auto& [ll, nodes] : port_nodes) {
        features.push_back({{"type", "Feature"},
                            {"geometry", {{"type", "Point"}, {"coordinates", {ll.first, ll.second}}}},
                            {"properties", {{"nodes", nodes}}}});
    }
    std::vector<std::vector<Coordinate>> lines;
    std::vector<int> line_tug;
    for (int p = 0; p < inst.tugboat_count(); ++p) {
        const Route& r = sol.routes[static_cast<std::size_t>(p)];
        if (r.empty()) {
            continue;
        }
        std::vector<Coordinate> line{pos[static_cast<std::size_t>(inst.source())]};
        nlohmann::json coords = nlohmann::json::array({{line[0].lon, line[0].lat}});
        for (const RouteElement& el : r) {
            const Coordinate& c = pos[static_cast<std::size_t>(el.node)];
            line.push_back(c);
            coords.push_back({c.lon, c.lat});
        }
        const Coordinate& end = pos[static_cast<std::size_t>(inst.sink())];
        line.push_back(end);
        coords.push_back({end.lon, end.lat});
        features.push_back({{"type", "Feature"},
                            {"geometry", {{"type", "LineString"}, {"coordinates", coords}}},
                            {"properties",
                             {{"tugboat", inst.tugboat(p).id},
                              {"stroke", kPalette[static_cast<std::size_t>(p) % std::size(kPalette)]}}}});
        lines.push_back(std::move(line));
        line_tug.push_back(p);
    }
    const nlohmann::json geo = {{"type", "FeatureCollection"}, {"features", features}};

    // SVG in a fixed 800x600 frame, north up.
    double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
    for (const Coordinate& c : pos) {
        lo_x = std::min(lo_x, c.lon);
        hi_x = std::max(hi_x, c.lon);
        lo_y = std::min(lo_y, c.lat);
        hi_y = std::max(hi_y, c.lat);
    }
    const double W = 800.0, H = 600.0, margin = 40.0;
    const double sx = (W - 2 * margin) / std::max(hi_x - lo_x, 1e-9);
    const double sy = (H - 2 * margin) / std::max(hi_y - lo_y, 1e-9);
    const double s = std::min(sx, sy);
    auto px = [&](const Coordinate& c) { return margin + (c.lon - lo_x) * s; };
    auto py = [&](const Coordinate& c) { return H - margin - (c.lat - lo_y) * s; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" viewBox=\"0 0 800 600\">\n";
    svg << "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
    for (std::size_t i = 0; i < lines.size(); ++i) {
        svg << "<polyline class=\"route\" data-tugboat=\"" << inst.tugboat(line_tug[i]).id << "\" fill=\"none\" stroke=\""
            << kPalette[static_cast<std::size_t>(line_tug[i]) % std::size(kPalette)]
            << "\" stroke-width=\"2\" points=\"";
        for (std::size_t k = 0; k < lines[i].size(); ++k) {
            svg << (k ? " " : "") << fmt(px(lines[i][k])) << ',' << fmt(py(lines[i][k]));
        }
        svg << "\"/>\n";
    }
    for (const auto& [ll, nodes] : port_nodes) {
        const Coordinate c{ll.first, ll.second};
        svg << "<circle class=\"port\" cx=\"" << fmt(px(c)) << "\" cy=\"" << fmt(py(c))
            << "\" r=\"5\" fill=\"black\"/>\n";
    }
    svg << "</svg>\n";
    return RouteMap{svg.str(), geo.dump(2) + "\n"};
}

}  // namespace tug
