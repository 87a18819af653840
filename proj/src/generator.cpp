#include "tugsched/generator.hpp"

#include <algorithm>

#include "tugsched/error.hpp"
#include "tugsched/rng.hpp"

namespace tug {

Topology parse_topology(const std::string& name) {
    if (name == "oceanic") {
        return Topology::Oceanic;
    }
    if (name == "inland") {
        return Topology::Inland;
    }
    throw UnknownPreset("unknown topology '" + name + "' (expected oceanic or inland)");
}

const char* to_string(Topology t) {
    return t == Topology::Oceanic ? "oceanic" : "inland";
}

Preset preset(int row, Topology topology) {
    static const Preset table[] = {{1, 13, 1, 8}, {2, 8, 1, 10}, {3, 5, 2, 12}, {4, 15, 2, 11}, {5, 20, 4, 5}};
    if (row >= 1 && row <= 5) {
        return table[row - 1];
    }
    if (row == 6) {
        return topology == Topology::Oceanic ? Preset{6, 30, 6, 6} : Preset{6, 30, 4, 9};
    }
    throw UnknownPreset("preset row " + std::to_string(row) + " does not exist (rows 1..6)");
}

const std::vector<Coordinate>& ports(Topology topology) {
    // Coastal ports spread over roughly 1500 km.
    static const std::vector<Coordinate> oceanic = {
        {122.60, 30.90}, {122.10, 29.90}, {121.80, 31.30}, {121.40, 37.55},
        {120.30, 36.05}, {119.50, 35.40}, {118.55, 39.00}, {117.75, 38.95},
    };
    // Ports along one river, about 500 km end to end.
    static const std::vector<Coordinate> inland = {
        {119.40, 32.20}, {118.75, 32.05}, {118.50, 31.70}, {118.35, 31.35},
        {117.80, 30.95}, {117.05, 30.50}, {115.95, 29.70},
    };
    return topology == Topology::Oceanic ? oceanic : inland;
}

InstanceData generate(int row, Topology topology, std::uint64_t seed, const GeneratorOptions& opts) {
    const Preset pr = preset(row, topology);
    const std::vector<Coordinate>& pts = ports(topology);
    const auto n_ports = pts.size();
    Rng rng(seed);

    auto other_port = [&](std::size_t not_this) {
        std::size_t p;
        do {
            p = 1 + rng.below(n_ports - 1);
        } while (p == not_this);
        return p;
    };

    std::vector<std::size_t> f_origin, f_dest, e_port, b_port;
    for (int k = 0; k < pr.f_orders; ++k) {
        const std::size_t o = other_port(0);
        f_origin.push_back(o);
        f_dest.push_back(other_port(o));
    }
    for (int h = 0; h < pr.e_orders; ++h) {
        e_port.push_back(other_port(0));
    }
    for (int h = 0; h < pr.e_orders; ++h) {
        for (int i = 0; i < pr.barges_per_e; ++i) {
            b_port.push_back(other_port(e_port[static_cast<std::size_t>(h)]));
        }
    }

    auto hours = [&](std::size_t a, std::size_t b) { return great_circle_km(pts[a], pts[b]) / opts.speed; };
    double horizon = 0.0;
    for (std::size_t k = 0; k < f_origin.size(); ++k) {
        horizon += hours(0, f_origin[k]) + hours(f_origin[k], f_dest[k]) + hours(f_dest[k], 0);
    }
    for (std::size_t i = 0; i < b_port.size(); ++i) {
        const std::size_t h = e_port[i / static_cast<std::size_t>(pr.barges_per_e)];
        horizon += hours(0, b_port[i]) + hours(b_port[i], h) + hours(h, 0);
    }
    horizon = std::max(horizon, 1.0);
    const double release = 0.15 * horizon;

    InstanceData d;
    d.capacity = opts.capacity;
    d.speed = opts.speed;
    for (int p = 0; p < opts.tugboats; ++p) {
        d.tugboats.push_back({"T" + std::to_string(p + 1), horizon, opts.cost_per_time, opts.cost_per_distance});
    }
    for (int k = 0; k < pr.f_orders; ++k) {
        const double e_origin = rng.uniform() * release;
        const double e_dest = rng.uniform() * release;
        d.orders_f.push_back({Window{e_origin, horizon}, Window{e_dest, horizon}});
    }
    for (int h = 0; h < pr.e_orders; ++h) {
        d.orders_e.push_back({pr.barges_per_e, Window{rng.uniform() * release, horizon}});
    }
    for (std::size_t i = 0; i < b_port.size(); ++i) {
        d.barges.push_back({rng.uniform() * release, Window{0.0, horizon}});
    }

    // One coordinate per logical node, in node order, then s and s'.
    for (std::size_t k = 0; k < f_origin.size(); ++k) {
        d.coordinates.push_back(pts[f_origin[k]]);
        d.coordinates.push_back(pts[f_dest[k]]);
    }
    for (std::size_t p : e_port) {
        d.coordinates.push_back(pts[p]);
    }
    for (std::size_t p : b_port) {
        d.coordinates.push_back(pts[p]);
    }
    d.coordinates.push_back(pts[0]);
    d.coordinates.push_back(pts[0]);
    return d;
}

}  // namespace tug
