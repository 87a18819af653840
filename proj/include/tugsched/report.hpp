#pragma once

// Static route maps: one polyline per non-empty tugboat route over the node
// coordinates. Instances without coordinates are drawn on a circle.

#include <string>

#include "tugsched/model.hpp"

namespace tug {

struct RouteMap {
    std::string svg;
    std::string geojson;
};

/// Throws MismatchedInstance when the solution does not fit the instance.
RouteMap render_route_map(const Instance& inst, const Solution& sol);

}  // namespace tug
