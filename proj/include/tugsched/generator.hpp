#pragma once

// Seeded instances at the six experiment scales for two port topologies.

#include <cstdint>
#include <string>
#include <vector>

#include "tugsched/model.hpp"

namespace tug {

enum class Topology { Oceanic, Inland };

Topology parse_topology(const std::string& name);  // "oceanic" | "inland"
const char* to_string(Topology t);

struct Preset {
    int row = 1;
    int f_orders = 0;
    int e_orders = 0;
    int barges_per_e = 0;  // average empty barges per typeE order
};

/// Throws UnknownPreset for rows outside 1..6.
Preset preset(int row, Topology topology);

/// Synthetic port coordinates; port 0 hosts s and s'.
const std::vector<Coordinate>& ports(Topology topology);

struct GeneratorOptions {
    int tugboats = 3;
    int capacity = 5;
    double cost_per_time = 100.0;
    double cost_per_distance = 1.0;
    double speed = 20.0;
};

/// Each typeE order requires `barges_per_e` barges and the same number of
/// barges is supplied per order. All deadlines, and every working-time
/// limit, equal a horizon long enough to serve each order by a separate round
/// trip from port 0; earliest times and barge idle times are drawn from the
/// first 15% of that horizon.
InstanceData generate(int row, Topology topology, std::uint64_t seed, const GeneratorOptions& opts = {});

}  // namespace tug
