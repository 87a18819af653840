#pragma once

// One deliberately broken solution per constraint tag.

#include <optional>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "tugsched/evaluation.hpp"

namespace fixture {

using namespace tug;

struct ViolationCase {
    std::string tag;
    InstanceData data;
    Solution solution;
    std::optional<Schedule> schedule;  // checked in schedule mode when set
};

inline std::vector<ViolationCase> violation_cases() {
    // Two tugboats, typeF order on nodes 0 and 1, typeE order (node 2) needing
    // two barges, barges at nodes 3, 4, 5.
    const InstanceData base = uniform(2, 1, {2}, 3);
    constexpr NodeId O = 0, D = 1, H = 2, B0 = 3, B1 = 4, B2 = 5;
    Solution good;
    good.routes = {{{O, 1, -1}, {D, 1, -1}, {B0, 1, 0}, {B1, 1, 0}, {H, 1, -1}}, {}};
    good.free_barges = {2};
    const Schedule sched = propagate(build_instance(base), good);

    std::vector<ViolationCase> out;
    auto add = [&](std::string tag, InstanceData d, Solution s, std::optional<Schedule> sc = std::nullopt) {
        out.push_back({std::move(tag), std::move(d), std::move(s), std::move(sc)});
    };
    auto edited = [&](auto fn) {
        Schedule s = sched;
        fn(s);
        return s;
    };
    Solution s;
    InstanceData d;

    s = good; s.routes.pop_back(); add("C1", base, s);
    s = good; s.routes[1] = {{7, 1, -1}}; add("C2", base, s);
    s = good; s.routes[0].erase(s.routes[0].begin(), s.routes[0].begin() + 2); add("C3", base, s);
    s = good; s.routes[1] = {{D, 1, -1}}; add("C4", base, s);
    {
        Solution three;
        for (int p = 0; p < 3; ++p) {
            three.routes.push_back({{1 + p, 1, 0}, {0, 1, -1}});
        }
        add("C5", uniform(3, 0, {3}, 3), three);
    }
    s = good;
    s.routes[0] = {{O, 1, -1}, {D, 1, -1}, {B0, 1, 0}, {H, 1, -1}};
    s.routes[1] = {{B0, 1, 0}, {H, 1, -1}};
    add("C6", base, s);
    s = good; s.routes[0][2].order = -1; add("C7", base, s);
    s = good; s.routes[1] = {{42, 1, -1}}; add("C8", base, s);
    s = good; std::swap(s.routes[0][0], s.routes[0][1]); add("C9", base, s);
    s = good; s.routes[0].push_back({H, 2, -1}); add("C10", base, s);
    s = good; s.routes[0].erase(s.routes[0].begin() + 3); s.free_barges = {1, 2}; add("C11", base, s);
    s = good; s.routes[0].insert(s.routes[0].begin() + 2, {H, 1, -1}); s.routes[0].back().visit = 2;
    add("C12", base, s);
    s = good; s.routes[0] = {{O, 1, -1}, {D, 1, -1}, {B0, 1, 0}, {H, 2, -1}, {B1, 1, 0}, {H, 1, -1}};
    add("C13", base, s);
    {
        Solution thrice;
        thrice.routes = {{{1, 1, 0}, {0, 1, -1}, {2, 1, 0}, {0, 2, -1}, {3, 1, 0}, {0, 3, -1}}};
        add("C14", uniform(1, 0, {3}, 3), thrice);
    }
    d = base; d.tugboats[0].max_working_time = 3.0; add("C15", d, good);
    d = base; d.barges[0].idle_until = 10.0; add("C16", d, good, sched);
    d = base; d.capacity = 1; add("C17a", d, good);
    add("C17b", base, good, edited([](Schedule& x) { x.routes[0].visits[2].empty_load = -1; }));
    d = base; d.orders_f[0].origin_window.earliest = 5.0; add("C18", d, good, sched);
    d = base; d.orders_f[0].destination_window.latest = 1.5; add("C19", d, good);
    d = base; d.orders_e[0].window.earliest = 9.0; add("C20", d, good, sched);
    d = base; d.orders_e[0].window.latest = 2.0; add("C21", d, good);
    add("C22", base, good, edited([](Schedule& x) { x.routes[0].visits[1].arrival = 1.5; }));
    d = base; d.time_matrix[O][D] = 10.0;
    s = good; s.routes[0] = {{O, 1, -1}, {B0, 1, 0}, {D, 1, -1}, {B1, 1, 0}, {H, 1, -1}};
    add("C23", d, s);
    d = base; d.time_matrix[B0][H] = 10.0; add("C24", d, good);
    add("C25", base, good, edited([](Schedule& x) { x.routes[0].visits[0].full_load = 0; }));
    add("C26", base, good, edited([](Schedule& x) { x.routes[0].visits[1].full_load = 1; }));
    add("C27", base, good, edited([](Schedule& x) { x.routes[0].visits[3].empty_load = 1; }));
    add("C28", base, good, edited([](Schedule& x) { x.routes[0].start = 0.5; }));
    add("C29", base, good, edited([](Schedule& x) { x.routes[1].start_empty = 1; }));
    add("C30", base, good, edited([](Schedule& x) { x.routes[1].start_full = 1; }));
    s = good; s.routes[1] = {{B2, 1, 0}}; s.free_barges.clear(); add("C31", base, s);
    s = good; s.routes[0].erase(s.routes[0].begin() + 1); add("C32", base, s);
    return out;
}

/// Every tag the validator can emit.
inline std::vector<std::string> all_tags() {
    std::vector<std::string> tags;
    for (int i = 1; i <= 32; ++i) {
        if (i == 17) {
            tags.push_back("C17a");
            tags.push_back("C17b");
        } else {
            tags.push_back("C" + std::to_string(i));
        }
    }
    return tags;
}

}  // namespace fixture
