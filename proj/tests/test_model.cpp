#include "doctest.h"

#include "fixtures.hpp"
#include "tugsched/error.hpp"
#include "tugsched/evaluation.hpp"
#include "tugsched/model.hpp"
#include "tugsched/routes.hpp"

using namespace tug;

TEST_CASE("smallest instance has four nodes") {
    const Instance inst = build_instance(fixture::uniform(1, 1, {}, 0));
    CHECK(inst.node_count() == 4);
    CHECK(inst.kind(0) == NodeKind::FOrigin);
    CHECK(inst.kind(1) == NodeKind::FDestination);
    CHECK(inst.kind(inst.source()) == NodeKind::Source);
    CHECK(inst.kind(inst.sink()) == NodeKind::Sink);
}

TEST_CASE("row two shape has 29 nodes in contiguous blocks") {
    const Instance inst = build_instance(fixture::uniform(3, 8, {10}, 10));
    CHECK(inst.node_count() == 29);
    CHECK(inst.e_destination(0) == 16);
    CHECK(inst.barge_node(0) == 17);
    CHECK(inst.barge_node(9) == 26);
    int counts[6] = {};
    for (NodeId i = 0; i < inst.node_count(); ++i) {
        ++counts[static_cast<int>(inst.kind(i))];
    }
    CHECK(counts[static_cast<int>(NodeKind::FOrigin)] == 8);
    CHECK(counts[static_cast<int>(NodeKind::FDestination)] == 8);
    CHECK(counts[static_cast<int>(NodeKind::EDestination)] == 1);
    CHECK(counts[static_cast<int>(NodeKind::Barge)] == 10);
}

TEST_CASE("build_instance rejects bad data") {
    SUBCASE("barge shortage") {
        CHECK_THROWS_AS(build_instance(fixture::uniform(1, 0, {8}, 5)), InconsistentError);
    }
    SUBCASE("inverted window") {
        auto d = fixture::uniform(1, 1, {}, 0);
        d.orders_f[0].origin_window = {5.0, 2.0};
        CHECK_THROWS_AS(build_instance(d), InconsistentError);
    }
    SUBCASE("matrix of wrong size") {
        auto d = fixture::uniform(1, 1, {}, 0);
        d.time_matrix.pop_back();
        CHECK_THROWS_AS(build_instance(d), SchemaError);
    }
    SUBCASE("no tugboats") {
        auto d = fixture::uniform(1, 1, {}, 0);
        d.tugboats.clear();
        CHECK_THROWS_AS(build_instance(d), SchemaError);
    }
}

TEST_CASE("complete looks at order pools only") {
    const Instance inst = build_instance(fixture::uniform(1, 2, {}, 0));
    Solution sol = empty_solution(inst);
    CHECK_FALSE(complete(sol));
    CHECK(sol.unassigned_f.size() == 2);
    const Instance none = build_instance(fixture::uniform(2, 0, {}, 0));
    Solution empty = empty_solution(none);
    CHECK(complete(empty));
    CHECK(loss(none, empty).total == 0.0);
}

TEST_CASE("pickup and delivery legs propagate arrivals and loads") {
    const Instance inst = build_instance(fixture::uniform(1, 1, {}, 0, 3.0));
    const Route r{{0, 1, -1}, {1, 1, -1}};
    const RouteSchedule rs = propagate_route(inst, r);
    CHECK(rs.visits[0].arrival == 3.0);
    CHECK(rs.visits[1].arrival == 6.0);
    CHECK(rs.visits[0].full_load == 1);
    CHECK(rs.visits[1].full_load == 0);
    CHECK(rs.finish == 9.0);
}

TEST_CASE("waiting for an idle barge") {
    auto d = fixture::uniform(1, 0, {1}, 1, 7.0);
    d.barges[0].idle_until = 10.0;
    const Instance inst = build_instance(d);
    const Route r{{inst.barge_node(0), 1, 0}, {inst.e_destination(0), 1, -1}};
    const RouteSchedule rs = propagate_route(inst, r);
    CHECK(rs.visits[0].arrival == 7.0);
    CHECK(rs.visits[0].stay == 3.0);
    CHECK(rs.visits[0].departure() == 10.0);
}

TEST_CASE("three barges collected then dropped together") {
    const Instance inst = build_instance(fixture::uniform(1, 0, {3}, 3));
    Route r;
    for (int b = 0; b < 3; ++b) {
        r.push_back({inst.barge_node(b), 1, 0});
    }
    r.push_back({inst.e_destination(0), 1, -1});
    const RouteSchedule rs = propagate_route(inst, r);
    CHECK(rs.visits[0].empty_load == 1);
    CHECK(rs.visits[1].empty_load == 2);
    CHECK(rs.visits[2].empty_load == 3);
    CHECK(rs.visits[3].empty_load == 0);
    CHECK(rs.visits[3].dropped == 3);
}

TEST_CASE("drop without barges is a negative load") {
    const Instance inst = build_instance(fixture::uniform(1, 1, {}, 0));
    const Route r{{1, 1, -1}, {0, 1, -1}};
    CHECK_THROWS_AS(propagate_route(inst, r), NegativeLoad);
    CHECK_NOTHROW(propagate_route(inst, r, true));
}

namespace {

// One typeF order; only the leg from the depot to the origin has length.
InstanceData one_arc() {
    auto d = fixture::uniform(1, 1, {}, 0, 0.0);
    const NodeId s = 2;
    d.time_matrix[s][0] = 2.0;
    d.distance_matrix[s][0] = 30.0;
    d.tugboats[0].cost_per_time = 10.0;
    d.tugboats[0].cost_per_distance = 1.0;
    return d;
}

}  // namespace

TEST_CASE("loss of one arc and of a late arrival") {
    Solution sol;
    sol.routes = {{{0, 1, -1}, {1, 1, -1}}};
    {
        const Instance inst = build_instance(one_arc());
        const LossBreakdown lb = loss(inst, sol);
        CHECK(lb.time_cost == 20.0);
        CHECK(lb.distance_cost == 30.0);
        CHECK(lb.total == 50.0);
    }
    {
        auto d = one_arc();
        d.orders_f[0].origin_window.latest = 1.0;
        d.penalties.time_window = 1000.0;
        const Instance inst = build_instance(d);
        const LossBreakdown lb = loss(inst, sol);
        CHECK(lb.tw_penalty == 1000.0);
        CHECK(lb.total == 1050.0);
    }
}

TEST_CASE("loss counts pooled orders and missing barges") {
    const Instance inst = build_instance(fixture::uniform(1, 2, {3}, 3));
    Solution sol = empty_solution(inst);
    Penalties pen;
    pen.unserved = 1.0;
    // Two typeF orders, one typeE order and its three barges.
    CHECK(loss(inst, sol, pen).unserved_penalty == 6.0);
}

TEST_CASE("working time overrun is penalised per hour") {
    auto d = fixture::uniform(1, 1, {}, 0, 3.0);
    d.tugboats[0].max_working_time = 8.0;
    d.penalties.working_hours = 100.0;
    const Instance inst = build_instance(d);
    Solution sol;
    sol.routes = {{{0, 1, -1}, {1, 1, -1}}};
    CHECK(loss(inst, sol).hours_penalty == doctest::Approx(100.0));
}

TEST_CASE("removing a deadline never increases loss") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto d = fixture::random_tiny(seed, fixture::TinyKind::FOnly);
        d.orders_f[0].destination_window.latest = 5.0;
        const Instance tight = build_instance(d);
        d.orders_f[0].destination_window.latest = kUnbounded;
        const Instance loose = build_instance(d);
        Solution sol = empty_solution(tight);
        for (int k = 0; k < tight.f_count(); ++k) {
            sol.routes[0].push_back({tight.f_origin(k), 1, -1});
            sol.routes[0].push_back({tight.f_destination(k), 1, -1});
        }
        sol.unassigned_f.clear();
        CHECK(loss(loose, sol).total <= loss(tight, sol).total);
    }
}

TEST_CASE("route helpers keep pools in step") {
    const Instance inst = build_instance(fixture::uniform(2, 1, {2}, 3));
    Solution sol = empty_solution(inst);
    sol.unassigned_f.clear();
    sol.unassigned_e.clear();
    sol.free_barges = {2};
    sol.routes[0] = {{0, 1, -1}, {inst.barge_node(0), 1, 0}, {inst.barge_node(1), 1, 0}, {inst.e_destination(0), 1, -1},
                     {1, 1, -1}};
    CHECK(complete(sol));
    const int dropped = remove_e_visit(inst, sol, 0, 3);
    CHECK(dropped == 2);
    CHECK(sol.free_barges == std::vector<int>{0, 1, 2});
    REQUIRE(sol.unassigned_e.size() == 1);
    CHECK(sol.unassigned_e[0].remaining == 2);
    remove_f_order(inst, sol, 0);
    CHECK(sol.routes[0].empty());
    CHECK(sol.unassigned_f == std::vector<int>{0});
    CHECK_THROWS_AS(remove_f_order(inst, sol, 0), NothingToRemove);
}

TEST_CASE("route hash separates routings") {
    Solution a;
    a.routes = {{{0, 1, -1}, {1, 1, -1}}, {}};
    Solution b;
    b.routes = {{}, {{0, 1, -1}, {1, 1, -1}}};
    CHECK(route_hash(a) != route_hash(b));
    CHECK(route_hash(a) == route_hash(Solution{a}));
}
