#include "doctest.h"

#include <chrono>

#include "fixtures.hpp"
#include "tugsched/construction.hpp"
#include "tugsched/destroy.hpp"
#include "tugsched/error.hpp"
#include "tugsched/generator.hpp"
#include "tugsched/insertion.hpp"
#include "tugsched/repair.hpp"
#include "tugsched/routes.hpp"
#include "tugsched/validator.hpp"

using namespace tug;

namespace {

double routing(const Instance& inst, const Solution& sol) {
    const LossBreakdown lb = loss(inst, sol);
    return lb.total - lb.unserved_penalty;
}

int visits(const Instance& inst, const Solution& sol, int order) {
    int n = 0;
    for (const Route& r : sol.routes) {
        n += visits_on_route(inst, r, order);
    }
    return n;
}

}  // namespace

TEST_CASE("construction on an instance without orders") {
    const Instance inst = build_instance(fixture::uniform(3, 0, {}, 2));
    const Solution sol = construct(inst);
    CHECK(complete(sol));
    CHECK(routed_element_count(sol) == 0);
    CHECK(loss(inst, sol).total == 0.0);
}

TEST_CASE("construction of one typeF and one typeE order is clean") {
    fixture::Plane pl;
    pl.f_origin = {{1, 0}};
    pl.f_dest = {{2, 0}};
    pl.e_dest = {{0, 2}};
    pl.barges = {{0, 1}, {1, 1}};
    const Instance inst = build_instance(fixture::from_plane(pl, 2, {2}));
    const Solution sol = construct(inst);
    CHECK(complete(sol));
    CHECK(validate(inst, sol).empty());
}

TEST_CASE("greedy typeF insertion picks the cheaper tugboat") {
    const Instance inst = build_instance(fixture::uniform(2, 1, {}, 0));
    Inserter ins(inst, inst.penalties());
    Solution sol = empty_solution(inst);
    greedy_insert_f(ins, sol, 0);
    CHECK(sol.routes[0].size() == 2);
    CHECK(sol.routes[1].empty());

    auto d = fixture::uniform(2, 1, {}, 0);
    d.tugboats[0].cost_per_time = 5.0;
    const Instance dear = build_instance(d);
    Inserter ins2(dear, dear.penalties());
    Solution sol2 = empty_solution(dear);
    greedy_insert_f(ins2, sol2, 0);
    CHECK(sol2.routes[1].size() == 2);
}

TEST_CASE("working-time limit moves an order to an idle tugboat") {
    fixture::Plane pl;
    pl.f_origin = {{10, 0}, {0, 5}};
    pl.f_dest = {{10, 0.1}, {0, 5.1}};
    auto d = fixture::from_plane(pl, 2, {});
    d.tugboats[0].max_working_time = 21.0;
    const Instance inst = build_instance(d);
    Inserter ins(inst, inst.penalties());
    Solution sol = empty_solution(inst);
    greedy_insert_f(ins, sol, 0);
    REQUIRE(sol.routes[0].size() == 2);
    greedy_insert_f(ins, sol, 1);
    CHECK(sol.routes[1].size() == 2);
}

TEST_CASE("deadlines that cannot be met still get an insertion") {
    auto d = fixture::uniform(1, 1, {}, 0, 5.0);
    d.orders_f[0].destination_window.latest = 1.0;
    const Instance inst = build_instance(d);
    Inserter ins(inst, inst.penalties());
    Solution sol = empty_solution(inst);
    greedy_insert_f(ins, sol, 0);
    CHECK(sol.unassigned_f.empty());
    CHECK(loss(inst, sol).tw_penalty > 0.0);
}

TEST_CASE("typeF insertion raises loss by the evaluated delta") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const Instance inst = build_instance(fixture::random_tiny(seed, fixture::TinyKind::FOnly));
        Inserter ins(inst, inst.penalties());
        Solution sol = empty_solution(inst);
        while (!sol.unassigned_f.empty()) {
            const int k = sol.unassigned_f.front();
            const FCandidate c = ins.best_f(sol, k);
            const double before = routing(inst, sol);
            greedy_insert_f(ins, sol, k);
            CHECK(routing(inst, sol) - before == doctest::Approx(c.delta).epsilon(1e-7));
        }
    }
}

TEST_CASE("typeE visit plans follow the barge count") {
    SUBCASE("three barges fit in one visit") {
        const Instance inst = build_instance(fixture::uniform(2, 0, {3}, 4));
        Inserter ins(inst, inst.penalties());
        Solution sol = empty_solution(inst);
        greedy_insert_e(ins, sol, 0);
        CHECK(complete(sol));
        CHECK(visits(inst, sol, 0) == 1);
        CHECK(validate(inst, sol).empty());
    }
    SUBCASE("eight barges need two visits") {
        const Instance inst = build_instance(fixture::uniform(2, 0, {8}, 8));
        Inserter ins(inst, inst.penalties());
        Solution sol = empty_solution(inst);
        for (const PlanShape& s : ins.shapes(sol, 0, 8)) {
            CHECK(s.size() == 2);
        }
        greedy_insert_e(ins, sol, 0);
        CHECK(complete(sol));
        CHECK(visits(inst, sol, 0) == 2);
        CHECK(validate(inst, sol).empty());
    }
    SUBCASE("twelve barges use two tugboats") {
        const Instance inst = build_instance(fixture::uniform(3, 0, {12}, 12));
        Inserter ins(inst, inst.penalties());
        Solution sol = empty_solution(inst);
        greedy_insert_e(ins, sol, 0);
        CHECK(complete(sol));
        CHECK(visits(inst, sol, 0) == 3);
        CHECK(validate(inst, sol).empty());
    }
    SUBCASE("not enough free barges") {
        const Instance inst = build_instance(fixture::uniform(1, 0, {2}, 2));
        Inserter ins(inst, inst.penalties());
        Solution sol = empty_solution(inst);
        sol.free_barges = {1};
        CHECK_THROWS_AS(greedy_insert_e(ins, sol, 0), InsufficientBarges);
    }
}

TEST_CASE("six barges with capacity five: best of both two-visit plans") {
    fixture::Plane pl;
    pl.e_dest = {{5, 0}};
    for (int b = 0; b < 6; ++b) {
        pl.barges.push_back({static_cast<double>(b), b % 2 == 0 ? 1.0 : -1.0});
    }
    const Instance inst = build_instance(fixture::from_plane(pl, 2, {6}));
    Inserter ins(inst, inst.penalties());
    Solution sol = empty_solution(inst);
    const auto plans = ins.plans(sol, 0, 6);
    bool same_tug = false;
    bool split = false;
    double best = kUnbounded;
    for (const EPlan& p : plans) {
        REQUIRE(p.blocks.size() == 2);
        (p.blocks[0].tug == p.blocks[1].tug ? same_tug : split) = true;
        best = std::min(best, p.delta);
    }
    CHECK(same_tug);
    CHECK(split);
    const EPlan chosen = ins.best_e(sol, 0, 6);
    CHECK(chosen.delta <= best + 1e-9);
    Rng rng(3);
    RepairContext ctx(ins, rng);
    Solution out = sol;
    repair(RepairOp::EAGI, ctx, out);
    CHECK(complete(out));
    CHECK(validate(inst, out).empty());
    CHECK(routing(inst, out) == doctest::Approx(chosen.delta));
}

TEST_CASE("row five oceanic construction is fast and complete") {
    const Instance inst = build_instance(generate(5, Topology::Oceanic, 1));
    const auto t0 = std::chrono::steady_clock::now();
    const Solution sol = construct(inst);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(complete(sol));
    CHECK(secs < 5.0);
    CHECK(fixture::structural_violations(inst, sol).empty());
}

TEST_CASE("random typeF removal") {
    const Instance inst = build_instance(fixture::uniform(2, 3, {}, 0));
    Solution full = construct(inst);
    SUBCASE("one pair") {
        Solution sol = full;
        Rng rng(1);
        frr(inst, sol, 1, rng);
        CHECK(sol.unassigned_f.size() == 1);
        CHECK(routed_element_count(sol) == 4);
    }
    SUBCASE("step capped at routed orders") {
        Solution sol = full;
        Rng rng(1);
        frr(inst, sol, 5, rng);
        CHECK(sol.unassigned_f.size() == 3);
        CHECK(routed_element_count(sol) == 0);
        CHECK_THROWS_AS(frr(inst, sol, 1, rng), NothingToRemove);
    }
    SUBCASE("same seed, same removal") {
        Solution a = full;
        Solution b = full;
        Rng ra(9);
        Rng rb(9);
        frr(inst, a, 2, ra);
        frr(inst, b, 2, rb);
        CHECK(a == b);
    }
}

TEST_CASE("greedy typeF removal takes the dominant detour") {
    fixture::Plane pl;
    pl.f_origin = {{1, 0}, {1, 8}, {2, 0}};
    pl.f_dest = {{1.5, 0}, {1.5, 8}, {2.5, 0}};
    const Instance inst = build_instance(fixture::from_plane(pl, 1, {}));
    Solution sol = empty_solution(inst);
    sol.routes[0] = {{0, 1, -1}, {1, 1, -1}, {2, 1, -1}, {3, 1, -1}, {4, 1, -1}, {5, 1, -1}};
    sol.unassigned_f.clear();
    fgr(inst, inst.penalties(), sol, 1);
    CHECK(sol.unassigned_f == std::vector<int>{1});
    fgr(inst, inst.penalties(), sol, 5);
    CHECK(sol.unassigned_f.size() == 3);
}

TEST_CASE("greedy typeF removal breaks ties by order index") {
    const Instance inst = build_instance(fixture::uniform(1, 2, {}, 0));
    Solution sol = empty_solution(inst);
    sol.routes[0] = {{2, 1, -1}, {3, 1, -1}, {0, 1, -1}, {1, 1, -1}};
    sol.unassigned_f.clear();
    fgr(inst, inst.penalties(), sol, 1);
    CHECK(sol.unassigned_f == std::vector<int>{0});
}

TEST_CASE("typeE visit removal pools the visit's barges only") {
    // Order 0 needs two barges on one route; order 1 needs one on the same route.
    const Instance inst = build_instance(fixture::uniform(1, 0, {2, 1}, 3));
    const NodeId h0 = inst.e_destination(0);
    const NodeId h1 = inst.e_destination(1);
    Solution sol = empty_solution(inst);
    sol.routes[0] = {{inst.barge_node(0), 1, 0}, {inst.barge_node(2), 1, 1}, {inst.barge_node(1), 1, 0},
                     {h0, 1, -1},
                     {h1, 1, -1}};
    sol.unassigned_e.clear();
    sol.free_barges.clear();
    REQUIRE(validate(inst, sol).empty());
    Rng rng(2);
    Solution a = sol;
    err(inst, a, 2, rng);
    CHECK(routed_element_count(a) == 0);
    CHECK(fixture::conserved(inst, a));

    Solution b = sol;
    remove_e_visit(inst, b, 0, 3);
    CHECK(b.routes[0] == Route{{inst.barge_node(2), 1, 1}, {h1, 1, -1}});
    CHECK(b.free_barges == std::vector<int>{0, 1});
    CHECK(fixture::conserved(inst, b));
    CHECK(validate(inst, b).size() > 0);
}

TEST_CASE("greedy typeE removal takes the dominant detour") {
    fixture::Plane pl;
    pl.e_dest = {{1, 0}, {1, 9}};
    pl.barges = {{0.5, 0}, {0.5, 9}};
    const Instance inst = build_instance(fixture::from_plane(pl, 1, {1, 1}));
    Solution sol = empty_solution(inst);
    sol.routes[0] = {{inst.barge_node(0), 1, 0}, {inst.e_destination(0), 1, -1}, {inst.barge_node(1), 1, 1},
                     {inst.e_destination(1), 1, -1}};
    sol.unassigned_e.clear();
    sol.free_barges.clear();
    egr(inst, inst.penalties(), sol, 1);
    REQUIRE(sol.unassigned_e.size() == 1);
    CHECK(sol.unassigned_e[0].order == 1);
    egr(inst, inst.penalties(), sol, 4);
    CHECK(sol.unassigned_e.size() == 2);
    CHECK(routed_element_count(sol) == 0);
}

TEST_CASE("route removals") {
    const Instance inst = build_instance(fixture::uniform(3, 3, {}, 0));
    Solution sol = empty_solution(inst);
    sol.routes[0] = {{0, 1, -1}, {1, 1, -1}};
    sol.routes[1] = {{2, 1, -1}, {3, 1, -1}};
    sol.routes[2] = {{4, 1, -1}, {5, 1, -1}};
    sol.unassigned_f.clear();
    SUBCASE("random route") {
        Rng rng(4);
        rrr(inst, sol, 1, rng);
        CHECK(sol.unassigned_f.size() == 1);
        CHECK(routed_element_count(sol) == 4);
    }
    SUBCASE("step beyond route count empties all") {
        Rng rng(4);
        rrr(inst, sol, 7, rng);
        CHECK(routed_element_count(sol) == 0);
        CHECK(sol.unassigned_f.size() == 3);
        CHECK_THROWS_AS(rrr(inst, sol, 1, rng), NothingToRemove);
    }
    SUBCASE("equal costs go to the lowest index") {
        rgr(inst, inst.penalties(), sol, 1);
        CHECK(sol.routes[0].empty());
        CHECK(sol.unassigned_f == std::vector<int>{0});
    }
    SUBCASE("costliest route first") {
        sol.routes[2] = {{4, 1, -1}, {2, 1, -1}, {5, 1, -1}, {3, 1, -1}};
        sol.routes[1].clear();
        rgr(inst, inst.penalties(), sol, 1);
        CHECK(sol.routes[2].empty());
        CHECK(sol.unassigned_f.size() == 2);
        CHECK(fixture::conserved(inst, sol));
    }
}

TEST_CASE("default step is fifteen percent, at least one") {
    const Instance inst = build_instance(fixture::uniform(3, 20, {}, 0));
    const Solution sol = construct(inst);
    CHECK(default_step(inst, sol, DestroyOp::FRR) == 3);
    CHECK(default_step(inst, sol, DestroyOp::ERR) == 1);
}

TEST_CASE("regret selection on the hand example") {
    const std::vector<CandidateSummary> c{{0, 10.0, 50.0}, {1, 12.0, 13.0}};
    CHECK(select_greedy(c) == 0);
    CHECK(select_regret(c, false) == 0);
    CHECK(select_regret(c, true) == 1);
    const CandidateSummary lone{0, 5.0};
    CHECK(lone.regret() == kUnbounded);
    const std::vector<CandidateSummary> ties{{0, 3.0, 4.0}, {1, 2.0, 3.0}};
    CHECK(select_regret(ties, false) == 1);
}

TEST_CASE("regret repair inserts the pair with the larger regret") {
    // Order 0 is close to tugboat 0 only; order 1 is indifferent.
    fixture::Plane pl;
    pl.f_origin = {{1, 0}, {3, 3}};
    pl.f_dest = {{1, 0.1}, {3, 3.1}};
    auto d = fixture::from_plane(pl, 2, {});
    d.tugboats[1].cost_per_time = 10.0;
    const Instance inst = build_instance(d);
    Inserter ins(inst, inst.penalties());
    Rng rng(1);
    RepairContext ctx(ins, rng);
    Solution sol = empty_solution(inst);
    repair(RepairOp::FSGI, ctx, sol);
    CHECK(complete(sol));
    CHECK(validate(inst, sol).empty());
}

TEST_CASE("noise factor of one reproduces the noiseless twin") {
    const Instance inst = build_instance(generate(3, Topology::Inland, 5));
    Inserter ins(inst, inst.penalties());
    const Solution start = construct(inst);
    for (RepairOp op : {RepairOp::FNRGI, RepairOp::FNGI, RepairOp::FNSGI, RepairOp::ENAGI, RepairOp::ENASGI}) {
        for (DestroyOp dop : {DestroyOp::FRR, DestroyOp::ERR, DestroyOp::RRR}) {
            Solution a = start;
            Solution b = start;
            Rng r0(11);
            destroy(dop, inst, inst.penalties(), a, 2, r0);
            b = a;
            Rng ra(5);
            Rng rb(5);
            RepairContext ca(ins, ra);
            ca.noise = [] { return 1.0; };
            RepairContext cb(ins, rb);
            repair(op, ca, a);
            repair(noiseless_twin(op), cb, b);
            CHECK_MESSAGE(a == b, to_string(op));
        }
    }
}

TEST_CASE("one pooled entity makes same-family repairs agree") {
    const Instance inst = build_instance(generate(2, Topology::Oceanic, 3));
    Inserter ins(inst, inst.penalties());
    Solution base = construct(inst);
    Solution f = base;
    remove_f_order(inst, f, 4);
    Solution ref_f;
    for (std::size_t i = 0; i < std::size(kFRepairOps); ++i) {
        Solution s = f;
        Rng rng(7);
        RepairContext ctx(ins, rng);
        ctx.noise = [] { return 1.0; };
        repair(kFRepairOps[i], ctx, s);
        if (i == 0) {
            ref_f = s;
        }
        CHECK_MESSAGE(s == ref_f, to_string(kFRepairOps[i]));
    }
}

TEST_CASE("repairs refill what destroys removed") {
    const Instance inst = build_instance(generate(3, Topology::Oceanic, 2));
    Inserter ins(inst, inst.penalties());
    const Solution start = construct(inst);
    for (DestroyOp dop : kDestroyOps) {
        for (RepairOp rop : {RepairOp::FGI, RepairOp::EAGI, RepairOp::EARI}) {
            Solution s = start;
            Rng rng(21);
            destroy(dop, inst, inst.penalties(), s, 2, rng);
            CHECK(fixture::conserved(inst, s));
            RepairContext ctx(ins, rng);
            repair(rop, ctx, s);
            CHECK(complete(s));
            CHECK(fixture::conserved(inst, s));
            CHECK(fixture::structural_violations(inst, s).empty());
        }
    }
}

TEST_CASE("single candidate position makes every repair of a family agree") {
    const Instance inst = build_instance(fixture::uniform(1, 1, {1}, 1));
    Inserter ins(inst, inst.penalties());
    std::vector<Solution> outs;
    for (RepairOp op : kFRepairOps) {
        Solution s = empty_solution(inst);
        Rng rng(1);
        RepairContext ctx(ins, rng);
        repair(op, ctx, s);
        outs.push_back(s);
    }
    for (RepairOp op : kERepairOps) {
        Solution s = empty_solution(inst);
        Rng rng(1);
        RepairContext ctx(ins, rng);
        repair(op, ctx, s);
        outs.push_back(s);
    }
    for (const Solution& s : outs) {
        CHECK(complete(s));
        CHECK(validate(inst, s).empty());
    }
    for (std::size_t i = 1; i < std::size(kFRepairOps); ++i) {
        CHECK(outs[i] == outs[0]);
    }
    for (std::size_t i = std::size(kFRepairOps) + 1; i < outs.size(); ++i) {
        CHECK(outs[i] == outs[std::size(kFRepairOps)]);
    }
}
