#include "doctest.h"

#include <algorithm>

#include "fixtures.hpp"
#include "tugsched/evaluation.hpp"
#include "tugsched/validator.hpp"

using namespace tug;

namespace {

bool has(const std::vector<Violation>& v, const std::string& tag) {
    return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.constraint == tag; });
}

// Two tugboats, one typeF order (nodes 0, 1), one typeE order needing two
// barges (node 2), barges at nodes 3, 4, 5. Unit travel times.
InstanceData base_data() { return fixture::uniform(2, 1, {2}, 3); }

constexpr NodeId O = 0, D = 1, H = 2, B0 = 3, B1 = 4, B2 = 5;

Solution base_solution() {
    Solution sol;
    sol.routes = {{{O, 1, -1}, {D, 1, -1}, {B0, 1, 0}, {B1, 1, 0}, {H, 1, -1}}, {}};
    sol.free_barges = {2};
    return sol;
}

std::vector<Violation> check(const Solution& sol, const InstanceData& d = base_data()) {
    return validate(build_instance(d), sol);
}

// Schedule derived on the base instance, checked against `d`.
std::vector<Violation> check_schedule(const Solution& sol, const InstanceData& d,
                                      void (*edit)(Schedule&) = nullptr) {
    Schedule s = propagate(build_instance(base_data()), sol);
    if (edit != nullptr) {
        edit(s);
    }
    return validate(build_instance(d), sol, s);
}

}  // namespace

TEST_CASE("hand-built feasible solution passes") {
    const Instance inst = build_instance(base_data());
    CHECK(validate(inst, base_solution()).empty());
    CHECK(validate(inst, base_solution(), propagate(inst, base_solution())).empty());
}

TEST_CASE("second tugboat may finish the typeE order") {
    Solution sol = base_solution();
    sol.routes[0] = {{O, 1, -1}, {D, 1, -1}, {B0, 1, 0}, {H, 1, -1}};
    sol.routes[1] = {{B1, 1, 0}, {H, 1, -1}};
    CHECK(check(sol).empty());
}

TEST_CASE("C1 route count and virtual origin") {
    Solution sol = base_solution();
    sol.routes.pop_back();
    CHECK(has(check(sol), "C1"));
    sol = base_solution();
    sol.routes[1] = {{6, 1, -1}};
    CHECK(has(check(sol), "C1"));
}

TEST_CASE("C2 virtual sink inside a route") {
    Solution sol = base_solution();
    sol.routes[1] = {{7, 1, -1}};
    CHECK(has(check(sol), "C2"));
}

TEST_CASE("C3 typeF order not served") {
    Solution sol = base_solution();
    sol.routes[0].erase(sol.routes[0].begin(), sol.routes[0].begin() + 2);
    CHECK(has(check(sol), "C3"));
}

TEST_CASE("C4 destination served twice") {
    Solution sol = base_solution();
    sol.routes[1] = {{D, 1, -1}};
    CHECK(has(check(sol), "C4"));
}

TEST_CASE("C5 typeE order needs one or two tugboats") {
    SUBCASE("unserved") {
        Solution sol = base_solution();
        sol.routes[0].resize(2);
        sol.free_barges = {0, 1, 2};
        CHECK(has(check(sol), "C5"));
    }
    SUBCASE("three tugboats") {
        auto d = fixture::uniform(3, 0, {3}, 3);
        Solution sol;
        for (int p = 0; p < 3; ++p) {
            sol.routes.push_back({{1 + p, 1, 0}, {0, 1, -1}});
        }
        const auto v = check(sol, d);
        CHECK(has(v, "C5"));
        CHECK_FALSE(has(v, "C11"));
    }
}

TEST_CASE("C6 barge used twice") {
    Solution sol = base_solution();
    sol.routes[0] = {{O, 1, -1}, {D, 1, -1}, {B0, 1, 0}, {H, 1, -1}};
    sol.routes[1] = {{B0, 1, 0}, {H, 1, -1}};
    CHECK(has(check(sol), "C6"));
}

TEST_CASE("C7 barge tags") {
    Solution sol = base_solution();
    sol.routes[0][2].order = -1;
    CHECK(has(check(sol), "C7"));
    sol = base_solution();
    sol.routes[0][0].order = 0;
    CHECK(has(check(sol), "C7"));
}

TEST_CASE("C8 unknown node") {
    Solution sol = base_solution();
    sol.routes[1] = {{42, 1, -1}};
    CHECK(has(check(sol), "C8"));
}

TEST_CASE("C9 pickup and delivery pairing") {
    SUBCASE("different tugboats") {
        Solution sol = base_solution();
        sol.routes[0].erase(sol.routes[0].begin() + 1);
        sol.routes[1] = {{D, 1, -1}};
        CHECK(has(check(sol), "C9"));
    }
    SUBCASE("delivery first") {
        Solution sol = base_solution();
        std::swap(sol.routes[0][0], sol.routes[0][1]);
        CHECK(has(check(sol), "C9"));
    }
}

TEST_CASE("C10 trip balance") {
    SUBCASE("visit without barges") {
        Solution sol = base_solution();
        sol.routes[0].push_back({H, 2, -1});
        CHECK(has(check(sol), "C10"));
    }
    SUBCASE("barges never dropped") {
        Solution sol = base_solution();
        sol.routes[1] = {{B2, 1, 0}};
        sol.free_barges.clear();
        CHECK(has(check(sol), "C10"));
    }
    SUBCASE("recorded drop differs") {
        auto edit = [](Schedule& s) { s.routes[0].visits[4].dropped = 1; };
        CHECK(has(check_schedule(base_solution(), base_data(), edit), "C10"));
    }
}

TEST_CASE("C11 delivered barges differ from demand") {
    Solution sol = base_solution();
    sol.routes[0].erase(sol.routes[0].begin() + 3);
    sol.free_barges = {1, 2};
    CHECK(has(check(sol), "C11"));
}

TEST_CASE("C12 second visit drops after an empty first") {
    Solution sol = base_solution();
    sol.routes[0].insert(sol.routes[0].begin() + 2, {H, 1, -1});
    sol.routes[0].back().visit = 2;
    CHECK(has(check(sol), "C12"));
}

TEST_CASE("C13 visit indices out of order") {
    Solution sol = base_solution();
    sol.routes[0] = {{O, 1, -1}, {D, 1, -1}, {B0, 1, 0}, {H, 2, -1}, {B1, 1, 0}, {H, 1, -1}};
    CHECK(has(check(sol), "C13"));
}

TEST_CASE("C14 visit count limits") {
    SUBCASE("three visits") {
        auto d = fixture::uniform(1, 0, {3}, 3);
        Solution sol;
        sol.routes = {{{1, 1, 0}, {0, 1, -1}, {2, 1, 0}, {0, 2, -1}, {3, 1, 0}, {0, 3, -1}}};
        CHECK(has(check(sol, d), "C14"));
    }
    SUBCASE("visit index on a typeF node") {
        Solution sol = base_solution();
        sol.routes[0][0].visit = 2;
        CHECK(has(check(sol), "C14"));
    }
}

TEST_CASE("C15 working time exceeded") {
    auto d = base_data();
    d.tugboats[0].max_working_time = 3.0;
    CHECK(has(check(base_solution(), d), "C15"));
}

TEST_CASE("C16 barge taken before idle") {
    auto d = base_data();
    d.barges[0].idle_until = 10.0;
    CHECK(has(check_schedule(base_solution(), d), "C16"));
}

TEST_CASE("C17a overload") {
    auto d = base_data();
    d.capacity = 1;
    CHECK(has(check(base_solution(), d), "C17a"));
}

TEST_CASE("C17b negative count") {
    auto edit = [](Schedule& s) { s.routes[0].visits[2].empty_load = -1; };
    CHECK(has(check_schedule(base_solution(), base_data(), edit), "C17b"));
}

TEST_CASE("C18 typeF service before release") {
    auto d = base_data();
    d.orders_f[0].origin_window.earliest = 5.0;
    CHECK(has(check_schedule(base_solution(), d), "C18"));
}

TEST_CASE("C19 typeF arrival after deadline") {
    auto d = base_data();
    d.orders_f[0].destination_window.latest = 1.5;
    CHECK(has(check(base_solution(), d), "C19"));
}

TEST_CASE("C20 typeE service before release") {
    auto d = base_data();
    d.orders_e[0].window.earliest = 9.0;
    CHECK(has(check_schedule(base_solution(), d), "C20"));
}

TEST_CASE("C21 typeE arrival after deadline") {
    auto d = base_data();
    d.orders_e[0].window.latest = 2.0;
    CHECK(has(check(base_solution(), d), "C21"));
}

TEST_CASE("C22 arrival faster than travel") {
    auto edit = [](Schedule& s) { s.routes[0].visits[1].arrival = 1.5; };
    CHECK(has(check_schedule(base_solution(), base_data(), edit), "C22"));
    auto back = [](Schedule& s) { s.routes[0].finish = 1.0; };
    CHECK(has(check_schedule(base_solution(), base_data(), back), "C22"));
}

TEST_CASE("C23 delivery before pickup plus direct travel") {
    auto d = base_data();
    d.time_matrix[O][D] = 10.0;
    Solution sol = base_solution();
    sol.routes[0] = {{O, 1, -1}, {B0, 1, 0}, {D, 1, -1}, {B1, 1, 0}, {H, 1, -1}};
    CHECK(has(check(sol, d), "C23"));
}

TEST_CASE("C24 typeE visit before barge direct travel") {
    auto d = base_data();
    d.time_matrix[B0][H] = 10.0;
    CHECK(has(check(base_solution(), d), "C24"));
}

TEST_CASE("C25 laden count at pickup") {
    auto edit = [](Schedule& s) { s.routes[0].visits[0].full_load = 0; };
    CHECK(has(check_schedule(base_solution(), base_data(), edit), "C25"));
}

TEST_CASE("C26 laden count at delivery") {
    auto edit = [](Schedule& s) { s.routes[0].visits[1].full_load = 1; };
    CHECK(has(check_schedule(base_solution(), base_data(), edit), "C26"));
}

TEST_CASE("C27 empty count") {
    auto edit = [](Schedule& s) { s.routes[0].visits[3].empty_load = 1; };
    CHECK(has(check_schedule(base_solution(), base_data(), edit), "C27"));
}

TEST_CASE("C28 start time") {
    auto edit = [](Schedule& s) { s.routes[0].start = 0.5; };
    CHECK(has(check_schedule(base_solution(), base_data(), edit), "C28"));
}

TEST_CASE("C29 start towing empty barges") {
    auto edit = [](Schedule& s) { s.routes[1].start_empty = 1; };
    CHECK(has(check_schedule(base_solution(), base_data(), edit), "C29"));
}

TEST_CASE("C30 start towing laden barges") {
    auto edit = [](Schedule& s) { s.routes[1].start_full = 1; };
    CHECK(has(check_schedule(base_solution(), base_data(), edit), "C30"));
}

TEST_CASE("C31 return towing empty barges") {
    Solution sol = base_solution();
    sol.routes[1] = {{B2, 1, 0}};
    sol.free_barges.clear();
    CHECK(has(check(sol), "C31"));
}

TEST_CASE("C32 return towing a laden barge") {
    Solution sol = base_solution();
    sol.routes[0].erase(sol.routes[0].begin() + 1);
    CHECK(has(check(sol), "C32"));
}

TEST_CASE("violated tags are distinct and sorted") {
    Solution sol = base_solution();
    sol.routes[0].erase(sol.routes[0].begin() + 1);
    sol.routes[1] = {{42, 1, -1}};
    const auto tags = violated_tags(check(sol));
    CHECK(std::is_sorted(tags.begin(), tags.end()));
    CHECK(std::adjacent_find(tags.begin(), tags.end()) == tags.end());
    CHECK(std::find(tags.begin(), tags.end(), "C8") != tags.end());
}
