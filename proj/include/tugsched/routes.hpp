#pragma once

// Structural edits on a Solution that keep the route encoding consistent:
// moving orders and barges between routes and pools.

#include <optional>
#include <vector>

#include "tugsched/model.hpp"

namespace tug {

struct Position {
    int route = 0;
    int index = 0;

    friend bool operator==(const Position&, const Position&) = default;
};

/// First occurrence of `node` on any route.
std::optional<Position> locate(const Solution& sol, NodeId node);

/// Sets visit indices of typeE destinations to 1, 2, ... in route order.
void renumber_visits(const Instance& inst, Route& route);

/// Number of visits of typeE order `order` on `route`.
int visits_on_route(const Instance& inst, const Route& route, int order);

/// Tugboats whose route visits the destination of typeE order `order`.
std::vector<int> serving_tugs(const Instance& inst, const Solution& sol, int order);

/// Indices of the barge elements dropped at the typeE visit at `h_index`.
std::vector<int> trip_barges(const Instance& inst, const Route& route, int h_index);

/// For every insertion slot 0..size(), whether the slot lies inside an open
/// trip of `order` (after a barge collected for it, before its next visit).
std::vector<bool> open_trip_slots(const Instance& inst, const Route& route, int order);

void pool_f(Solution& sol, int order);
/// Adds `count` barges of demand for `order`, merging with an existing entry.
void pool_e(Solution& sol, int order, int count);
void free_barge(Solution& sol, int barge);
/// Removes `barge` from the free pool; returns false if it was not there.
bool take_barge(Solution& sol, int barge);
/// Removes `count` barges of demand for `order` from the pool.
void unpool_e(Solution& sol, int order, int count);

/// Takes both nodes of typeF order `order` off the routes and pools it.
void remove_f_order(const Instance& inst, Solution& sol, int order);

/// Takes the typeE visit at (route, index) and the barges of its trip off the
/// route, pooling the delivered count. Returns that count.
int remove_e_visit(const Instance& inst, Solution& sol, int route, int index);

/// Empties a whole route into the pools.
void clear_route(const Instance& inst, Solution& sol, int route);

/// Number of typeF orders fully on routes.
int routed_f_count(const Instance& inst, const Solution& sol);

/// All typeE visits on all routes.
std::vector<Position> e_visits(const Instance& inst, const Solution& sol);

}  // namespace tug
