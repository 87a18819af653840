#pragma once

#include <span>
#include <vector>

#include "tugsched/model.hpp"

namespace tug {

/// Times and loads at one route element. Loads are counted just after the
/// tugboat leaves the element.
struct VisitSchedule {
    double arrival = 0.0;
    double stay = 0.0;
    int full_load = 0;
    int empty_load = 0;
    int dropped = 0;  // typeE destinations only

    double departure() const { return arrival + stay; }

    friend bool operator==(const VisitSchedule&, const VisitSchedule&) = default;
};

struct RouteSchedule {
    double start = 0.0;  // departure from s
    int start_full = 0;
    int start_empty = 0;
    std::vector<VisitSchedule> visits;
    double finish = 0.0;  // arrival at s'

    int end_full() const { return visits.empty() ? start_full : visits.back().full_load; }
    int end_empty() const { return visits.empty() ? start_empty : visits.back().empty_load; }

    friend bool operator==(const RouteSchedule&, const RouteSchedule&) = default;
};

struct Schedule {
    std::vector<RouteSchedule> routes;

    friend bool operator==(const Schedule&, const Schedule&) = default;
};

struct LossBreakdown {
    double time_cost = 0.0;
    double distance_cost = 0.0;
    double tw_penalty = 0.0;
    double hours_penalty = 0.0;
    double unserved_penalty = 0.0;
    double total = 0.0;

    double penalties() const { return tw_penalty + hours_penalty + unserved_penalty; }
    LossBreakdown& operator+=(const LossBreakdown& o);
};

/// Earliest-start forward propagation of one route. Arrival at each element
/// is the previous departure plus travel time; the tugboat waits only until
/// the element is ready. Barges are dropped at the next visit of the typeE
/// order they were collected for.
///
/// With `lenient` false, a negative load throws NegativeLoad. With `lenient`
/// true, loads are reported as computed and malformed barge tags are ignored
/// for drop accounting.
RouteSchedule propagate_route(const Instance& inst, std::span<const RouteElement> route, bool lenient = false);

Schedule propagate(const Instance& inst, const Solution& sol);

LossBreakdown route_loss(const Instance& inst, int tug, std::span<const RouteElement> route,
                         const Penalties& penalties);

/// Penalty for everything still waiting in the pools.
double unserved_penalty(const Solution& sol, const Penalties& penalties);

LossBreakdown loss(const Instance& inst, const Solution& sol, const Penalties& penalties);

inline LossBreakdown loss(const Instance& inst, const Solution& sol) {
    return loss(inst, sol, inst.penalties());
}

}  // namespace tug
