#include "tugsched/evaluation.hpp"

#include <algorithm>
#include <string>

#include "tugsched/error.hpp"

namespace tug {

LossBreakdown& LossBreakdown::operator+=(const LossBreakdown& o) {
    time_cost += o.time_cost;
    distance_cost += o.distance_cost;
    tw_penalty += o.tw_penalty;
    hours_penalty += o.hours_penalty;
    unserved_penalty += o.unserved_penalty;
    total += o.total;
    return *this;
}

RouteSchedule propagate_route(const Instance& inst, std::span<const RouteElement> route, bool lenient) {
    RouteSchedule rs;
    rs.visits.reserve(route.size());
    std::vector<int> carried(static_cast<std::size_t>(inst.e_count()), 0);

    NodeId prev = inst.source();
    double departure = 0.0;
    int full = 0;
    int empty = 0;
    for (const RouteElement& el : route) {
        if (lenient && !inst.valid_node(el.node)) {
            rs.visits.push_back({departure, 0.0, full, empty, 0});
            continue;
        }
        const NodeInfo& info = inst.node(el.node);
        VisitSchedule v;
        v.arrival = departure + inst.time(prev, el.node);
        v.stay = std::max(0.0, info.ready - v.arrival);
        switch (info.kind) {
            case NodeKind::FOrigin: ++full; break;
            case NodeKind::FDestination: --full; break;
            case NodeKind::Barge:
                ++empty;
                if (el.order >= 0 && el.order < inst.e_count()) {
                    ++carried[static_cast<std::size_t>(el.order)];
                } else if (!lenient) {
                    throw NegativeLoad("barge node " + std::to_string(el.node) + " is not tagged with a typeE order");
                }
                break;
            case NodeKind::EDestination: {
                int& c = carried[static_cast<std::size_t>(info.ref)];
                v.dropped = c;
                empty -= c;
                c = 0;
                break;
            }
            case NodeKind::Source:
            case NodeKind::Sink: break;
        }
        if (!lenient && (full < 0 || empty < 0)) {
            throw NegativeLoad("load drops below zero at node " + std::to_string(el.node));
        }
        v.full_load = full;
        v.empty_load = empty;
        departure = v.departure();
        prev = el.node;
        rs.visits.push_back(v);
    }
    rs.finish = departure + inst.time(prev, inst.sink());
    return rs;
}

Schedule propagate(const Instance& inst, const Solution& sol) {
    Schedule s;
    s.routes.reserve(sol.routes.size());
    for (const Route& r : sol.routes) {
        s.routes.push_back(propagate_route(inst, r));
    }
    return s;
}

LossBreakdown route_loss(const Instance& inst, int tug, std::span<const RouteElement> route,
                         const Penalties& penalties) {
    const Tugboat& boat = inst.tugboat(tug);
    LossBreakdown lb;
    double hours = 0.0;
    double km = 0.0;
    double late = 0.0;
    NodeId prev = inst.source();
    double departure = 0.0;
    for (const RouteElement& el : route) {
        const NodeInfo& info = inst.node(el.node);
        hours += inst.time(prev, el.node);
        km += inst.distance(prev, el.node);
        const double arrival = departure + inst.time(prev, el.node);
        late += std::max(0.0, arrival - info.window.latest);
        departure = std::max(arrival, info.ready);
        prev = el.node;
    }
    hours += inst.time(prev, inst.sink());
    km += inst.distance(prev, inst.sink());
    const double finish = departure + inst.time(prev, inst.sink());

    lb.time_cost = boat.cost_per_time * hours;
    lb.distance_cost = boat.cost_per_distance * km;
    lb.tw_penalty = penalties.time_window * late;
    lb.hours_penalty = penalties.working_hours * std::max(0.0, finish - boat.max_working_time);
    lb.total = lb.time_cost + lb.distance_cost + lb.tw_penalty + lb.hours_penalty;
    return lb;
}

double unserved_penalty(const Solution& sol, const Penalties& penalties) {
    double count = static_cast<double>(sol.unassigned_f.size() + sol.unassigned_e.size());
    for (const PooledEOrder& e : sol.unassigned_e) {
        count += e.remaining;
    }
    return penalties.unserved * count;
}

LossBreakdown loss(const Instance& inst, const Solution& sol, const Penalties& penalties) {
    LossBreakdown total;
    for (std::size_t p = 0; p < sol.routes.size(); ++p) {
        total += route_loss(inst, static_cast<int>(p), sol.routes[p], penalties);
    }
    total.unserved_penalty = unserved_penalty(sol, penalties);
    total.total += total.unserved_penalty;
    return total;
}

}  // namespace tug
